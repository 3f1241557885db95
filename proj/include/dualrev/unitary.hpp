/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include "circuit.hpp"
#include "errors.hpp"
#include "gate.hpp"
#include "simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace dualrev {

using complex = std::complex<double>;

/*! \brief Dense row-major square complex matrix. */
class unitary_matrix {
public:
	unitary_matrix() = default;
	explicit unitary_matrix(std::size_t dim)
	    : dim_(dim)
	    , data_(dim * dim)
	{}
	unitary_matrix(std::size_t dim, std::vector<complex> entries)
	    : dim_(dim)
	    , data_(std::move(entries))
	{}

	static unitary_matrix identity(std::size_t dim)
	{
		unitary_matrix m(dim);
		for (std::size_t i = 0; i < dim; ++i) {
			m(i, i) = 1.0;
		}
		return m;
	}

	std::size_t dim() const noexcept
	{
		return dim_;
	}

	complex& operator()(std::size_t row, std::size_t col)
	{
		return data_[row * dim_ + col];
	}

	complex const& operator()(std::size_t row, std::size_t col) const
	{
		return data_[row * dim_ + col];
	}

	unitary_matrix adjoint() const
	{
		unitary_matrix m(dim_);
		for (std::size_t r = 0; r < dim_; ++r) {
			for (std::size_t c = 0; c < dim_; ++c) {
				m(c, r) = std::conj((*this)(r, c));
			}
		}
		return m;
	}

	friend unitary_matrix operator*(unitary_matrix const& a, unitary_matrix const& b)
	{
		unitary_matrix m(a.dim_);
		for (std::size_t r = 0; r < a.dim_; ++r) {
			for (std::size_t k = 0; k < a.dim_; ++k) {
				auto const v = a(r, k);
				if (v == complex{}) {
					continue;
				}
				for (std::size_t c = 0; c < a.dim_; ++c) {
					m(r, c) += v * b(k, c);
				}
			}
		}
		return m;
	}

	unitary_matrix pow(uint32_t exponent) const
	{
		auto result = identity(dim_);
		for (uint32_t i = 0; i < exponent; ++i) {
			result = result * *this;
		}
		return result;
	}

	/*! Largest entrywise modulus of the difference. */
	double max_abs_diff(unitary_matrix const& other) const
	{
		double d = 0.0;
		for (std::size_t i = 0; i < data_.size(); ++i) {
			d = std::max(d, std::abs(data_[i] - other.data_[i]));
		}
		return d;
	}

	bool is_unitary(double tol = 1e-10) const
	{
		return (adjoint() * *this).max_abs_diff(identity(dim_)) <= tol;
	}

private:
	std::size_t dim_ = 0;
	std::vector<complex> data_;
};

/*! \brief The m-th root of NOT, (1/2)[[1+z, 1-z], [1-z, 1+z]] with z = exp(i*pi/m).
 *
 * m = 1 gives X, m = 2 gives V, m = 4 gives W.
 */
inline unitary_matrix root_of_not_matrix(uint32_t order, bool adjoint = false)
{
	if (order == 0 || (order & (order - 1)) != 0) {
		throw error(error_code::bad_root_order, "root order " + std::to_string(order) + " is not a power of two");
	}
	auto const z = std::polar(1.0, std::numbers::pi / order);
	unitary_matrix m(2, {0.5 * (1.0 + z), 0.5 * (1.0 - z), 0.5 * (1.0 - z), 0.5 * (1.0 + z)});
	return adjoint ? m.adjoint() : m;
}

inline unitary_matrix permutation_matrix(permutation_map const& map)
{
	unitary_matrix m(map.image.size());
	for (uint64_t x = 0; x < map.image.size(); ++x) {
		m(map.image[x], x) = 1.0;
	}
	return m;
}

namespace detail {

using mat2 = std::array<complex, 4>;

inline mat2 single_qubit_matrix(gate const& g)
{
	using namespace std::complex_literals;
	double const r = 1.0 / std::numbers::sqrt2;
	if (auto const* root = std::get_if<root_gate>(&g)) {
		auto const m = root_of_not_matrix(root->order, root->adjoint);
		return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
	}
	if (std::holds_alternative<hadamard_gate>(g)) {
		return {r, r, r, -r};
	}
	if (auto const* t = std::get_if<t_gate>(&g)) {
		return {1.0, 0.0, 0.0, std::polar(1.0, (t->adjoint ? -1.0 : 1.0) * std::numbers::pi / 4)};
	}
	auto const& s = std::get<s_gate>(g);
	return {1.0, 0.0, 0.0, s.adjoint ? -1.0i : 1.0i};
}

/*! Left-multiplies u by the (optionally controlled) 2x2 operator on `target`. */
inline void apply_single_qubit(unitary_matrix& u, uint32_t width, mat2 const& m, line_id target,
                               std::optional<control> ctrl)
{
	auto const tmask = line_mask(target, width);
	std::size_t const dim = u.dim();
	for (std::size_t r0 = 0; r0 < dim; ++r0) {
		if (r0 & tmask) {
			continue;
		}
		if (ctrl && !effective(r0, *ctrl, width)) {
			continue;
		}
		std::size_t const r1 = r0 | tmask;
		for (std::size_t c = 0; c < dim; ++c) {
			auto const a = u(r0, c);
			auto const b = u(r1, c);
			u(r0, c) = m[0] * a + m[1] * b;
			u(r1, c) = m[2] * a + m[3] * b;
		}
	}
}

inline void apply_permutation(unitary_matrix& u, gate const& g, uint32_t width)
{
	unitary_matrix next(u.dim());
	for (std::size_t r = 0; r < u.dim(); ++r) {
		auto const dst = apply_classical(g, r, width);
		for (std::size_t c = 0; c < u.dim(); ++c) {
			next(dst, c) = u(r, c);
		}
	}
	u = std::move(next);
}

} // namespace detail

/*! \brief Dense unitary of the circuit; later gates multiply on the left.
 *
 * Negative controls select the |0> subspace of their line.
 */
inline unitary_matrix unitary_of(circuit const& c, simulation_limits const& limits = {})
{
	if (c.width > limits.max_unitary_width) {
		throw error(error_code::width_cap, "width " + std::to_string(c.width) + " exceeds unitary cap "
		                                       + std::to_string(limits.max_unitary_width));
	}
	auto u = unitary_matrix::identity(std::size_t{1} << c.width);
	for (auto const& g : c.gates) {
		if (is_classical(g)) {
			detail::apply_permutation(u, g, c.width);
		} else {
			std::optional<control> ctrl;
			if (auto const* root = std::get_if<root_gate>(&g)) {
				ctrl = root->ctrl;
			}
			detail::apply_single_qubit(u, c.width, detail::single_qubit_matrix(g), target_of(g), ctrl);
		}
	}
	return u;
}

/*! \brief Unitary equality up to a global phase.
 *
 * The phase is the quotient of the first entry pair whose reference entry
 * has modulus above 1e-6. Only columns of admissible inputs (constant lines
 * at their fixed value) are compared.
 */
inline bool equiv_unitary(circuit const& a, circuit const& b, double tol = 1e-9,
                          simulation_limits const& limits = {})
{
	if (a.width != b.width) {
		throw error(error_code::width_mismatch,
		            "widths " + std::to_string(a.width) + " and " + std::to_string(b.width) + " differ");
	}
	auto const ua = unitary_of(a, limits);
	auto const ub = unitary_of(b, limits);
	auto const constants = detail::merged_constants(a, b);

	std::vector<std::size_t> columns;
	detail::foreach_admissible_input(a.width, constants, [&](uint64_t x) {
		columns.push_back(x);
		return true;
	});

	std::optional<complex> phase;
	for (auto c : columns) {
		for (std::size_t r = 0; r < ub.dim() && !phase; ++r) {
			if (std::abs(ub(r, c)) > 1e-6) {
				auto const q = ua(r, c) / ub(r, c);
				if (std::abs(q) < 1e-12) {
					return false;
				}
				phase = q / std::abs(q);
			}
		}
		if (phase) {
			break;
		}
	}
	if (!phase) {
		phase = 1.0;
	}
	for (auto c : columns) {
		for (std::size_t r = 0; r < ua.dim(); ++r) {
			if (std::abs(ua(r, c) - *phase * ub(r, c)) > tol) {
				return false;
			}
		}
	}
	return true;
}

} // namespace dualrev
