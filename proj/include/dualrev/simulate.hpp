/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include "circuit.hpp"
#include "errors.hpp"
#include "gate.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dualrev {

struct simulation_limits {
	uint32_t max_classical_width = 20;
	uint32_t max_unitary_width = 10;
};

/*! \brief Bijection on basis indices; image[x] is the output for input x. */
struct permutation_map {
	uint32_t width = 0;
	std::vector<uint64_t> image;

	bool is_bijection() const
	{
		std::vector<bool> seen(image.size(), false);
		for (auto y : image) {
			if (y >= image.size() || seen[y]) {
				return false;
			}
			seen[y] = true;
		}
		return true;
	}

	permutation_map inverse() const
	{
		permutation_map inv{width, std::vector<uint64_t>(image.size())};
		for (uint64_t x = 0; x < image.size(); ++x) {
			inv.image[image[x]] = x;
		}
		return inv;
	}

	friend bool operator==(permutation_map const&, permutation_map const&) = default;
};

namespace detail {

inline void require_classical(circuit const& c)
{
	for (std::size_t i = 0; i < c.gates.size(); ++i) {
		if (!is_classical(c.gates[i])) {
			throw error(error_code::not_classical,
			            "gate " + std::to_string(i) + " (" + kind_name(c.gates[i]) + ") has no permutation semantics", i);
		}
	}
}

/*! Runs the gates without checking constants. */
inline uint64_t run_classical(circuit const& c, uint64_t state)
{
	for (auto const& g : c.gates) {
		state = apply_classical(g, state, c.width);
	}
	return state;
}

} // namespace detail

/*! \brief Applies every gate in order to a basis state (line 0 is the MSB). */
inline uint64_t simulate_classical(circuit const& c, uint64_t input)
{
	if (c.width > 64) {
		throw error(error_code::width_cap, "classical simulation supports at most 64 lines");
	}
	detail::require_classical(c);
	for (auto const& [line, value] : c.constants) {
		if (read_line(input, line, c.width) != value) {
			throw error(error_code::constant_violated,
			            "line " + std::to_string(line) + " must be " + (value ? "1" : "0"), line);
		}
	}
	return detail::run_classical(c, input);
}

inline std::vector<bool> simulate_classical(circuit const& c, std::vector<bool> const& input)
{
	if (input.size() != c.width) {
		throw error(error_code::width_mismatch, "input has " + std::to_string(input.size())
		                                            + " bits, circuit has " + std::to_string(c.width) + " lines");
	}
	return to_bits(simulate_classical(c, to_index(input)), c.width);
}

/*! \brief Tabulates the classical map over all 2^width inputs.
 *
 * Constant-line annotations are ignored here; every basis input is mapped.
 */
inline permutation_map permutation_of(circuit const& c, simulation_limits const& limits = {})
{
	if (c.width > limits.max_classical_width) {
		throw error(error_code::width_cap, "width " + std::to_string(c.width) + " exceeds classical cap "
		                                       + std::to_string(limits.max_classical_width));
	}
	detail::require_classical(c);
	permutation_map map{c.width, std::vector<uint64_t>(uint64_t{1} << c.width)};
	for (uint64_t x = 0; x < map.image.size(); ++x) {
		map.image[x] = detail::run_classical(c, x);
	}
	return map;
}

struct equivalence_result {
	bool equivalent = false;
	/*! First admissible input on which the circuits differ. */
	std::optional<uint64_t> counterexample;

	explicit operator bool() const noexcept
	{
		return equivalent;
	}
};

namespace detail {

inline std::map<line_id, bool> merged_constants(circuit const& a, circuit const& b)
{
	auto merged = a.constants;
	for (auto const& [line, value] : b.constants) {
		auto [it, inserted] = merged.emplace(line, value);
		if (!inserted && it->second != value) {
			throw error(error_code::constant_violated,
			            "circuits disagree on the constant value of line " + std::to_string(line), line);
		}
	}
	return merged;
}

/*! Calls fn(x) for every basis input that satisfies the constant map. */
template<typename Fn>
void foreach_admissible_input(uint32_t width, std::map<line_id, bool> const& constants, Fn&& fn)
{
	uint64_t fixed_mask = 0;
	uint64_t fixed_value = 0;
	for (auto const& [line, value] : constants) {
		fixed_mask |= line_mask(line, width);
		if (value) {
			fixed_value |= line_mask(line, width);
		}
	}
	uint64_t const free_mask = ((width == 64) ? ~uint64_t{0} : ((uint64_t{1} << width) - 1)) & ~fixed_mask;
	// enumerate subsets of free_mask in increasing order
	uint64_t sub = 0;
	while (true) {
		if (!fn(sub | fixed_value)) {
			return;
		}
		if (sub == free_mask) {
			return;
		}
		sub = (sub - free_mask) & free_mask;
	}
}

} // namespace detail

/*! \brief Exhaustive classical equivalence check.
 *
 * Widths must match. Constant lines of either circuit are enumerated only
 * over their fixed value; with `respect_garbage`, garbage outputs of either
 * circuit are masked from the comparison.
 */
inline equivalence_result equiv_permutation(circuit const& a, circuit const& b, bool respect_garbage = true,
                                            simulation_limits const& limits = {})
{
	if (a.width != b.width) {
		throw error(error_code::width_mismatch,
		            "widths " + std::to_string(a.width) + " and " + std::to_string(b.width) + " differ");
	}
	if (a.width > limits.max_classical_width) {
		throw error(error_code::width_cap, "width " + std::to_string(a.width) + " exceeds classical cap "
		                                       + std::to_string(limits.max_classical_width));
	}
	detail::require_classical(a);
	detail::require_classical(b);
	auto const constants = detail::merged_constants(a, b);
	uint64_t compare_mask = (uint64_t{1} << a.width) - 1;
	if (respect_garbage) {
		for (auto line : a.garbage) {
			compare_mask &= ~line_mask(line, a.width);
		}
		for (auto line : b.garbage) {
			compare_mask &= ~line_mask(line, a.width);
		}
	}
	equivalence_result result{true, std::nullopt};
	detail::foreach_admissible_input(a.width, constants, [&](uint64_t x) {
		if (((detail::run_classical(a, x) ^ detail::run_classical(b, x)) & compare_mask) != 0) {
			result = {false, x};
			return false;
		}
		return true;
	});
	return result;
}

inline std::string format_bits(uint64_t index, uint32_t width)
{
	std::string s(width, '0');
	for (line_id i = 0; i < width; ++i) {
		if (read_line(index, i, width)) {
			s[i] = '1';
		}
	}
	return s;
}

} // namespace dualrev
