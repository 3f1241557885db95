/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include "circuit.hpp"
#include "errors.hpp"
#include "gate.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dualrev {

enum class decomposition_model : uint8_t { ncv, direct_root, vshape_toffoli, vshape_peres, clifford_t };

inline constexpr std::string_view to_string(decomposition_model m) noexcept
{
	switch (m) {
	case decomposition_model::ncv: return "ncv";
	case decomposition_model::direct_root: return "direct-root";
	case decomposition_model::vshape_toffoli: return "vshape-toffoli";
	case decomposition_model::vshape_peres: return "vshape-peres";
	case decomposition_model::clifford_t: return "clifford-t";
	}
	return "";
}

inline std::optional<decomposition_model> parse_decomposition_model(std::string_view name)
{
	for (auto m : {decomposition_model::ncv, decomposition_model::direct_root, decomposition_model::vshape_toffoli,
	               decomposition_model::vshape_peres, decomposition_model::clifford_t}) {
		if (to_string(m) == name) {
			return m;
		}
	}
	return std::nullopt;
}

namespace detail {

inline uint32_t infer_width(gate const& g)
{
	auto const lines = lines_touched(g);
	return lines.back() + 1u;
}

/*! \brief Gate list that drops a new gate when it undoes the previous gate on
 *  the same lines. */
class cancelling_builder {
public:
	explicit cancelling_builder(uint32_t width)
	    : result_(width)
	{}

	void add(gate g)
	{
		auto const lines = lines_touched(g);
		for (auto it = result_.gates.rbegin(); it != result_.gates.rend(); ++it) {
			auto const other = lines_touched(*it);
			bool const overlaps = std::find_first_of(lines.begin(), lines.end(), other.begin(), other.end())
			                      != lines.end();
			if (!overlaps) {
				continue;
			}
			if (other == lines && gate_inverse(*it) == g) {
				result_.gates.erase(std::next(it).base());
				return;
			}
			break;
		}
		result_.gates.push_back(std::move(g));
	}

	void add(circuit const& c)
	{
		for (auto const& g : c.gates) {
			add(g);
		}
	}

	circuit take()
	{
		return std::move(result_);
	}

private:
	circuit result_;
};

template<typename G>
G with_positive_controls(G g)
{
	if constexpr (std::is_same_v<G, mct_gate>) {
		for (auto& c : g.controls) {
			c.pol = polarity::positive;
		}
	} else if constexpr (std::is_same_v<G, peres_gate>) {
		g.c1.pol = polarity::positive;
		g.c2.pol = polarity::positive;
	} else if constexpr (std::is_same_v<G, root_gate>) {
		if (g.ctrl) {
			g.ctrl->pol = polarity::positive;
		}
	}
	return g;
}

/*! Positive-control Toffoli with T-count 7 and T-depth 4. */
inline circuit clifford_t_toffoli(line_id a, line_id b, line_id t, uint32_t width)
{
	circuit c(width);
	c.add(make_h(t))
	    .add(make_cnot(b, t))
	    .add(make_tdg(t))
	    .add(make_cnot(a, t))
	    .add(make_t(t))
	    .add(make_cnot(b, t))
	    .add(make_tdg(t))
	    .add(make_cnot(a, t))
	    .add(make_t(b))
	    .add(make_t(t))
	    .add(make_h(t))
	    .add(make_cnot(a, b))
	    .add(make_t(a))
	    .add(make_tdg(b))
	    .add(make_cnot(a, b));
	return c;
}

} // namespace detail

/*! \brief Replaces every negative control by NOT-conjugation of its line.
 *
 * Adjacent NOT pairs introduced this way cancel.
 */
inline circuit lower_polarity(circuit const& c)
{
	detail::cancelling_builder out(c.width);
	for (auto const& g : c.gates) {
		auto const controls = controls_of(g);
		std::vector<line_id> flipped;
		for (auto const& ctl : controls) {
			if (ctl.negative()) {
				flipped.push_back(ctl.line);
			}
		}
		if (flipped.empty()) {
			out.add(g);
			continue;
		}
		for (auto l : flipped) {
			out.add(make_not(l));
		}
		out.add(std::visit([](auto const& x) -> gate { return detail::with_positive_controls(x); }, g));
		for (auto l : flipped) {
			out.add(make_not(l));
		}
	}
	auto lowered = out.take();
	lowered.constants = c.constants;
	lowered.garbage = c.garbage;
	return lowered;
}

/*! \brief Barenco-style NCV model of a two-control gate.
 *
 * Polarities carry over to the elementary controls. The dual Toffoli target
 * line holds three V gates; the classical Toffoli holds two V and one V^dagger.
 * Dropping the final CNOT gives the Peres variants; inverses are mirrors.
 */
inline circuit ncv_model(gate const& g, uint32_t width = 0)
{
	if (width == 0) {
		width = detail::infer_width(g);
	}
	control c1;
	control c2;
	line_id t = 0;
	control_mode mode{};
	bool peres = false;
	bool inverse = false;
	if (auto const* m = std::get_if<mct_gate>(&g); m && m->controls.size() == 2) {
		c1 = m->controls[0];
		c2 = m->controls[1];
		t = m->target;
		mode = m->mode;
	} else if (auto const* p = std::get_if<peres_gate>(&g)) {
		c1 = p->c1;
		c2 = p->c2;
		t = p->target;
		mode = p->mode;
		peres = true;
		inverse = p->inverse;
	} else {
		throw error(error_code::unsupported, "no NCV model for " + kind_name(g));
	}

	// the c2 line carries eff(c1) xor c2 after the CNOT, so keeping c2's
	// polarity on the later V gates selects eff(c1) xor eff(c2)
	control const mid{c2.line, c2.pol};
	circuit model(width);
	if (mode == control_mode::disjunctive) {
		model.add(make_cv(c1, t)).add(make_cv(c2, t)).add(make_cnot(c1, c2.line)).add(make_cv(mid, t));
		if (!peres) {
			model.add(make_cnot(c1, c2.line));
		}
	} else if (!peres) {
		model.add(make_cv(c1, t))
		    .add(make_cnot(c1, c2.line))
		    .add(make_cvdg(mid, t))
		    .add(make_cnot(c1, c2.line))
		    .add(make_cv(c2, t));
	} else {
		model.add(make_cv(c2, t)).add(make_cv(c1, t)).add(make_cnot(c1, c2.line)).add(make_cvdg(mid, t));
	}
	return inverse ? circuit_inverse(model) : model;
}

/*! \brief Direct realization of a k-control OR-NOT with 2^k - 1 equal roots.
 *
 * The j-th root gate (j = 1 .. 2^k - 1, bit i of j selects control i) is a
 * controlled R_{2^(k-1)} whose control line holds the parity of the selected
 * controls. Parities are folded onto the highest-index line of each subset
 * with one CNOT per non-singleton subset, and the control lines are restored
 * at the end; 2^(k+1) - 3 gates in total.
 */
inline circuit direct_root_realization(std::vector<line_id> const& controls, line_id target, uint32_t width = 0)
{
	auto const k = controls.size();
	if (k == 0) {
		throw error(error_code::arity_mismatch, "direct realization needs at least one control");
	}
	if (k > 30) {
		throw error(error_code::width_cap, "too many controls for a direct realization");
	}
	if (width == 0) {
		width = std::max(*std::max_element(controls.begin(), controls.end()), target) + 1u;
	}
	uint32_t const order = uint32_t{1} << (k - 1);
	circuit c(width);

	// content[i] = parity mask (over the original controls) held by line i
	std::vector<uint64_t> content(k);
	for (std::size_t i = 0; i < k; ++i) {
		content[i] = uint64_t{1} << i;
	}
	auto const fold = [&](std::size_t dst, uint64_t wanted) {
		uint64_t const delta = content[dst] ^ wanted;
		if (delta == 0) {
			return;
		}
		for (std::size_t src = 0; src < k; ++src) {
			if (src != dst && content[src] == delta) {
				c.add(make_cnot(controls[src], controls[dst]));
				content[dst] = wanted;
				return;
			}
		}
		throw error(error_code::unsupported, "parity network cannot reach subset"); // unreachable
	};

	for (uint64_t subset = 1; subset < (uint64_t{1} << k); ++subset) {
		std::size_t high = 0;
		for (std::size_t i = 0; i < k; ++i) {
			if (subset & (uint64_t{1} << i)) {
				high = i;
			}
		}
		fold(high, subset);
		if (order == 1) {
			c.add(make_cnot(controls[high], target));
		} else {
			c.add(make_root(order, control{controls[high]}, target));
		}
	}
	for (std::size_t i = k; i-- > 1;) {
		fold(i, uint64_t{1} << i);
	}
	return c;
}

inline circuit direct_root_realization(mct_gate const& g, uint32_t width = 0)
{
	if (g.mode != control_mode::disjunctive && g.controls.size() > 1) {
		throw error(error_code::unsupported, "direct realization applies to disjunctive gates");
	}
	std::vector<line_id> lines;
	for (auto const& ctl : g.controls) {
		if (ctl.negative()) {
			throw error(error_code::polarity_unsupported, "lower polarity before the direct realization");
		}
		lines.push_back(ctl.line);
	}
	return direct_root_realization(lines, g.target, width);
}

/*! \brief V-shaped realization of a k-control dual Toffoli with k - 2 ancillas.
 *
 * Compute chain a1 = c1 | c2, a_i = a_(i-1) | c_(i+1), a bottom
 * dual Toffoli(a_(k-2), c_k; t), then the mirrored uncompute chain. With
 * `use_peres` the compute side uses dual Peres gates and the uncompute side
 * their inverses. When `ancillas` is empty, k - 2 fresh lines are appended
 * and marked constant 0.
 */
inline circuit vshape(mct_gate const& g, uint32_t width, bool use_peres, std::vector<line_id> ancillas = {})
{
	auto const k = g.controls.size();
	if (g.mode != control_mode::disjunctive) {
		throw error(error_code::unsupported, "V-shaped realization applies to disjunctive gates");
	}
	if (k < 3) {
		throw error(error_code::too_few_controls, "V-shaped realization needs at least 3 controls");
	}
	for (auto const& ctl : g.controls) {
		if (ctl.negative()) {
			throw error(error_code::polarity_unsupported, "lower polarity before the V-shaped realization");
		}
	}
	circuit c(width);
	if (ancillas.empty()) {
		for (std::size_t i = 0; i + 2 < k; ++i) {
			ancillas.push_back(c.width);
			c.constants[c.width] = false;
			++c.width;
		}
	}
	if (ancillas.size() < k - 2) {
		throw error(error_code::arity_mismatch, "V-shaped realization needs k - 2 ancillas");
	}

	std::vector<gate> compute;
	auto const basic = [&](control a, control b, line_id t) {
		return use_peres ? make_dual_peres(a, b, t) : make_dual_toffoli(a, b, t);
	};
	compute.push_back(basic(g.controls[0], g.controls[1], ancillas[0]));
	for (std::size_t i = 1; i + 2 < k; ++i) {
		compute.push_back(basic(ancillas[i - 1], g.controls[i + 1], ancillas[i]));
	}
	for (auto const& x : compute) {
		c.add(x);
	}
	c.add(make_dual_toffoli(ancillas[k - 3], g.controls[k - 1], g.target));
	for (auto it = compute.rbegin(); it != compute.rend(); ++it) {
		c.add(gate_inverse(*it));
	}
	return c;
}

/*! \brief Clifford+T realization of two-control gates.
 *
 * The dual Toffoli uses t ^ (c1 | c2) = t ^ c1 ^ (!c1 & c2): a CNOT followed
 * by a Toffoli with an inverted first control. The dual Peres appends
 * c2 ^= !c1 and a NOT on c2, which cancels the closing CNOT of the Toffoli
 * netlist. Negative controls become NOT conjugations. Emits
 * {H, T, T^dagger, CNOT, NOT}.
 */
inline circuit clifford_t(gate const& g, uint32_t width = 0)
{
	if (width == 0) {
		width = detail::infer_width(g);
	}
	circuit steps(width);
	bool mirror = false;
	if (auto const* m = std::get_if<mct_gate>(&g); m && m->controls.size() == 2) {
		auto const [c1, c2] = std::pair{m->controls[0], m->controls[1]};
		if (m->mode == control_mode::disjunctive) {
			steps.add(make_cnot(c1, m->target)).add(make_toffoli(!c1, c2, m->target));
		} else {
			steps.add(g);
		}
	} else if (auto const* p = std::get_if<peres_gate>(&g)) {
		if (p->mode == control_mode::disjunctive) {
			steps.add(make_cnot(p->c1, p->target))
			    .add(make_toffoli(!p->c1, p->c2, p->target))
			    .add(make_cnot(!p->c1, p->c2.line))
			    .add(make_not(p->c2.line));
		} else {
			steps.add(make_toffoli(p->c1, p->c2, p->target)).add(make_cnot(p->c1, p->c2.line));
		}
		mirror = p->inverse;
	} else if (auto const* m1 = std::get_if<mct_gate>(&g); m1 && m1->controls.size() == 1) {
		steps.add(make_cnot(m1->controls[0], m1->target));
	} else if (std::holds_alternative<not_gate>(g)) {
		steps.add(g);
	} else {
		throw error(error_code::unsupported, "no Clifford+T realization for " + kind_name(g));
	}

	auto const lowered = lower_polarity(steps);
	detail::cancelling_builder out(width);
	for (auto const& s : lowered.gates) {
		auto const* m = std::get_if<mct_gate>(&s);
		if (m && m->controls.size() == 2) {
			out.add(detail::clifford_t_toffoli(m->controls[0].line, m->controls[1].line, m->target, width));
		} else {
			out.add(s);
		}
	}
	auto result = out.take();
	return mirror ? circuit_inverse(result) : result;
}

/*! \brief Lowers every gate the model covers; other gates pass through.
 *
 * - ncv: two-control gates via their NCV model, disjunctive k >= 3 via the
 *   direct realization.
 * - direct-root: every disjunctive gate via the direct realization.
 * - vshape-*: disjunctive k >= 3 via the V shape; ancillas are appended once
 *   and shared, since every V shape restores them.
 * - clifford-t: NOT, CNOT, Toffoli, Peres and their dual forms.
 *
 * Negative controls are NOT-conjugated wherever the target realization
 * needs positive controls.
 */
inline circuit decompose(circuit const& c, decomposition_model model)
{
	ensure_valid(c);
	circuit out(c.width);
	out.constants = c.constants;
	out.garbage = c.garbage;

	std::vector<line_id> ancillas;
	auto const ensure_ancillas = [&](std::size_t n) {
		while (ancillas.size() < n) {
			ancillas.push_back(out.width);
			out.constants[out.width] = false;
			++out.width;
		}
	};
	auto const positive = [](gate const& g) {
		circuit single(detail::infer_width(g), {g});
		return lower_polarity(single);
	};
	auto const emit_with_polarity = [&](gate const& g, auto&& lower_one) {
		for (auto const& piece : positive(g).gates) {
			if (std::holds_alternative<not_gate>(piece)) {
				out.add(piece);
			} else {
				out.append(lower_one(std::get<mct_gate>(piece)));
			}
		}
	};

	for (auto const& g : c.gates) {
		auto const* m = std::get_if<mct_gate>(&g);
		auto const k = m ? m->controls.size() : 0u;
		bool const dual = m && m->mode == control_mode::disjunctive;
		switch (model) {
		case decomposition_model::ncv:
			if ((m && k == 2) || std::holds_alternative<peres_gate>(g)) {
				out.append(ncv_model(g, c.width));
			} else if (dual && k >= 3) {
				emit_with_polarity(g, [&](mct_gate const& x) { return direct_root_realization(x, c.width); });
			} else {
				out.add(g);
			}
			break;
		case decomposition_model::direct_root:
			if (dual) {
				emit_with_polarity(g, [&](mct_gate const& x) { return direct_root_realization(x, c.width); });
			} else {
				out.add(g);
			}
			break;
		case decomposition_model::vshape_toffoli:
		case decomposition_model::vshape_peres:
			if (dual && k >= 3) {
				ensure_ancillas(k - 2);
				bool const peres = model == decomposition_model::vshape_peres;
				emit_with_polarity(g, [&](mct_gate const& x) { return vshape(x, out.width, peres, ancillas); });
			} else {
				out.add(g);
			}
			break;
		case decomposition_model::clifford_t:
			if (std::holds_alternative<not_gate>(g) || (m && k <= 2) || std::holds_alternative<peres_gate>(g)) {
				out.append(clifford_t(g, c.width));
			} else {
				out.add(g);
			}
			break;
		}
	}
	return out;
}

} // namespace dualrev
