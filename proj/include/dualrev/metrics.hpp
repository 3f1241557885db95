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
#include <map>
#include <string>
#include <type_traits>
#include <vector>

namespace dualrev {

/*! \brief NCV quantum cost of a single gate.
 *
 * Negative controls are free on Toffoli-class, dual and Peres gates; only a
 * negatively controlled CNOT pays for its extra NOT. A disjunctive gate with
 * k >= 3 controls is costed by its direct root-of-NOT realization,
 * 2^(k+1) - 3. Conjunctive gates with k >= 3 controls have no cost in the
 * catalog and throw `error_code::uncosted`.
 */
inline uint64_t quantum_cost(gate const& g)
{
	return std::visit(
	    [](auto const& x) -> uint64_t {
		    using T = std::decay_t<decltype(x)>;
		    if constexpr (std::is_same_v<T, mct_gate>) {
			    auto const k = x.controls.size();
			    if (k == 1) {
				    return x.controls.front().negative() ? 2u : 1u;
			    }
			    if (k == 2) {
				    return 5u;
			    }
			    if (x.mode == control_mode::disjunctive && k < 62) {
				    return (uint64_t{1} << (k + 1)) - 3u;
			    }
			    throw error(error_code::uncosted,
			                "no cost model for a conjunctive gate with " + std::to_string(k) + " controls");
		    } else if constexpr (std::is_same_v<T, peres_gate>) {
			    return 4u;
		    } else {
			    return 1u;
		    }
	    },
	    g);
}

inline uint64_t quantum_cost(circuit const& c)
{
	uint64_t cost = 0;
	for (auto const& g : c.gates) {
		cost += quantum_cost(g);
	}
	return cost;
}

inline uint64_t t_count(circuit const& c)
{
	return static_cast<uint64_t>(
	    std::count_if(c.gates.begin(), c.gates.end(), [](gate const& g) { return std::holds_alternative<t_gate>(g); }));
}

/*! \brief Number of T layers on the critical path.
 *
 * Gates are scheduled as early as possible; only T/T-dagger gates occupy a
 * layer, every other gate synchronises the lines it touches.
 */
inline uint64_t t_depth(circuit const& c)
{
	std::vector<uint64_t> depth(c.width, 0);
	uint64_t result = 0;
	for (auto const& g : c.gates) {
		auto const lines = lines_touched(g);
		uint64_t d = 0;
		for (auto l : lines) {
			d = std::max(d, depth[l]);
		}
		if (std::holds_alternative<t_gate>(g)) {
			++d;
		}
		for (auto l : lines) {
			depth[l] = d;
		}
		result = std::max(result, d);
	}
	return result;
}

struct cost_report {
	uint32_t width = 0;
	uint64_t gate_count = 0;
	uint64_t quantum_cost = 0;
	uint64_t t_count = 0;
	uint64_t t_depth = 0;
	std::map<std::string, uint64_t> histogram;
	/*! Set when a dual or Peres gate with a negative control was costed as
	 *  if it were positive. */
	bool polarity_convention_applied = false;
};

inline cost_report make_cost_report(circuit const& c)
{
	cost_report report;
	report.width = c.width;
	report.gate_count = c.gates.size();
	report.quantum_cost = quantum_cost(c);
	report.t_count = t_count(c);
	report.t_depth = t_depth(c);
	for (auto const& g : c.gates) {
		++report.histogram[kind_name(g)];
		if (has_negative_control(g) && controls_of(g).size() >= 2) {
			report.polarity_convention_applied = true;
		}
	}
	return report;
}

} // namespace dualrev
