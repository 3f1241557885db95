/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include "metrics.hpp"
#include "rewrite.hpp"

#include <nlohmann/json.hpp>

namespace dualrev {

/*! {"width","gate_count","quantum_cost","t_count","t_depth","histogram"} in that order. */
inline nlohmann::ordered_json to_json(cost_report const& r)
{
	nlohmann::ordered_json j;
	j["width"] = r.width;
	j["gate_count"] = r.gate_count;
	j["quantum_cost"] = r.quantum_cost;
	j["t_count"] = r.t_count;
	j["t_depth"] = r.t_depth;
	j["histogram"] = nlohmann::ordered_json::object();
	for (auto const& [name, count] : r.histogram) {
		j["histogram"][name] = count;
	}
	return j;
}

/*! {"applications":[{"rule","position","cost_delta"}],"cost_before","cost_after"} */
inline nlohmann::ordered_json to_json(optimization_report const& r)
{
	nlohmann::ordered_json j;
	j["applications"] = nlohmann::ordered_json::array();
	for (auto const& a : r.applications) {
		nlohmann::ordered_json entry;
		entry["rule"] = a.rule;
		entry["position"] = a.position;
		entry["cost_delta"] = a.cost_delta;
		j["applications"].push_back(std::move(entry));
	}
	j["cost_before"] = r.cost_before;
	j["cost_after"] = r.cost_after;
	return j;
}

} // namespace dualrev
