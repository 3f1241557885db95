/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include "errors.hpp"
#include "gate.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dualrev {

/*! \brief Ordered gate sequence over `width` lines.
 *
 * `constants` marks ancilla lines with their required input value;
 * `garbage` lists lines whose outputs are unconstrained.
 */
struct circuit {
	uint32_t width = 0;
	std::vector<gate> gates;
	std::map<line_id, bool> constants;
	std::set<line_id> garbage;

	circuit() = default;
	explicit circuit(uint32_t w, std::vector<gate> gs = {})
	    : width(w)
	    , gates(std::move(gs))
	{}

	circuit& add(gate g)
	{
		gates.push_back(std::move(g));
		return *this;
	}

	circuit& append(circuit const& other)
	{
		gates.insert(gates.end(), other.gates.begin(), other.gates.end());
		return *this;
	}

	std::size_t size() const noexcept
	{
		return gates.size();
	}

	bool empty() const noexcept
	{
		return gates.empty();
	}

	friend bool operator==(circuit const&, circuit const&) = default;
};

struct validation_error {
	std::size_t gate_index;
	error_code code;
	std::string message;
};

namespace detail {

inline std::optional<validation_error> check_gate(gate const& g, std::size_t index, uint32_t width)
{
	auto const target = target_of(g);
	auto const controls = controls_of(g);
	for (auto const& c : controls) {
		if (c.line >= width) {
			return validation_error{index, error_code::line_out_of_range,
			                        "control line " + std::to_string(c.line) + " >= width "
			                            + std::to_string(width)};
		}
	}
	if (target >= width) {
		return validation_error{index, error_code::line_out_of_range,
		                        "target line " + std::to_string(target) + " >= width " + std::to_string(width)};
	}
	if (auto const* m = std::get_if<mct_gate>(&g); m && m->controls.empty()) {
		return validation_error{index, error_code::arity_mismatch, "controlled NOT without controls"};
	}
	std::vector<line_id> lines;
	for (auto const& c : controls) {
		lines.push_back(c.line);
	}
	lines.push_back(target);
	std::sort(lines.begin(), lines.end());
	if (std::adjacent_find(lines.begin(), lines.end()) != lines.end()) {
		return validation_error{index, error_code::duplicate_line, "control and target lines must be distinct"};
	}
	if (auto const* r = std::get_if<root_gate>(&g)) {
		if (r->order == 0 || (r->order & (r->order - 1)) != 0) {
			return validation_error{index, error_code::bad_root_order,
			                        "root order " + std::to_string(r->order) + " is not a power of two"};
		}
	}
	return std::nullopt;
}

} // namespace detail

/*! \brief Returns the first violated rule, or nothing if the circuit is well formed. */
inline std::optional<validation_error> validate(circuit const& c)
{
	if (c.width == 0) {
		return validation_error{0, error_code::line_out_of_range, "circuit width must be positive"};
	}
	for (std::size_t i = 0; i < c.gates.size(); ++i) {
		if (auto err = detail::check_gate(c.gates[i], i, c.width)) {
			return err;
		}
	}
	for (auto const& [line, value] : c.constants) {
		if (line >= c.width) {
			return validation_error{c.gates.size(), error_code::line_out_of_range,
			                        "constant line " + std::to_string(line) + " out of range"};
		}
	}
	for (auto line : c.garbage) {
		if (line >= c.width) {
			return validation_error{c.gates.size(), error_code::line_out_of_range,
			                        "garbage line " + std::to_string(line) + " out of range"};
		}
	}
	return std::nullopt;
}

inline void ensure_valid(circuit const& c)
{
	if (auto err = validate(c)) {
		throw error(err->code, "gate " + std::to_string(err->gate_index) + ": " + err->message, err->gate_index);
	}
}

inline bool is_classical(circuit const& c)
{
	return std::all_of(c.gates.begin(), c.gates.end(), [](gate const& g) { return is_classical(g); });
}

/*! \brief Mirror circuit: reversed order, every gate inverted. */
inline circuit circuit_inverse(circuit const& c)
{
	circuit inv = c;
	inv.gates.clear();
	for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
		inv.gates.push_back(gate_inverse(*it));
	}
	return inv;
}

} // namespace dualrev
