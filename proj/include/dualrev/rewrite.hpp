/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include "circuit.hpp"
#include "errors.hpp"
#include "gate.hpp"
#include "metrics.hpp"
#include "simulate.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dualrev {

/*! \brief Two functionally equal gate sequences over the abstract lines
 *  c1 = 0, c2 = 1, t = 2.
 *
 * The classical side is the source of the preferred rewrite, the dual side
 * its replacement.
 */
struct rewrite_rule {
	std::string id;
	std::vector<gate> classical_side;
	std::vector<gate> dual_side;
	std::string identity;
	std::string alternate;
	uint64_t cost_classical = 0;
	uint64_t cost_dual = 0;
};

enum class rewrite_direction : uint8_t { classical_to_dual, dual_to_classical };

inline constexpr uint32_t rule_width = 3;

namespace detail {

inline rewrite_rule make_rule(std::string id, std::vector<gate> classical, std::vector<gate> dual,
                              std::string identity, std::string alternate = {})
{
	rewrite_rule r{std::move(id), std::move(classical), std::move(dual), std::move(identity), std::move(alternate)};
	r.cost_classical = quantum_cost(circuit(rule_width, r.classical_side));
	r.cost_dual = quantum_cost(circuit(rule_width, r.dual_side));
	return r;
}

inline std::vector<rewrite_rule> build_catalog()
{
	constexpr line_id c1 = 0;
	constexpr line_id c2 = 1;
	constexpr line_id t = 2;
	std::vector<rewrite_rule> rules;
	rules.push_back(make_rule("basic-a", {make_cnot(c1, t), make_cnot(c2, t), make_toffoli(c1, c2, t)},
	                          {make_dual_toffoli(c1, c2, t)}, "c1 ^ c2 ^ c1c2 = c1 | c2"));
	rules.push_back(make_rule("basic-b", {make_cnot(c2, t), make_toffoli(c1, neg(c2), t)},
	                          {make_dual_toffoli(c1, c2, t)}, "c2 ^ c1!c2 = c1 | c2"));
	rules.push_back(make_rule("basic-c", {make_cnot(c1, t), make_toffoli(neg(c1), c2, t)},
	                          {make_dual_toffoli(c1, c2, t)}, "c1 ^ !c1c2 = c1 | c2"));
	rules.push_back(make_rule("basic-d", {make_not(t), make_toffoli(neg(c1), neg(c2), t)},
	                          {make_dual_toffoli(c1, c2, t)}, "!(!c1!c2) = c1 | c2"));
	rules.push_back(make_rule("rule-01", {make_cnot(neg(c2), t), make_toffoli(c1, c2, t)},
	                          {make_dual_toffoli(c1, neg(c2), t)}, "t ^ (c1 | !c2) = t ^ !c2 ^ c1c2"));
	rules.push_back(make_rule("rule-02", {make_cnot(neg(c1), t), make_toffoli(c1, c2, t)},
	                          {make_dual_toffoli(neg(c1), c2, t)}, "t ^ (!c1 | c2) = t ^ !c1 ^ c1c2"));
	rules.push_back(make_rule("rule-03", {make_dual_toffoli(c1, c2, t), make_cnot(neg(c2), t)},
	                          {make_dual_toffoli(neg(c1), c2, t)}, "t ^ (c1 | c2) ^ !c2 = t ^ 1 ^ c1!c2 = t ^ (!c1 | c2)"));
	rules.push_back(make_rule("rule-04", {make_dual_toffoli(neg(c1), c2, t), make_cnot(neg(c2), t)},
	                          {make_dual_toffoli(c1, c2, t)}, "t ^ (!c1 | c2) ^ !c2 = t ^ 1 ^ !c1!c2 = t ^ (c1 | c2)",
	                          "t ^ c1 ^ !c1c2"));
	rules.push_back(make_rule("rule-05", {make_cnot(neg(c1), t), make_dual_toffoli(c1, c2, t)},
	                          {make_dual_toffoli(c1, neg(c2), t)}, "t ^ !c1 ^ (c1 | c2) = t ^ 1 ^ !c1c2",
	                          "t ^ 1 ^ c2 ^ c1c2 = t ^ (c1 | !c2)"));
	rules.push_back(make_rule("rule-06",
	                          {make_toffoli(neg(c1), c2, t), make_cnot(c2, c1), make_toffoli(neg(c2), t, c1)},
	                          {make_dual_toffoli(c2, t, c1), make_toffoli(c1, c2, t)},
	                          "t' = t ^ !c1c2; c1' = c1 ^ c2 ^ !c2t'"));
	rules.push_back(make_rule("rule-07",
	                          {make_cnot(c2, t), make_toffoli(c1, neg(c2), t), make_cnot(c2, c1),
	                           make_toffoli(t, neg(c2), c1)},
	                          {make_dual_toffoli(c1, c2, t), make_dual_toffoli(t, c2, c1)},
	                          "t' = t ^ c2 ^ c1!c2; c1' = c1 ^ c2 ^ t'!c2"));
	rules.push_back(make_rule("rule-08",
	                          {make_cnot(neg(c2), t), make_toffoli(c1, c2, t), make_cnot(c2, c1),
	                           make_toffoli(t, neg(c2), c1)},
	                          {make_dual_toffoli(c1, neg(c2), t), make_dual_toffoli(t, c2, c1)},
	                          "t' = t ^ !c2 ^ c1c2; c1' = c1 ^ c2 ^ t'!c2"));
	rules.push_back(make_rule("rule-09",
	                          {make_cnot(c2, t), make_toffoli(c1, neg(c2), t), make_cnot(neg(c2), c1),
	                           make_toffoli(t, c2, c1)},
	                          {make_dual_toffoli(c1, c2, t), make_dual_toffoli(t, neg(c2), c1)},
	                          "t' = t ^ c2 ^ c1!c2; c1' = c1 ^ !c2 ^ t'c2"));
	rules.push_back(make_rule("rule-10", {make_cnot(neg(c2), t), make_toffoli(c1, c2, t), make_cnot(c1, c2)},
	                          {make_dual_peres(c1, neg(c2), t)}, "c2' = c1 ^ c2; t' = t ^ !c2 ^ c1c2"));
	rules.push_back(make_rule("rule-11",
	                          {make_cnot(c2, t), make_toffoli(c1, neg(c2), t), make_cnot(neg(c2), c1),
	                           make_toffoli(neg(t), c2, c1)},
	                          {make_dual_toffoli(c1, c2, t), make_dual_toffoli(neg(t), neg(c2), c1)},
	                          "t' = t ^ c2 ^ c1!c2; c1' = c1 ^ !c2 ^ !t'c2"));
	rules.push_back(make_rule("rule-12",
	                          {make_cnot(t, c1), make_cnot(t, c2), make_not(t), make_toffoli(neg(c1), neg(c2), t)},
	                          {make_cnot(t, c1), make_cnot(t, c2), make_dual_toffoli(c1, c2, t)},
	                          "t' = c1!t ^ c2!t ^ c1c2"));
	rules.push_back(make_rule("rule-13",
	                          {make_cnot(t, c1), make_cnot(c1, t), make_toffoli(neg(c1), c2, t), make_cnot(t, c1)},
	                          {make_cnot(t, c1), make_dual_toffoli(c1, c2, t), make_cnot(t, c1)},
	                          "c0 = t ^ c1; t' = t ^ c0 ^ !c0c2; c1' = c0 ^ t'"));
	rules.push_back(make_rule("rule-14",
	                          {make_cnot(c1, t), make_cnot(t, c1), make_cnot(c1, t), make_toffoli(neg(t), c2, c1)},
	                          {make_dual_toffoli(c1, c2, t), make_cnot(t, c1), make_cnot(c1, t)},
	                          "c1' = t ^ !c1c2; t' = c1"));
	return rules;
}

} // namespace detail

/*! \brief The 18 rewriting rules in id order. */
inline std::vector<rewrite_rule> const& rule_catalog()
{
	static std::vector<rewrite_rule> const catalog = detail::build_catalog();
	return catalog;
}

inline rewrite_rule const* find_rule(std::string_view id)
{
	for (auto const& r : rule_catalog()) {
		if (r.id == id) {
			return &r;
		}
	}
	return nullptr;
}

struct rule_verification {
	bool equivalent = false;
	bool cost_ordered = false;
	std::optional<uint64_t> counterexample;

	bool ok() const noexcept
	{
		return equivalent && cost_ordered;
	}
};

/*! Exhaustive check of both sides on three lines plus the cost ordering. */
inline rule_verification verify_rule(rewrite_rule const& rule)
{
	circuit const lhs(rule_width, rule.classical_side);
	circuit const rhs(rule_width, rule.dual_side);
	auto const eq = equiv_permutation(lhs, rhs);
	return {eq.equivalent, quantum_cost(rhs) <= quantum_cost(lhs), eq.counterexample};
}

/* matching */

/*! \brief An occurrence of one rule side in a circuit.
 *
 * `positions` are increasing gate indices; gates between them are assumed
 * to commute past every later matched gate. `binding[a]` is the circuit
 * line bound to abstract line a.
 */
struct match {
	std::string rule_id;
	rewrite_direction direction = rewrite_direction::classical_to_dual;
	std::vector<std::size_t> positions;
	std::array<line_id, rule_width> binding{};

	friend bool operator==(match const&, match const&) = default;
};

/*! \brief Sound commutation test used by the matcher.
 *
 * Gates on disjoint lines commute; two XOR-class gates commute when neither
 * target is a control of the other.
 */
inline bool gates_commute(gate const& a, gate const& b)
{
	auto const la = lines_touched(a);
	auto const lb = lines_touched(b);
	if (std::find_first_of(la.begin(), la.end(), lb.begin(), lb.end()) == la.end()) {
		return true;
	}
	if (!is_xor_class(a) || !is_xor_class(b)) {
		return false;
	}
	auto const controls_line = [](gate const& g, line_id l) {
		auto const cs = controls_of(g);
		return std::any_of(cs.begin(), cs.end(), [&](control const& c) { return c.line == l; });
	};
	return !controls_line(a, target_of(b)) && !controls_line(b, target_of(a));
}

namespace detail {

using partial_binding = std::array<std::optional<line_id>, rule_width>;

inline bool bind(partial_binding& b, line_id abstract, line_id concrete)
{
	if (b[abstract]) {
		return *b[abstract] == concrete;
	}
	for (auto const& other : b) {
		if (other && *other == concrete) {
			return false;
		}
	}
	b[abstract] = concrete;
	return true;
}

inline bool bind_control(partial_binding& b, control const& pattern, control const& actual)
{
	return pattern.pol == actual.pol && bind(b, pattern.line, actual.line);
}

/*! Every binding under which `pattern` equals `actual`; controls of NOT-class
 *  gates are matched as a set. */
inline std::vector<partial_binding> match_gate(gate const& pattern, gate const& actual, partial_binding const& base)
{
	std::vector<partial_binding> out;
	if (pattern.index() != actual.index()) {
		return out;
	}
	if (auto const* p = std::get_if<not_gate>(&pattern)) {
		auto b = base;
		if (bind(b, p->target, std::get<not_gate>(actual).target)) {
			out.push_back(b);
		}
	} else if (auto const* p = std::get_if<mct_gate>(&pattern)) {
		auto const& a = std::get<mct_gate>(actual);
		if (p->mode != a.mode || p->controls.size() != a.controls.size()) {
			return out;
		}
		std::vector<std::size_t> order(a.controls.size());
		for (std::size_t i = 0; i < order.size(); ++i) {
			order[i] = i;
		}
		do {
			auto b = base;
			bool ok = bind(b, p->target, a.target);
			for (std::size_t i = 0; ok && i < order.size(); ++i) {
				ok = bind_control(b, p->controls[i], a.controls[order[i]]);
			}
			if (ok && std::find(out.begin(), out.end(), b) == out.end()) {
				out.push_back(b);
			}
		} while (std::next_permutation(order.begin(), order.end()));
	} else if (auto const* p = std::get_if<peres_gate>(&pattern)) {
		auto const& a = std::get<peres_gate>(actual);
		auto b = base;
		if (p->mode == a.mode && p->inverse == a.inverse && bind_control(b, p->c1, a.c1)
		    && bind_control(b, p->c2, a.c2) && bind(b, p->target, a.target)) {
			out.push_back(b);
		}
	}
	return out;
}

inline gate remap(gate g, std::array<line_id, rule_width> const& binding)
{
	std::visit(
	    [&](auto& x) {
		    using T = std::decay_t<decltype(x)>;
		    x.target = binding.at(x.target);
		    if constexpr (std::is_same_v<T, mct_gate>) {
			    for (auto& c : x.controls) {
				    c.line = binding.at(c.line);
			    }
		    } else if constexpr (std::is_same_v<T, peres_gate>) {
			    x.c1.line = binding.at(x.c1.line);
			    x.c2.line = binding.at(x.c2.line);
		    } else if constexpr (std::is_same_v<T, root_gate>) {
			    if (x.ctrl) {
				    x.ctrl->line = binding.at(x.ctrl->line);
			    }
		    }
	    },
	    g);
	return g;
}

inline std::vector<gate> const& source_side(rewrite_rule const& r, rewrite_direction d)
{
	return d == rewrite_direction::classical_to_dual ? r.classical_side : r.dual_side;
}

inline std::vector<gate> const& replacement_side(rewrite_rule const& r, rewrite_direction d)
{
	return d == rewrite_direction::classical_to_dual ? r.dual_side : r.classical_side;
}

} // namespace detail

struct match_options {
	/*! Largest distance between the first and the last matched gate. */
	std::size_t max_span = 16;
};

/*! \brief Calls `fn(match)` for every occurrence, in order of first position;
 *  stops early when `fn` returns false. */
template<typename Fn>
void foreach_match(circuit const& c, rewrite_rule const& rule, rewrite_direction direction, Fn&& fn,
                   match_options const& options = {})
{
	auto const& pattern = detail::source_side(rule, direction);
	if (pattern.empty()) {
		return;
	}
	bool keep_going = true;
	std::vector<std::size_t> positions;
	std::vector<std::size_t> skipped;

	std::function<void(std::size_t, std::size_t, detail::partial_binding const&)> extend;
	extend = [&](std::size_t k, std::size_t from, detail::partial_binding const& binding) {
		if (!keep_going) {
			return;
		}
		if (k == pattern.size()) {
			match m{rule.id, direction, positions, {}};
			for (std::size_t a = 0; a < rule_width; ++a) {
				if (!binding[a]) {
					return;
				}
				m.binding[a] = *binding[a];
			}
			keep_going = fn(m);
			return;
		}
		std::size_t const limit = std::min(c.gates.size(), positions.front() + options.max_span + 1);
		auto const skipped_before = skipped.size();
		for (std::size_t j = from; j < limit && keep_going; ++j) {
			auto const& g = c.gates[j];
			bool const commutes_with_skipped = std::all_of(skipped.begin(), skipped.end(), [&](std::size_t s) {
				return gates_commute(c.gates[s], g);
			});
			if (commutes_with_skipped) {
				for (auto const& b : detail::match_gate(pattern[k], g, binding)) {
					positions.push_back(j);
					extend(k + 1, j + 1, b);
					positions.pop_back();
					if (!keep_going) {
						break;
					}
				}
			}
			skipped.push_back(j);
		}
		skipped.resize(skipped_before);
	};

	for (std::size_t i = 0; i < c.gates.size() && keep_going; ++i) {
		for (auto const& b : detail::match_gate(pattern.front(), c.gates[i], {})) {
			positions.assign(1, i);
			skipped.clear();
			extend(1, i + 1, b);
			if (!keep_going) {
				break;
			}
		}
	}
}

inline std::vector<match> find_matches(circuit const& c, rewrite_rule const& rule,
                                       rewrite_direction direction = rewrite_direction::classical_to_dual,
                                       match_options const& options = {})
{
	std::vector<match> out;
	foreach_match(
	    c, rule, direction,
	    [&](match const& m) {
		    out.push_back(m);
		    return true;
	    },
	    options);
	return out;
}

/*! \brief Replaces the matched gates by the bound replacement side, inserted
 *  at the first matched position. Throws `error_code::stale_match` if the
 *  match no longer describes the circuit. */
inline circuit apply_match(circuit const& c, match const& m)
{
	auto const* rule = find_rule(m.rule_id);
	if (!rule) {
		throw error(error_code::stale_match, "unknown rule " + m.rule_id);
	}
	auto const& pattern = detail::source_side(*rule, m.direction);
	if (m.positions.size() != pattern.size() || !std::is_sorted(m.positions.begin(), m.positions.end())
	    || std::adjacent_find(m.positions.begin(), m.positions.end()) != m.positions.end()
	    || m.positions.back() >= c.gates.size()) {
		throw error(error_code::stale_match, "match positions do not fit the circuit");
	}
	detail::partial_binding fixed;
	for (std::size_t a = 0; a < rule_width; ++a) {
		fixed[a] = m.binding[a];
	}
	for (std::size_t k = 0; k < pattern.size(); ++k) {
		auto const bs = detail::match_gate(pattern[k], c.gates[m.positions[k]], fixed);
		if (bs.empty()) {
			throw error(error_code::stale_match, "gate " + std::to_string(m.positions[k]) + " no longer matches",
			            m.positions[k]);
		}
	}
	// interleaved gates must commute with every later matched gate
	for (std::size_t j = m.positions.front(); j < m.positions.back(); ++j) {
		if (std::find(m.positions.begin(), m.positions.end(), j) != m.positions.end()) {
			continue;
		}
		for (auto p : m.positions) {
			if (p > j && !gates_commute(c.gates[j], c.gates[p])) {
				throw error(error_code::stale_match, "gate " + std::to_string(j) + " blocks the match", j);
			}
		}
	}

	circuit out = c;
	out.gates.clear();
	for (std::size_t j = 0; j < c.gates.size(); ++j) {
		if (j == m.positions.front()) {
			for (auto const& g : detail::replacement_side(*rule, m.direction)) {
				out.gates.push_back(detail::remap(g, m.binding));
			}
			continue;
		}
		if (std::find(m.positions.begin(), m.positions.end(), j) == m.positions.end()) {
			out.gates.push_back(c.gates[j]);
		}
	}
	return out;
}

/* optimizer */

/*! Order in which rules are tried within a pass. */
enum class rule_selection : uint8_t {
	/*! Rules with the larger cost reduction first, catalog order among equals. */
	largest_gain,
	/*! Plain catalog order. */
	catalog_order
};

struct optimize_config {
	bool verify = false;
	std::size_t max_passes = 1000;
	/*! Also consider dual-to-classical matches; they are still applied only
	 *  when they strictly lower the cost. */
	bool allow_reverse = false;
	rule_selection selection = rule_selection::largest_gain;
	match_options matching{};
};

struct rule_application {
	std::string rule;
	std::size_t position = 0;
	/*! Cost after minus cost before; negative for an improvement. */
	int64_t cost_delta = 0;
};

struct optimization_report {
	std::vector<rule_application> applications;
	uint64_t cost_before = 0;
	uint64_t cost_after = 0;
	std::size_t passes = 0;
	/*! Applications rolled back because the local check failed. */
	std::size_t verification_failures = 0;
	/*! Windows too wide for the local check; those matches were not applied. */
	std::size_t unverifiable_windows = 0;
};

namespace detail {

enum class window_check : uint8_t { equivalent, different, too_wide };

/*! Compares the rewritten window on the lines it touches. */
inline window_check check_window(circuit const& before, circuit const& after, match const& m,
                                 std::size_t replacement_size)
{
	auto const first = m.positions.front();
	auto const last = m.positions.back();
	std::size_t const window_after = (last - first + 1) - m.positions.size() + replacement_size;

	std::map<line_id, line_id> compact;
	auto const collect = [&](gate const& g) {
		for (auto l : lines_touched(g)) {
			compact.emplace(l, 0);
		}
	};
	for (std::size_t j = first; j <= last; ++j) {
		collect(before.gates[j]);
	}
	for (std::size_t j = first; j < first + window_after; ++j) {
		collect(after.gates[j]);
	}
	if (compact.size() > 16) {
		return window_check::too_wide;
	}
	line_id next = 0;
	for (auto& [line, local] : compact) {
		local = next++;
	}
	auto const localize = [&](gate g) {
		std::visit(
		    [&](auto& x) {
			    using T = std::decay_t<decltype(x)>;
			    x.target = compact.at(x.target);
			    if constexpr (std::is_same_v<T, mct_gate>) {
				    for (auto& c : x.controls) {
					    c.line = compact.at(c.line);
				    }
			    } else if constexpr (std::is_same_v<T, peres_gate>) {
				    x.c1.line = compact.at(x.c1.line);
				    x.c2.line = compact.at(x.c2.line);
			    }
		    },
		    g);
		return g;
	};
	circuit lhs(next);
	circuit rhs(next);
	for (std::size_t j = first; j <= last; ++j) {
		lhs.add(localize(before.gates[j]));
	}
	for (std::size_t j = first; j < first + window_after; ++j) {
		rhs.add(localize(after.gates[j]));
	}
	return equiv_permutation(lhs, rhs, false) ? window_check::equivalent : window_check::different;
}

} // namespace detail

/*! \brief Greedy peephole optimization with the rule catalog.
 *
 * Each pass tries the cost-lowering rules, by default those with the larger
 * gain first, and applies the first match found; it stops when a pass applies
 * nothing or after `max_passes` passes. With `verify`, every application is checked
 * exhaustively on the lines of its window and rolled back on mismatch.
 */
inline std::pair<circuit, optimization_report> optimize(circuit c, optimize_config const& config = {})
{
	ensure_valid(c);
	detail::require_classical(c);
	optimization_report report;
	report.cost_before = quantum_cost(c);

	std::vector<rewrite_direction> directions{rewrite_direction::classical_to_dual};
	if (config.allow_reverse) {
		directions.push_back(rewrite_direction::dual_to_classical);
	}

	struct candidate {
		rewrite_rule const* rule;
		rewrite_direction dir;
		int64_t delta;
	};
	std::vector<candidate> candidates;
	for (auto const& rule : rule_catalog()) {
		for (auto dir : directions) {
			int64_t const delta = dir == rewrite_direction::classical_to_dual
			                          ? static_cast<int64_t>(rule.cost_dual) - static_cast<int64_t>(rule.cost_classical)
			                          : static_cast<int64_t>(rule.cost_classical) - static_cast<int64_t>(rule.cost_dual);
			if (delta < 0) {
				candidates.push_back({&rule, dir, delta});
			}
		}
	}
	if (config.selection == rule_selection::largest_gain) {
		std::stable_sort(candidates.begin(), candidates.end(),
		                 [](candidate const& a, candidate const& b) { return a.delta < b.delta; });
	}

	while (report.passes < config.max_passes) {
		++report.passes;
		bool applied = false;
		for (auto const& cand : candidates) {
			auto const& replacement = detail::replacement_side(*cand.rule, cand.dir);
			foreach_match(
			    c, *cand.rule, cand.dir,
			    [&](match const& m) {
				    auto next = apply_match(c, m);
				    if (config.verify) {
					    auto const check = detail::check_window(c, next, m, replacement.size());
					    if (check == detail::window_check::too_wide) {
						    ++report.unverifiable_windows;
						    return true;
					    }
					    if (check == detail::window_check::different) {
						    ++report.verification_failures;
						    return true;
					    }
				    }
				    report.applications.push_back({cand.rule->id, m.positions.front(), cand.delta});
				    c = std::move(next);
				    applied = true;
				    return false;
			    },
			    config.matching);
			if (applied) {
				break;
			}
		}
		if (!applied) {
			break;
		}
	}
	report.cost_after = quantum_cost(c);
	return {std::move(c), std::move(report)};
}

} // namespace dualrev
