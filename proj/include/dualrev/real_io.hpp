/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include "circuit.hpp"
#include "errors.hpp"
#include "gate.hpp"

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dualrev {

/*! \brief Contents of a .real file.
 *
 * Gate mnemonics (last operand is the target, `-` marks a negative control):
 *   t1..tN      conjunctive multi-controlled NOT (t1 = NOT, t2 = CNOT)
 *   dt2..dtN    disjunctive multi-controlled NOT (dt3 = dual Toffoli)
 *   p3 ip3      Peres and inverse Peres
 *   dp3 idp3    dual Peres and inverse dual Peres
 *   v vdg w     controlled V, V^dagger, W (control optional)
 *   rx m, rxdg m  controlled m-th root of NOT and its adjoint
 *   h tg tdg sg sdg x cx
 */
struct real_document {
	std::string version;
	std::vector<std::string> variables;
	circuit circ;
	std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line)
{
	std::vector<std::string> tokens;
	std::istringstream in{std::string(line)};
	std::string tok;
	while (in >> tok) {
		tokens.push_back(tok);
	}
	return tokens;
}

inline std::optional<uint32_t> parse_uint(std::string_view s)
{
	uint32_t value = 0;
	auto const* end = s.data() + s.size();
	auto [ptr, ec] = std::from_chars(s.data(), end, value);
	if (ec != std::errc{} || ptr != end) {
		return std::nullopt;
	}
	return value;
}

class real_parser {
public:
	real_document run(std::string_view text)
	{
		std::size_t pos = 0;
		while (pos <= text.size()) {
			auto const nl = text.find('\n', pos);
			auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
			++line_no_;
			handle_line(line);
			if (nl == std::string_view::npos) {
				break;
			}
			pos = nl + 1;
		}
		if (!ended_) {
			fail(error_code::syntax_error, "missing .end");
		}
		return std::move(doc_);
	}

private:
	[[noreturn]] void fail(error_code code, std::string const& what) const
	{
		throw error(code, "line " + std::to_string(line_no_) + ": " + what, line_no_);
	}

	void handle_line(std::string_view line)
	{
		if (auto const hash = line.find('#'); hash != std::string_view::npos) {
			line = line.substr(0, hash);
		}
		auto const tokens = split_tokens(line);
		if (tokens.empty()) {
			return;
		}
		if (ended_) {
			fail(error_code::syntax_error, "content after .end");
		}
		if (tokens[0].front() == '.') {
			handle_directive(tokens);
		} else if (!begun_) {
			fail(error_code::syntax_error, "gate before .begin");
		} else {
			doc_.circ.gates.push_back(parse_gate(tokens));
		}
	}

	void handle_directive(std::vector<std::string> const& tokens)
	{
		auto const& d = tokens[0];
		if (d == ".version") {
			doc_.version = tokens.size() > 1 ? tokens[1] : "";
		} else if (d == ".numvars") {
			if (tokens.size() != 2) {
				fail(error_code::syntax_error, ".numvars takes one number");
			}
			auto n = parse_uint(tokens[1]);
			if (!n || *n == 0) {
				fail(error_code::syntax_error, "bad .numvars value '" + tokens[1] + "'");
			}
			numvars_ = *n;
		} else if (d == ".variables") {
			if (!numvars_) {
				fail(error_code::syntax_error, ".variables before .numvars");
			}
			if (tokens.size() - 1 != *numvars_) {
				fail(error_code::syntax_error, ".variables count differs from .numvars");
			}
			for (std::size_t i = 1; i < tokens.size(); ++i) {
				if (tokens[i].front() == '-' || !index_.emplace(tokens[i], static_cast<line_id>(i - 1)).second) {
					fail(error_code::syntax_error, "bad or duplicate variable '" + tokens[i] + "'");
				}
				doc_.variables.push_back(tokens[i]);
			}
			doc_.circ.width = *numvars_;
		} else if (d == ".constants") {
			auto const s = marker_string(tokens);
			for (std::size_t i = 0; i < s.size(); ++i) {
				if (s[i] == '0' || s[i] == '1') {
					doc_.circ.constants[static_cast<line_id>(i)] = s[i] == '1';
				} else if (s[i] != '-') {
					fail(error_code::syntax_error, "bad .constants character");
				}
			}
		} else if (d == ".garbage") {
			auto const s = marker_string(tokens);
			for (std::size_t i = 0; i < s.size(); ++i) {
				if (s[i] == '1') {
					doc_.circ.garbage.insert(static_cast<line_id>(i));
				} else if (s[i] != '-') {
					fail(error_code::syntax_error, "bad .garbage character");
				}
			}
		} else if (d == ".begin") {
			if (doc_.variables.empty()) {
				fail(error_code::syntax_error, ".begin before .variables");
			}
			begun_ = true;
		} else if (d == ".end") {
			if (!begun_) {
				fail(error_code::syntax_error, ".end before .begin");
			}
			ended_ = true;
		} else {
			doc_.warnings.push_back("line " + std::to_string(line_no_) + ": skipped directive " + d);
		}
	}

	std::string marker_string(std::vector<std::string> const& tokens) const
	{
		if (!numvars_ || tokens.size() != 2 || tokens[1].size() != *numvars_) {
			fail(error_code::syntax_error, tokens[0] + " needs one string of .numvars characters");
		}
		return tokens[1];
	}

	control operand(std::string const& tok) const
	{
		bool const negative = tok.size() > 1 && tok.front() == '-';
		auto const name = negative ? tok.substr(1) : tok;
		auto it = index_.find(name);
		if (it == index_.end()) {
			fail(error_code::unknown_variable, "unknown variable '" + name + "'");
		}
		return {it->second, negative ? polarity::negative : polarity::positive};
	}

	line_id target_operand(std::string const& tok) const
	{
		auto const c = operand(tok);
		if (c.negative()) {
			fail(error_code::syntax_error, "target '" + tok + "' cannot be negated");
		}
		return c.line;
	}

	void expect_operands(std::vector<std::string> const& ops, std::size_t n, std::string const& mnemonic) const
	{
		if (ops.size() != n) {
			fail(error_code::arity_mismatch, mnemonic + " expects " + std::to_string(n) + " operands, got "
			                                     + std::to_string(ops.size()));
		}
	}

	gate parse_gate(std::vector<std::string> const& tokens) const
	{
		auto const& mnemonic = tokens[0];
		std::vector<std::string> ops(tokens.begin() + 1, tokens.end());

		auto const counted = [&](std::string_view prefix) -> std::optional<uint32_t> {
			if (mnemonic.size() <= prefix.size() || mnemonic.compare(0, prefix.size(), prefix) != 0) {
				return std::nullopt;
			}
			return parse_uint(std::string_view(mnemonic).substr(prefix.size()));
		};
		auto const controls_and_target = [&](std::size_t n) {
			expect_operands(ops, n, mnemonic);
			std::vector<control> cs;
			for (std::size_t i = 0; i + 1 < n; ++i) {
				cs.push_back(operand(ops[i]));
			}
			return std::pair{cs, target_operand(ops.back())};
		};
		auto const optional_control = [&](std::vector<std::string> const& args) {
			if (args.size() != 1 && args.size() != 2) {
				fail(error_code::arity_mismatch, mnemonic + " expects 1 or 2 operands");
			}
			std::optional<control> ctrl;
			if (args.size() == 2) {
				ctrl = operand(args[0]);
			}
			return std::pair{ctrl, target_operand(args.back())};
		};

		if (auto n = counted("dt")) {
			if (*n < 2) {
				fail(error_code::unknown_gate, "dt gates need at least one control");
			}
			auto [cs, t] = controls_and_target(*n);
			return make_mct(control_mode::disjunctive, std::move(cs), t);
		}
		if (auto n = counted("t")) {
			if (*n == 0) {
				fail(error_code::unknown_gate, "t0 is not a gate");
			}
			auto [cs, t] = controls_and_target(*n);
			if (cs.empty()) {
				return make_not(t);
			}
			return make_mct(control_mode::conjunctive, std::move(cs), t);
		}
		if (mnemonic == "p3" || mnemonic == "ip3" || mnemonic == "dp3" || mnemonic == "idp3") {
			auto [cs, t] = controls_and_target(3);
			bool const dual = mnemonic.find('d') != std::string::npos;
			bool const inverse = mnemonic.front() == 'i';
			return peres_gate{dual ? control_mode::disjunctive : control_mode::conjunctive, cs[0], cs[1], t, inverse};
		}
		if (mnemonic == "x") {
			expect_operands(ops, 1, mnemonic);
			return make_not(target_operand(ops[0]));
		}
		if (mnemonic == "cx") {
			auto [cs, t] = controls_and_target(2);
			return make_cnot(cs[0], t);
		}
		if (mnemonic == "v" || mnemonic == "vdg" || mnemonic == "w") {
			auto [ctrl, t] = optional_control(ops);
			return root_gate{mnemonic == "w" ? 4u : 2u, mnemonic == "vdg", ctrl, t};
		}
		if (mnemonic == "rx" || mnemonic == "rxdg") {
			if (ops.empty()) {
				fail(error_code::arity_mismatch, mnemonic + " needs a root order");
			}
			auto order = parse_uint(ops[0]);
			if (!order || *order == 0 || (*order & (*order - 1)) != 0) {
				fail(error_code::bad_root_order, "root order '" + ops[0] + "' is not a power of two");
			}
			auto [ctrl, t] = optional_control({ops.begin() + 1, ops.end()});
			return root_gate{*order, mnemonic == "rxdg", ctrl, t};
		}
		if (mnemonic == "h") {
			expect_operands(ops, 1, mnemonic);
			return make_h(target_operand(ops[0]));
		}
		if (mnemonic == "tg" || mnemonic == "tdg") {
			expect_operands(ops, 1, mnemonic);
			return t_gate{target_operand(ops[0]), mnemonic == "tdg"};
		}
		if (mnemonic == "sg" || mnemonic == "sdg") {
			expect_operands(ops, 1, mnemonic);
			return s_gate{target_operand(ops[0]), mnemonic == "sdg"};
		}
		fail(error_code::unknown_gate, "unknown gate '" + mnemonic + "'");
	}

	real_document doc_;
	std::optional<uint32_t> numvars_;
	std::map<std::string, line_id> index_;
	std::size_t line_no_ = 0;
	bool begun_ = false;
	bool ended_ = false;
};

} // namespace detail

inline real_document parse_real_document(std::string_view text)
{
	auto doc = detail::real_parser{}.run(text);
	if (auto err = validate(doc.circ)) {
		throw error(err->code, "gate " + std::to_string(err->gate_index) + ": " + err->message, err->gate_index);
	}
	return doc;
}

inline circuit parse_real(std::string_view text)
{
	return parse_real_document(text).circ;
}

/*! Default variable names x0, x1, ... */
inline std::vector<std::string> default_variable_names(uint32_t width)
{
	std::vector<std::string> names;
	for (uint32_t i = 0; i < width; ++i) {
		names.push_back("x" + std::to_string(i));
	}
	return names;
}

/*! \brief Serializes a circuit; names default to x0, x1, ... and are
 *  extended the same way when the circuit is wider than `names`. */
namespace detail {

inline std::string write_real(circuit const& c, std::vector<std::string> names, std::string_view version)
{
	auto const fallback = default_variable_names(c.width);
	for (auto i = names.size(); i < c.width; ++i) {
		auto candidate = fallback[i];
		while (std::find(names.begin(), names.end(), candidate) != names.end()) {
			candidate += "_";
		}
		names.push_back(candidate);
	}
	names.resize(c.width);

	auto const op = [&](control const& ctl) { return (ctl.negative() ? "-" : "") + names[ctl.line]; };

	std::ostringstream out;
	out << ".version " << version << "\n";
	out << ".numvars " << c.width << "\n";
	out << ".variables";
	for (auto const& n : names) {
		out << ' ' << n;
	}
	out << "\n";
	if (!c.constants.empty()) {
		std::string s(c.width, '-');
		for (auto const& [line, value] : c.constants) {
			s[line] = value ? '1' : '0';
		}
		out << ".constants " << s << "\n";
	}
	if (!c.garbage.empty()) {
		std::string s(c.width, '-');
		for (auto line : c.garbage) {
			s[line] = '1';
		}
		out << ".garbage " << s << "\n";
	}
	out << ".begin\n";
	for (auto const& g : c.gates) {
		std::visit(
		    [&](auto const& x) {
			    using T = std::decay_t<decltype(x)>;
			    if constexpr (std::is_same_v<T, not_gate>) {
				    out << "t1 " << names[x.target];
			    } else if constexpr (std::is_same_v<T, mct_gate>) {
				    out << (x.mode == control_mode::disjunctive ? "dt" : "t") << x.controls.size() + 1;
				    for (auto const& ctl : x.controls) {
					    out << ' ' << op(ctl);
				    }
				    out << ' ' << names[x.target];
			    } else if constexpr (std::is_same_v<T, peres_gate>) {
				    out << (x.inverse ? "i" : "") << (x.mode == control_mode::disjunctive ? "dp3 " : "p3 ") << op(x.c1)
				        << ' ' << op(x.c2) << ' ' << names[x.target];
			    } else if constexpr (std::is_same_v<T, root_gate>) {
				    if (x.order == 2) {
					    out << (x.adjoint ? "vdg" : "v");
				    } else if (x.order == 4 && !x.adjoint) {
					    out << "w";
				    } else {
					    out << (x.adjoint ? "rxdg " : "rx ") << x.order;
				    }
				    if (x.ctrl) {
					    out << ' ' << op(*x.ctrl);
				    }
				    out << ' ' << names[x.target];
			    } else if constexpr (std::is_same_v<T, hadamard_gate>) {
				    out << "h " << names[x.target];
			    } else if constexpr (std::is_same_v<T, t_gate>) {
				    out << (x.adjoint ? "tdg " : "tg ") << names[x.target];
			    } else {
				    out << (x.adjoint ? "sdg " : "sg ") << names[x.target];
			    }
		    },
		    g);
		out << "\n";
	}
	out << ".end\n";
	return out.str();
}

} // namespace detail

inline std::string write_real(circuit const& c, std::vector<std::string> names = {})
{
	return detail::write_real(c, std::move(names), "1.0");
}

/*! Keeps the document's variable names and version string. */
inline std::string write_real(real_document const& doc)
{
	return detail::write_real(doc.circ, doc.variables, doc.version.empty() ? "1.0" : doc.version);
}

} // namespace dualrev
