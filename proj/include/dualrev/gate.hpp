/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace dualrev {

using line_id = uint32_t;

/*! \brief Which input value makes a control effective. */
enum class polarity : uint8_t { positive, negative };

/*! \brief How effective control values combine: AND (Toffoli family) or OR (dual family). */
enum class control_mode : uint8_t { conjunctive, disjunctive };

struct control {
	line_id line = 0;
	polarity pol = polarity::positive;

	constexpr control() = default;
	constexpr control(line_id l, polarity p = polarity::positive) // NOLINT: implicit on purpose
	    : line(l)
	    , pol(p)
	{}

	constexpr bool negative() const noexcept
	{
		return pol == polarity::negative;
	}

	constexpr control operator!() const noexcept
	{
		return {line, negative() ? polarity::positive : polarity::negative};
	}

	friend constexpr bool operator==(control const&, control const&) = default;
};

constexpr control neg(line_id line) noexcept
{
	return {line, polarity::negative};
}

struct not_gate {
	line_id target = 0;
	friend bool operator==(not_gate const&, not_gate const&) = default;
};

/*! One control is a CNOT; two conjunctive controls a Toffoli, two
 *  disjunctive controls a dual Toffoli. */
struct mct_gate {
	control_mode mode = control_mode::conjunctive;
	std::vector<control> controls;
	line_id target = 0;
	friend bool operator==(mct_gate const&, mct_gate const&) = default;
};

/*! Forward map: c2 ^= eff(c1); target ^= eff(c1) op eff(c2) with the
 *  original c2, op = AND (conjunctive) or OR (disjunctive). */
struct peres_gate {
	control_mode mode = control_mode::conjunctive;
	control c1;
	control c2;
	line_id target = 0;
	bool inverse = false;
	friend bool operator==(peres_gate const&, peres_gate const&) = default;
};

/*! \brief Optionally controlled m-th root of NOT, m a power of two.
 *
 * m = 1 is NOT, m = 2 is V, m = 4 is W.
 */
struct root_gate {
	uint32_t order = 2;
	bool adjoint = false;
	std::optional<control> ctrl;
	line_id target = 0;
	friend bool operator==(root_gate const&, root_gate const&) = default;
};

struct hadamard_gate {
	line_id target = 0;
	friend bool operator==(hadamard_gate const&, hadamard_gate const&) = default;
};

struct t_gate {
	line_id target = 0;
	bool adjoint = false;
	friend bool operator==(t_gate const&, t_gate const&) = default;
};

struct s_gate {
	line_id target = 0;
	bool adjoint = false;
	friend bool operator==(s_gate const&, s_gate const&) = default;
};

using gate = std::variant<not_gate, mct_gate, peres_gate, root_gate, hadamard_gate, t_gate, s_gate>;

/* constructors */

inline gate make_not(line_id target)
{
	return not_gate{target};
}

inline gate make_cnot(control c, line_id target)
{
	return mct_gate{control_mode::conjunctive, {c}, target};
}

inline gate make_toffoli(control c1, control c2, line_id target)
{
	return mct_gate{control_mode::conjunctive, {c1, c2}, target};
}

inline gate make_dual_toffoli(control c1, control c2, line_id target)
{
	return mct_gate{control_mode::disjunctive, {c1, c2}, target};
}

inline gate make_mct(control_mode mode, std::vector<control> controls, line_id target)
{
	return mct_gate{mode, std::move(controls), target};
}

inline gate make_peres(control c1, control c2, line_id target, bool inverse = false)
{
	return peres_gate{control_mode::conjunctive, c1, c2, target, inverse};
}

inline gate make_dual_peres(control c1, control c2, line_id target, bool inverse = false)
{
	return peres_gate{control_mode::disjunctive, c1, c2, target, inverse};
}

inline gate make_root(uint32_t order, std::optional<control> ctrl, line_id target, bool adjoint = false)
{
	return root_gate{order, adjoint, ctrl, target};
}

inline gate make_cv(control c, line_id target)
{
	return root_gate{2, false, c, target};
}

inline gate make_cvdg(control c, line_id target)
{
	return root_gate{2, true, c, target};
}

inline gate make_cw(control c, line_id target)
{
	return root_gate{4, false, c, target};
}

inline gate make_h(line_id target)
{
	return hadamard_gate{target};
}

inline gate make_t(line_id target)
{
	return t_gate{target, false};
}

inline gate make_tdg(line_id target)
{
	return t_gate{target, true};
}

inline gate make_s(line_id target)
{
	return s_gate{target, false};
}

inline gate make_sdg(line_id target)
{
	return s_gate{target, true};
}

/* queries */

inline line_id target_of(gate const& g)
{
	return std::visit([](auto const& x) { return x.target; }, g);
}

inline std::vector<control> controls_of(gate const& g)
{
	return std::visit(
	    [](auto const& x) -> std::vector<control> {
		    using T = std::decay_t<decltype(x)>;
		    if constexpr (std::is_same_v<T, mct_gate>) {
			    return x.controls;
		    } else if constexpr (std::is_same_v<T, peres_gate>) {
			    return {x.c1, x.c2};
		    } else if constexpr (std::is_same_v<T, root_gate>) {
			    if (x.ctrl) {
				    return {*x.ctrl};
			    }
			    return {};
		    } else {
			    return {};
		    }
	    },
	    g);
}

/*! \brief Sorted set of control and target lines. */
inline std::vector<line_id> lines_touched(gate const& g)
{
	std::vector<line_id> lines;
	for (auto const& c : controls_of(g)) {
		lines.push_back(c.line);
	}
	lines.push_back(target_of(g));
	std::sort(lines.begin(), lines.end());
	lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
	return lines;
}

/*! \brief True for gates with exact permutation semantics. */
inline bool is_classical(gate const& g)
{
	return std::holds_alternative<not_gate>(g) || std::holds_alternative<mct_gate>(g)
	       || std::holds_alternative<peres_gate>(g);
}

/*! \brief Gates that only XOR a function of their controls into the target. */
inline bool is_xor_class(gate const& g)
{
	return std::holds_alternative<not_gate>(g) || std::holds_alternative<mct_gate>(g);
}

inline bool has_negative_control(gate const& g)
{
	auto const cs = controls_of(g);
	return std::any_of(cs.begin(), cs.end(), [](control const& c) { return c.negative(); });
}

inline gate gate_inverse(gate const& g)
{
	return std::visit(
	    [](auto x) -> gate {
		    using T = std::decay_t<decltype(x)>;
		    if constexpr (std::is_same_v<T, peres_gate>) {
			    x.inverse = !x.inverse;
		    } else if constexpr (std::is_same_v<T, root_gate> || std::is_same_v<T, t_gate>
		                         || std::is_same_v<T, s_gate>) {
			    x.adjoint = !x.adjoint;
		    }
		    return x;
	    },
	    g);
}

/*! \brief Stable name of the gate kind, used for histograms. */
inline std::string kind_name(gate const& g)
{
	return std::visit(
	    [](auto const& x) -> std::string {
		    using T = std::decay_t<decltype(x)>;
		    if constexpr (std::is_same_v<T, not_gate>) {
			    return "not";
		    } else if constexpr (std::is_same_v<T, mct_gate>) {
			    bool const dual = x.mode == control_mode::disjunctive;
			    switch (x.controls.size()) {
			    case 1: return dual ? "dual_cnot" : "cnot";
			    case 2: return dual ? "dual_toffoli" : "toffoli";
			    default: return dual ? "dual_mct" : "mct";
			    }
		    } else if constexpr (std::is_same_v<T, peres_gate>) {
			    std::string name = x.mode == control_mode::disjunctive ? "dual_peres" : "peres";
			    return x.inverse ? "inverse_" + name : name;
		    } else if constexpr (std::is_same_v<T, root_gate>) {
			    std::string name = x.order == 2 ? "v" : x.order == 4 ? "w" : "rx" + std::to_string(x.order);
			    return x.adjoint ? name + "dg" : name;
		    } else if constexpr (std::is_same_v<T, hadamard_gate>) {
			    return "h";
		    } else if constexpr (std::is_same_v<T, t_gate>) {
			    return x.adjoint ? "tdg" : "t";
		    } else {
			    return x.adjoint ? "sdg" : "s";
		    }
	    },
	    g);
}

/* classical semantics */

/*! Basis index of line `line` in a width-`width` state: line 0 is the most
 *  significant bit. */
constexpr uint64_t line_mask(line_id line, uint32_t width) noexcept
{
	return uint64_t{1} << (width - 1u - line);
}

constexpr bool read_line(uint64_t state, line_id line, uint32_t width) noexcept
{
	return (state & line_mask(line, width)) != 0;
}

constexpr bool effective(uint64_t state, control c, uint32_t width) noexcept
{
	return read_line(state, c.line, width) != c.negative();
}

/*! \brief Applies a complete reversible gate to a basis state.
 *
 * Throws `error_code::not_classical` for elementary quantum gates.
 */
inline uint64_t apply_classical(gate const& g, uint64_t state, uint32_t width)
{
	return std::visit(
	    [&](auto const& x) -> uint64_t {
		    using T = std::decay_t<decltype(x)>;
		    if constexpr (std::is_same_v<T, not_gate>) {
			    return state ^ line_mask(x.target, width);
		    } else if constexpr (std::is_same_v<T, mct_gate>) {
			    bool fire = x.mode == control_mode::conjunctive;
			    for (auto const& c : x.controls) {
				    if (x.mode == control_mode::conjunctive) {
					    fire = fire && effective(state, c, width);
				    } else {
					    fire = fire || effective(state, c, width);
				    }
			    }
			    return fire ? state ^ line_mask(x.target, width) : state;
		    } else if constexpr (std::is_same_v<T, peres_gate>) {
			    auto const combine = [&](bool a, bool b) {
				    return x.mode == control_mode::conjunctive ? (a && b) : (a || b);
			    };
			    bool const e1 = effective(state, x.c1, width);
			    if (!x.inverse) {
				    bool const e2 = effective(state, x.c2, width);
				    if (e1) {
					    state ^= line_mask(x.c2.line, width);
				    }
				    if (combine(e1, e2)) {
					    state ^= line_mask(x.target, width);
				    }
			    } else {
				    if (e1) {
					    state ^= line_mask(x.c2.line, width);
				    }
				    bool const e2 = effective(state, x.c2, width);
				    if (combine(e1, e2)) {
					    state ^= line_mask(x.target, width);
				    }
			    }
			    return state;
		    } else {
			    throw error(error_code::not_classical, kind_name(x) + " has no permutation semantics");
		    }
	    },
	    g);
}

/*! \brief Bit-vector update function of a complete reversible gate. */
class gate_semantics {
public:
	gate_semantics(gate g, uint32_t width)
	    : gate_(std::move(g))
	    , width_(width)
	{
		if (!is_classical(gate_)) {
			throw error(error_code::not_classical, kind_name(gate_) + " has no permutation semantics");
		}
	}

	uint64_t operator()(uint64_t state) const
	{
		return apply_classical(gate_, state, width_);
	}

	std::vector<bool> operator()(std::vector<bool> const& bits) const;

private:
	gate gate_;
	uint32_t width_;
};

/* bit vectors: index i holds line i */

inline uint64_t to_index(std::vector<bool> const& bits)
{
	uint64_t index = 0;
	for (bool b : bits) {
		index = (index << 1) | (b ? 1u : 0u);
	}
	return index;
}

inline std::vector<bool> to_bits(uint64_t index, uint32_t width)
{
	std::vector<bool> bits(width);
	for (line_id i = 0; i < width; ++i) {
		bits[i] = read_line(index, i, width);
	}
	return bits;
}

inline std::vector<bool> gate_semantics::operator()(std::vector<bool> const& bits) const
{
	return to_bits((*this)(to_index(bits)), width_);
}

} // namespace dualrev
