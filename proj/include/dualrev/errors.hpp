/*------------------------------------------------------------------------------
| This file is distributed under the MIT License.
| See accompanying file /LICENSE for details.
*-----------------------------------------------------------------------------*/
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dualrev {

enum class error_code : uint8_t {
	line_out_of_range,
	duplicate_line,
	bad_root_order,
	not_classical,
	constant_violated,
	width_cap,
	width_mismatch,
	uncosted,
	unsupported,
	polarity_unsupported,
	too_few_controls,
	stale_match,
	syntax_error,
	unknown_gate,
	unknown_variable,
	arity_mismatch,
};

inline constexpr std::string_view to_string(error_code code) noexcept
{
	switch (code) {
	case error_code::line_out_of_range: return "LineOutOfRange";
	case error_code::duplicate_line: return "DuplicateLine";
	case error_code::bad_root_order: return "BadRootOrder";
	case error_code::not_classical: return "NotClassical";
	case error_code::constant_violated: return "ConstantViolated";
	case error_code::width_cap: return "WidthCap";
	case error_code::width_mismatch: return "WidthMismatch";
	case error_code::uncosted: return "Uncosted";
	case error_code::unsupported: return "Unsupported";
	case error_code::polarity_unsupported: return "PolarityUnsupported";
	case error_code::too_few_controls: return "TooFewControls";
	case error_code::stale_match: return "StaleMatch";
	case error_code::syntax_error: return "SyntaxError";
	case error_code::unknown_gate: return "UnknownGate";
	case error_code::unknown_variable: return "UnknownVariable";
	case error_code::arity_mismatch: return "ArityMismatch";
	}
	return "Unknown";
}

/*! \brief Exception carrying a machine-readable error code.
 *
 * `position` is a gate index for circuit errors and a 1-based source line
 * for parse errors; it is empty when no location applies.
 */
class error : public std::runtime_error {
public:
	error(error_code code, std::string const& message,
	      std::optional<std::size_t> position = std::nullopt)
	    : std::runtime_error(std::string(to_string(code)) + ": " + message)
	    , code_(code)
	    , position_(position)
	{}

	error_code code() const noexcept
	{
		return code_;
	}

	std::optional<std::size_t> position() const noexcept
	{
		return position_;
	}

private:
	error_code code_;
	std::optional<std::size_t> position_;
};

} // namespace dualrev
