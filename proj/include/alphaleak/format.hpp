#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace alphaleak::cli {

enum class Units { kNats, kBits };

Units parse_units(std::string_view text);
const char* to_string(Units units);

// 12 significant digits, trailing zeros trimmed; scientific notation outside
// [1e-4, 1e6); infinities as "inf" / "-inf".
std::string format_number(double value);

// Information values this close to zero are accumulation noise and render as 0.
inline constexpr double kInformationZeroFloor = 1e-12;

// Information quantity given in nats, rendered in `units`.
std::string format_information(double nats, Units units);

std::string csv_line(const std::vector<std::string>& fields);

}  // namespace alphaleak::cli
