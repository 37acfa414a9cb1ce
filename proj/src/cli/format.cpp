#include "alphaleak/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "alphaleak/measures.hpp"

namespace alphaleak::cli {

Units parse_units(std::string_view text) {
  if (text == "nats") return Units::kNats;
  if (text == "bits") return Units::kBits;
  throw std::invalid_argument("units must be 'nats' or 'bits', got '" + std::string(text) + "'");
}

const char* to_string(Units units) { return units == Units::kBits ? "bits" : "nats"; }

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const double magnitude = std::abs(value);
  if (magnitude >= 1e-4 && magnitude < 1e6) {
    const int exp10 = static_cast<int>(std::floor(std::log10(magnitude)));
    const int decimals = std::max(0, 11 - exp10);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
      while (s.back() == '0') s.pop_back();
      if (s.back() == '.') s.pop_back();
    }
    return s;
  }
  std::snprintf(buf, sizeof buf, "%.11e", value);
  std::string s(buf);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  while (mantissa.back() == '0') mantissa.pop_back();
  if (mantissa.back() == '.') mantissa.pop_back();
  return mantissa + s.substr(e);
}

std::string format_information(double nats, Units units) {
  if (std::abs(nats) < kInformationZeroFloor) return "0";
  return format_number(units == Units::kBits ? nats_to_bits(nats) : nats);
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line += ',';
    line += fields[i];
  }
  line += '\n';
  return line;
}

}  // namespace alphaleak::cli
