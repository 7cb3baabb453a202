#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "sufficiency/types.hpp"

namespace sufficiency {

// Parses a parameter count written either as a plain integer ("73000000")
// or with a K/M/B suffix ("73M", "8B", "2.6B"). Case-insensitive suffix,
// '.' decimal point. The scaled value must land on a positive integer.
inline std::int64_t parse_param_count(std::string_view text) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos)
    throw validation_error("empty parameter count");
  std::string_view s = text.substr(begin, end - begin + 1);

  double scale = 1.0;
  char last = s.back();
  switch (std::toupper(static_cast<unsigned char>(last))) {
    case 'K': scale = 1e3; s.remove_suffix(1); break;
    case 'M': scale = 1e6; s.remove_suffix(1); break;
    case 'B': scale = 1e9; s.remove_suffix(1); break;
    default: break;
  }
  if (s.empty()) throw validation_error("parameter count '" + std::string(text) + "' has no digits");

  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(std::string(s), &consumed);
  } catch (const std::exception&) {
    throw validation_error("cannot parse parameter count '" + std::string(text) + "'");
  }
  if (consumed != s.size())
    throw validation_error("trailing characters in parameter count '" + std::string(text) + "'");

  double scaled = value * scale;
  double rounded = std::round(scaled);
  if (!(scaled > 0.0) || std::abs(scaled - rounded) > 1e-6 * std::max(1.0, rounded))
    throw validation_error("parameter count '" + std::string(text) +
                           "' is not a positive integer");
  if (rounded < 1.0 || rounded > 9.2e18)
    throw validation_error("parameter count '" + std::string(text) + "' out of range");
  return static_cast<std::int64_t>(rounded);
}

// Renders a parameter count with the largest suffix that divides it evenly.
// parse_param_count(format_param_count(p)) == p for every p >= 1.
inline std::string format_param_count(std::int64_t params) {
  if (params >= 1'000'000'000 && params % 1'000'000'000 == 0)
    return std::to_string(params / 1'000'000'000) + "B";
  if (params >= 1'000'000 && params % 1'000'000 == 0)
    return std::to_string(params / 1'000'000) + "M";
  if (params >= 1'000 && params % 1'000 == 0)
    return std::to_string(params / 1'000) + "K";
  return std::to_string(params);
}

}  // namespace sufficiency
