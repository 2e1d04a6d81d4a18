#pragma once

#include <charconv>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "canonical_tf/errors.hpp"

namespace canonical_tf::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

inline double parse_plain_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::Parse, "not a number: '" + std::string(s) + "'");
  }
  return value;
}

// Accepts plain numbers and the forms "pi", "-pi/6", "2*pi/3".
inline double parse_double(std::string_view s) {
  s = trim(s);
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return parse_plain_double(s);

  double factor = 1.0;
  std::string_view head = s.substr(0, pi_pos);
  if (!head.empty() && head.back() == '*') head.remove_suffix(1);
  head = trim(head);
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty() && head != "+") {
    factor = parse_plain_double(head);
  }
  std::string_view tail = trim(s.substr(pi_pos + 2));
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw Error(ErrorKind::Parse, "bad angle expression: '" + std::string(s) + "'");
    divisor = parse_plain_double(tail.substr(1));
  }
  return factor * std::numbers::pi / divisor;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline std::vector<double> parse_doubles(std::string_view s) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (auto piece : split(s, ',')) out.push_back(parse_double(piece));
  return out;
}

}  // namespace canonical_tf::detail
