// SPDX-License-Identifier: Apache-2.0

#include "format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

namespace dohertynet::cli {

namespace {

constexpr std::array<std::pair<char, int>, 9> kPrefixes{{
    {'f', -15}, {'p', -12}, {'n', -9}, {'u', -6}, {'m', -3}, {'k', 3}, {'M', 6}, {'G', 9}, {'T', 12},
}};

bool strip_suffix(std::string_view& s, std::string_view suffix) {
  if (s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix) {
    s.remove_suffix(suffix.size());
    return true;
  }
  return false;
}

}  // namespace

std::optional<double> parse_si(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "Inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);

  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || !std::isfinite(v)) return std::nullopt;
  std::string_view rest(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr));

  // Unit first so "fF" reads as femto-farad and "F" alone as farad.
  if (!strip_suffix(rest, "Hz") && !strip_suffix(rest, "ohm") && rest.size() == 2) {
    if (rest.back() == 'F' || rest.back() == 'H') rest.remove_suffix(1);
  }
  if (rest == "F" || rest == "H") rest = {};
  if (rest.empty()) return v;
  if (rest.size() != 1) return std::nullopt;
  for (const auto& [c, e] : kPrefixes) {
    if (rest.front() != c) continue;
    // Re-read as "<mantissa>e<exp>" so "150f" rounds exactly like 150e-15.
    const std::string_view mantissa(text.data(), static_cast<std::size_t>(ptr - text.data()));
    if (mantissa.find_first_of("eE") != std::string_view::npos) return v * std::pow(10.0, e);
    const std::string scaled = std::string(mantissa) + 'e' + std::to_string(e);
    double out = 0.0;
    std::from_chars(scaled.data(), scaled.data() + scaled.size(), out);
    return out;
  }
  return std::nullopt;
}

std::string engineering(double value, std::string_view unit, int decimals) {
  char buf[96];
  if (value == 0.0 || !std::isfinite(value)) {
    std::snprintf(buf, sizeof buf, "%.*f %.*s", decimals, value, static_cast<int>(unit.size()), unit.data());
    return buf;
  }
  int e = static_cast<int>(std::floor(std::log10(std::fabs(value)) / 3.0)) * 3;
  e = std::clamp(e, -15, 12);
  double m = value / std::pow(10.0, e);
  // Rounding can push the mantissa to 1000.00.
  const double limit = 1000.0 - 0.5 * std::pow(10.0, -decimals);
  if (std::fabs(m) >= limit && e < 12) {
    e += 3;
    m = value / std::pow(10.0, e);
  }
  static constexpr const char* kNames[] = {"f", "p", "n", "u", "m", "", "k", "M", "G", "T"};
  const char* prefix = kNames[(e + 15) / 3];
  std::snprintf(buf, sizeof buf, "%.*f %s%.*s", decimals, m, prefix, static_cast<int>(unit.size()), unit.data());
  return buf;
}

std::string exact(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string fixed(double value, int decimals) {
  char buf[64];
  // Keep "-0.000" out of reports.
  if (std::fabs(value) < 0.5 * std::pow(10.0, -decimals)) value = 0.0;
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

}  // namespace dohertynet::cli
