// SPDX-License-Identifier: Apache-2.0

#include "csv.hpp"

#include <charconv>
#include <cmath>

#include "dohertynet/error.hpp"
#include "format.hpp"

namespace dohertynet::cli {

namespace {

std::string_view next_line(std::string_view text, std::size_t& pos) {
  const std::size_t eol = text.find('\n', pos);
  std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
  pos = eol == std::string_view::npos ? text.size() : eol + 1;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

std::string sparams_to_csv(const SParams& sp) {
  std::string out(kSparamsHeader);
  out += '\n';
  for (const auto& p : sp) {
    const complex s[4] = {p.s.s11, p.s.s21, p.s.s12, p.s.s22};
    std::vector<std::string> row{exact(p.f.hz())};
    for (const complex& v : s) {
      row.push_back(exact(v.real()));
      row.push_back(exact(v.imag()));
    }
    out += csv_line(row);
  }
  return out;
}

bool looks_like_sparams_csv(std::string_view text) {
  std::size_t pos = 0;
  return next_line(text, pos) == kSparamsHeader;
}

SParams sparams_from_csv(std::string_view text, double z0ref) {
  std::size_t pos = 0;
  std::size_t line_no = 1;
  if (next_line(text, pos) != kSparamsHeader) throw ParseError(1, "expected header '" + std::string(kSparamsHeader) + "'");
  std::vector<SParams::Point> pts;
  while (pos < text.size()) {
    const std::string_view line = next_line(text, pos);
    ++line_no;
    if (line.empty()) continue;
    double v[9];
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view tok = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      if (field >= 9) throw ParseError(line_no, "too many fields");
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v[field]);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v[field])) {
        throw ParseError(line_no, "field " + std::to_string(field + 1) + " is not a finite number");
      }
      ++field;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (field != 9) throw ParseError(line_no, "expected 9 fields, got " + std::to_string(field));
    if (!(v[0] > 0.0)) throw ParseError(line_no, "frequency must be positive");
    if (!pts.empty() && !(v[0] > pts.back().f.hz())) throw ParseError(line_no, "frequency not increasing");
    pts.push_back({Frequency(v[0]), {{v[1], v[2]}, {v[5], v[6]}, {v[3], v[4]}, {v[7], v[8]}}});
  }
  return SParams(std::move(pts), z0ref);
}

}  // namespace dohertynet::cli
