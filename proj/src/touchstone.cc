// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/touchstone.hpp"

#include <charconv>
#include <cmath>
#include <strings.h>

#include "dohertynet/error.hpp"

namespace dohertynet::touchstone {

namespace {

constexpr int kSignificantDigits = 12;
constexpr double kDegPerRad = 180.0 / kPi;

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && strncasecmp(a.data(), b.data(), a.size()) == 0;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> to_number(std::string_view tok) {
  if (tok.size() > 1 && tok[0] == '+' && tok[1] != '-' && tok[1] != '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

void parse_options(std::string_view body, std::size_t line, File& f) {
  const auto toks = split(body);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string_view t = toks[i];
    if (auto u = parse_unit(t)) {
      f.freq_unit = *u;
    } else if (auto fmt = parse_format(t)) {
      f.format = *fmt;
    } else if (iequals(t, "S")) {
      // the only supported parameter type
    } else if (iequals(t, "Y") || iequals(t, "Z") || iequals(t, "H") || iequals(t, "G")) {
      throw UnsupportedError(line, "parameter type '" + std::string(t) + "' is not supported (S only)");
    } else if (iequals(t, "R")) {
      if (i + 1 >= toks.size()) throw ParseError(line, "option 'R' needs a reference resistance");
      const auto r = to_number(toks[++i]);
      if (!r || !(*r > 0.0)) throw ParseError(line, "reference resistance must be a positive number");
      f.r_ref = *r;
    } else {
      throw ParseError(line, "unknown option token '" + std::string(t.substr(0, 32)) + "'");
    }
  }
}

void append_number(std::string& out, double v, bool shortest) {
  char buf[64];
  const auto res = shortest ? std::to_chars(buf, buf + sizeof buf, v)
                            : std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
  out.append(buf, res.ptr);
}

void check_file(const File& f) {
  if (!(f.r_ref > 0.0) || !std::isfinite(f.r_ref)) throw InvalidArgument("touchstone: r_ref must be positive");
  for (const auto& c : f.comments) {
    if (c.find_first_of("\r\n") != std::string::npos) throw InvalidArgument("touchstone: comment contains a newline");
  }
  for (std::size_t k = 0; k < f.rows.size(); ++k) {
    const Row& r = f.rows[k];
    if (!(r.freq > 0.0) || !std::isfinite(r.freq)) throw InvalidArgument("touchstone: frequencies must be positive");
    if (k > 0 && !(r.freq > f.rows[k - 1].freq)) {
      throw InvalidArgument("touchstone: frequencies must be strictly increasing");
    }
    for (double v : r.values) {
      if (!std::isfinite(v)) throw InvalidArgument("touchstone: non-finite value");
    }
  }
}

complex decode(DataFormat fmt, double x, double y) {
  switch (fmt) {
    case DataFormat::ri: return {x, y};
    case DataFormat::ma: return std::polar(x, y / kDegPerRad);
    case DataFormat::db: return std::polar(std::pow(10.0, x / 20.0), y / kDegPerRad);
  }
  return {};
}

std::pair<double, double> encode(DataFormat fmt, complex s) {
  switch (fmt) {
    case DataFormat::ri: return {s.real(), s.imag()};
    case DataFormat::ma: return {std::abs(s), std::arg(s) * kDegPerRad};
    case DataFormat::db: {
      const double mag = std::abs(s);
      return {mag > 0.0 ? std::max(20.0 * std::log10(mag), kDbFloor) : kDbFloor, std::arg(s) * kDegPerRad};
    }
  }
  return {};
}

}  // namespace

const char* to_string(FreqUnit u) noexcept {
  switch (u) {
    case FreqUnit::hz: return "Hz";
    case FreqUnit::khz: return "kHz";
    case FreqUnit::mhz: return "MHz";
    case FreqUnit::ghz: return "GHz";
  }
  return "?";
}

const char* to_string(DataFormat f) noexcept {
  switch (f) {
    case DataFormat::ri: return "RI";
    case DataFormat::ma: return "MA";
    case DataFormat::db: return "DB";
  }
  return "?";
}

double scale(FreqUnit u) noexcept {
  switch (u) {
    case FreqUnit::hz: return 1.0;
    case FreqUnit::khz: return 1e3;
    case FreqUnit::mhz: return 1e6;
    case FreqUnit::ghz: return 1e9;
  }
  return 1.0;
}

std::optional<FreqUnit> parse_unit(std::string_view s) {
  for (FreqUnit u : {FreqUnit::hz, FreqUnit::khz, FreqUnit::mhz, FreqUnit::ghz}) {
    if (iequals(s, to_string(u))) return u;
  }
  return std::nullopt;
}

std::optional<DataFormat> parse_format(std::string_view s) {
  for (DataFormat f : {DataFormat::ri, DataFormat::ma, DataFormat::db}) {
    if (iequals(s, to_string(f))) return f;
  }
  return std::nullopt;
}

File parse(std::string_view text) {
  File f;
  std::optional<std::size_t> option_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.size() > kMaxLineLength) throw ParseError(line_no, "line longer than 4096 characters");

    const std::size_t bang = line.find('!');
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first < line.size() && line[first] == '!') {
      f.comments.emplace_back(line.substr(first + 1));
      continue;
    }
    const std::string_view body = line.substr(0, bang);  // drops trailing comments
    const auto toks = split(body);
    if (toks.empty()) continue;

    if (toks[0][0] == '[') throw UnsupportedError(line_no, "Touchstone v2 keyword; v2 unsupported");
    if (toks[0][0] == '#') {
      if (option_line) {
        throw ParseError(line_no, "duplicate option line (first on line " + std::to_string(*option_line) + ")");
      }
      if (!f.rows.empty()) throw ParseError(line_no, "option line after data");
      option_line = line_no;
      parse_options(body.substr(body.find('#') + 1), line_no, f);
      continue;
    }

    if (!option_line) throw ParseError(line_no, "missing option line before data");
    if (toks.size() != 9) {
      throw ParseError(line_no, "expected 9 columns for a two-port row, got " + std::to_string(toks.size()));
    }
    Row row{};
    for (std::size_t k = 0; k < 9; ++k) {
      const auto v = to_number(toks[k]);
      if (!v) throw ParseError(line_no, "column " + std::to_string(k + 1) + " is not a finite number");
      if (k == 0) {
        row.freq = *v;
      } else {
        row.values[k - 1] = *v;
      }
    }
    if (!(row.freq > 0.0)) throw ParseError(line_no, "frequency must be positive");
    if (!std::isfinite(row.freq * scale(f.freq_unit))) throw ParseError(line_no, "frequency out of range");
    if (!f.rows.empty() && !(row.freq > f.rows.back().freq)) throw ParseError(line_no, "frequency not increasing");
    f.rows.push_back(row);
  }
  if (!option_line) throw ParseError(line_no == 0 ? 1 : line_no, "missing option line");
  return f;
}

std::string serialize(const File& file) {
  check_file(file);
  std::string out;
  for (const auto& c : file.comments) {
    out += '!';
    out += c;
    out += '\n';
  }
  out += "# ";
  out += to_string(file.freq_unit);
  out += " S ";
  out += to_string(file.format);
  out += " R ";
  append_number(out, file.r_ref, true);
  out += '\n';
  for (const Row& r : file.rows) {
    append_number(out, r.freq, true);
    for (double v : r.values) {
      out += ' ';
      append_number(out, v, false);
    }
    out += '\n';
  }
  return out;
}

SParams to_sparams(const File& file) {
  check_file(file);
  const double s = scale(file.freq_unit);
  std::vector<SParams::Point> pts;
  pts.reserve(file.rows.size());
  for (const Row& r : file.rows) {
    const auto& v = r.values;
    SMatrix m;
    m.s11 = decode(file.format, v[0], v[1]);
    m.s21 = decode(file.format, v[2], v[3]);
    m.s12 = decode(file.format, v[4], v[5]);
    m.s22 = decode(file.format, v[6], v[7]);
    pts.push_back({Frequency(r.freq * s), m});
  }
  return SParams(std::move(pts), file.r_ref);
}

File from_sparams(const SParams& sp, DataFormat format, FreqUnit unit) {
  if (sp.z0ref() != sp.z0ref_port2()) {
    throw InvalidArgument("touchstone: v1 files need one reference impedance for both ports");
  }
  File f;
  f.freq_unit = unit;
  f.format = format;
  f.r_ref = sp.z0ref();
  const double s = scale(unit);
  for (const auto& p : sp) {
    Row r{};
    r.freq = p.f.hz() / s;
    const complex order[4] = {p.s.s11, p.s.s21, p.s.s12, p.s.s22};
    for (std::size_t k = 0; k < 4; ++k) {
      const auto [x, y] = encode(format, order[k]);
      r.values[2 * k] = x;
      r.values[2 * k + 1] = y;
    }
    f.rows.push_back(r);
  }
  return f;
}

}  // namespace dohertynet::touchstone
