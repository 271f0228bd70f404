// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_TOUCHSTONE_HPP
#define DOHERTYNET_TOUCHSTONE_HPP

// Touchstone v1 two-port (.s2p) reader and writer.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dohertynet/twoport.hpp"

namespace dohertynet::touchstone {

enum class FreqUnit { hz, khz, mhz, ghz };
enum class DataFormat { ri, ma, db };

const char* to_string(FreqUnit u) noexcept;
const char* to_string(DataFormat f) noexcept;
double scale(FreqUnit u) noexcept;  // hertz per unit
// Case-insensitive; nullopt on anything else.
std::optional<FreqUnit> parse_unit(std::string_view s);
std::optional<DataFormat> parse_format(std::string_view s);

struct Row {
  double freq;                  // in the file's unit
  std::array<double, 8> values;  // S11 S21 S12 S22, each as the format's pair
  friend bool operator==(const Row&, const Row&) = default;
};

struct File {
  FreqUnit freq_unit = FreqUnit::ghz;
  DataFormat format = DataFormat::ma;
  double r_ref = 50.0;
  std::vector<std::string> comments;  // text after '!', full-line comments only
  std::vector<Row> rows;
};

inline constexpr std::size_t kMaxLineLength = 4096;

// Throws ParseError (with a 1-based line number) on malformed input and
// UnsupportedError for Y/Z/H/G data or v2 keywords.
File parse(std::string_view text);

// Throws InvalidArgument if the file breaks its invariants.
std::string serialize(const File& file);

SParams to_sparams(const File& file);
// Requires equal port references. Magnitudes of exactly zero are written as
// kDbFloor in DB format.
File from_sparams(const SParams& sp, DataFormat format = DataFormat::ri, FreqUnit unit = FreqUnit::ghz);

inline constexpr double kDbFloor = -400.0;

}  // namespace dohertynet::touchstone

#endif  // DOHERTYNET_TOUCHSTONE_HPP
