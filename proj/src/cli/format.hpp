// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_CLI_FORMAT_HPP
#define DOHERTYNET_CLI_FORMAT_HPP

#include <optional>
#include <string>
#include <string_view>

namespace dohertynet::cli {

// "150f", "24G", "24GHz", "331.6pH", "50", "1e-12", "inf". Prefixes are
// case-sensitive (m = milli, M = mega); an optional trailing Hz/F/H/ohm unit
// is ignored.
std::optional<double> parse_si(std::string_view text);

// "331.57 pH": mantissa in [1, 1000) with `decimals` places.
std::string engineering(double value, std::string_view unit, int decimals = 2);

// Shortest text that reads back to the same double.
std::string exact(double value);

std::string fixed(double value, int decimals);

}  // namespace dohertynet::cli

#endif  // DOHERTYNET_CLI_FORMAT_HPP
