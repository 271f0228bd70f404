// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_CLI_CSV_HPP
#define DOHERTYNET_CLI_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

#include "dohertynet/twoport.hpp"

namespace dohertynet::cli {

inline constexpr std::string_view kSparamsHeader =
    "f_hz,s11_re,s11_im,s21_re,s21_im,s12_re,s12_im,s22_re,s22_im";

// Raw SI values, shortest round-trip formatting.
std::string sparams_to_csv(const SParams& sp);

// Reads the layout written above. Throws ParseError with line numbers.
SParams sparams_from_csv(std::string_view text, double z0ref);

bool looks_like_sparams_csv(std::string_view text);

// One CSV line from already formatted fields.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace dohertynet::cli

#endif  // DOHERTYNET_CLI_CSV_HPP
