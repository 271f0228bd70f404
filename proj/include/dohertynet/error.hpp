// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_ERROR_HPP
#define DOHERTYNET_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dohertynet {

// Base for every error the library raises on purpose. Anything else escaping
// a public function is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A conversion or termination whose denominator vanished (|den| < 1e-15).
class SingularError : public Error {
 public:
  using Error::Error;
};

// Nodal system or port-state matrix without a unique solution.
class DegenerateNetwork : public Error {
 public:
  using Error::Error;
};

// Device parasitic larger than the shunt capacitor meant to absorb it.
class AbsorptionInfeasible : public Error {
 public:
  AbsorptionInfeasible(const std::string& what, double max_absorbable)
      : Error(what), max_absorbable_(max_absorbable) {}
  double max_absorbable() const noexcept { return max_absorbable_; }

 private:
  double max_absorbable_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace dohertynet

#endif  // DOHERTYNET_ERROR_HPP
