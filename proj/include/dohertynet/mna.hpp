// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_MNA_HPP
#define DOHERTYNET_MNA_HPP

// Brute-force modified nodal analysis. Used only to cross-check networks
// that the rest of the library builds by cascading chain matrices.

#include <utility>
#include <variant>
#include <vector>

#include "dohertynet/twoport.hpp"

namespace dohertynet::mna {

struct Resistor {
  int a;
  int b;
  double ohms;
};

struct Inductor {
  int a;
  int b;
  double henries;
};

struct Capacitor {
  int a;
  int b;
  double farads;
};

// Two magnetically coupled windings, dots at `a1` and `a2`.
struct MutualPair {
  int a1;
  int b1;
  int a2;
  int b2;
  double l1;
  double l2;
  double k;
};

using Branch = std::variant<Resistor, Inductor, Capacitor, MutualPair>;

// (positive node, negative node)
using PortNodes = std::pair<int, int>;

// Node 0 is ground; other ids may be any positive integers.
struct Netlist {
  std::vector<Branch> branches;
  PortNodes port1{1, 0};
  PortNodes port2{2, 0};

  // Throws InvalidArgument when values are non-positive, a node id is
  // negative, or the branch graph does not touch both ports.
  void validate() const;
};

AbcdMatrix mna_oracle(const Netlist& netlist, Frequency f);

}  // namespace dohertynet::mna

#endif  // DOHERTYNET_MNA_HPP
