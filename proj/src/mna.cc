// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/mna.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "dohertynet/error.hpp"

namespace dohertynet::mna {

namespace {

constexpr double kPortTermination = 50.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

class DisjointSet {
 public:
  int find(int x) {
    auto [it, inserted] = parent_.try_emplace(x, x);
    if (it->second == x) return x;
    const int root = find(it->second);
    parent_[x] = root;
    return root;
  }
  void join(int x, int y) { parent_[find(x)] = find(y); }
  const std::map<int, int>& members() const { return parent_; }

 private:
  std::map<int, int> parent_;
};

}  // namespace

void Netlist::validate() const {
  if (branches.empty()) throw InvalidArgument("netlist: no branches");
  DisjointSet sets;
  auto node = [](int id) {
    if (id < 0) throw InvalidArgument("netlist: negative node id " + std::to_string(id));
    return id;
  };
  for (const auto& br : branches) {
    std::visit(overloaded{
                   [&](const Resistor& r) {
                     if (!positive(r.ohms)) throw InvalidArgument("netlist: resistor value must be > 0");
                     sets.join(node(r.a), node(r.b));
                   },
                   [&](const Inductor& l) {
                     if (!positive(l.henries)) throw InvalidArgument("netlist: inductor value must be > 0");
                     sets.join(node(l.a), node(l.b));
                   },
                   [&](const Capacitor& c) {
                     if (!positive(c.farads)) throw InvalidArgument("netlist: capacitor value must be > 0");
                     sets.join(node(c.a), node(c.b));
                   },
                   [&](const MutualPair& m) {
                     if (!positive(m.l1) || !positive(m.l2)) {
                       throw InvalidArgument("netlist: winding inductance must be > 0");
                     }
                     if (!(m.k > 0.0 && m.k <= 1.0)) throw InvalidArgument("netlist: coupling must be in (0, 1]");
                     sets.join(node(m.a1), node(m.b1));
                     sets.join(node(m.a2), node(m.b2));
                     sets.join(m.a1, m.a2);
                   },
               },
               br);
  }
  for (int p : {port1.first, port1.second, port2.first, port2.second}) {
    node(p);
    if (p != 0 && !sets.members().contains(p)) {
      throw InvalidArgument("netlist: port node " + std::to_string(p) + " touches no branch");
    }
  }
  if (port1.first == port1.second || port2.first == port2.second) {
    throw InvalidArgument("netlist: port terminals must differ");
  }
  // The port terminations close the loop between each port's terminals.
  sets.join(port1.first, port1.second);
  sets.join(port2.first, port2.second);
  const int root = sets.find(port1.first);
  for (int p : {port1.second, port2.first, port2.second}) {
    if (sets.find(p) != root) throw InvalidArgument("netlist: ports are not connected through the network");
  }
  for (const auto& [id, _] : sets.members()) {
    if (sets.find(id) != root) {
      throw InvalidArgument("netlist: node " + std::to_string(id) + " is disconnected from the ports");
    }
  }
}

AbcdMatrix mna_oracle(const Netlist& netlist, Frequency f) {
  netlist.validate();
  const double w = f.omega();
  const complex jw(0.0, w);

  std::map<int, int> index;  // node id -> row, ground excluded
  auto add_node = [&](int id) {
    if (id != 0 && !index.contains(id)) index.emplace(id, static_cast<int>(index.size()));
  };
  int current_vars = 0;
  for (const auto& br : netlist.branches) {
    std::visit(overloaded{
                   [&](const Resistor& r) { add_node(r.a), add_node(r.b); },
                   [&](const Inductor& l) { add_node(l.a), add_node(l.b), ++current_vars; },
                   [&](const Capacitor& c) { add_node(c.a), add_node(c.b); },
                   [&](const MutualPair& m) {
                     add_node(m.a1), add_node(m.b1), add_node(m.a2), add_node(m.b2);
                     current_vars += 2;
                   },
               },
               br);
  }
  for (int p : {netlist.port1.first, netlist.port1.second, netlist.port2.first, netlist.port2.second}) {
    add_node(p);
  }

  const int n_nodes = static_cast<int>(index.size());
  const int n = n_nodes + current_vars;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
  auto row = [&](int id) { return id == 0 ? -1 : index.at(id); };

  auto stamp_admittance = [&](int a, int b, complex y) {
    const int ra = row(a);
    const int rb = row(b);
    if (ra >= 0) g(ra, ra) += y;
    if (rb >= 0) g(rb, rb) += y;
    if (ra >= 0 && rb >= 0) {
      g(ra, rb) -= y;
      g(rb, ra) -= y;
    }
  };
  // Branch current variable k flows a -> b; returns nothing, fills KCL and
  // the voltage side of the branch equation.
  auto stamp_current = [&](int a, int b, int k) {
    const int ra = row(a);
    const int rb = row(b);
    if (ra >= 0) {
      g(ra, k) += 1.0;
      g(k, ra) += 1.0;
    }
    if (rb >= 0) {
      g(rb, k) -= 1.0;
      g(k, rb) -= 1.0;
    }
  };

  int next_current = n_nodes;
  for (const auto& br : netlist.branches) {
    std::visit(overloaded{
                   [&](const Resistor& r) { stamp_admittance(r.a, r.b, 1.0 / r.ohms); },
                   [&](const Capacitor& c) { stamp_admittance(c.a, c.b, jw * c.farads); },
                   [&](const Inductor& l) {
                     const int k = next_current++;
                     stamp_current(l.a, l.b, k);
                     g(k, k) -= jw * l.henries;
                   },
                   [&](const MutualPair& m) {
                     const int k1 = next_current++;
                     const int k2 = next_current++;
                     const double mutual = m.k * std::sqrt(m.l1 * m.l2);
                     stamp_current(m.a1, m.b1, k1);
                     stamp_current(m.a2, m.b2, k2);
                     g(k1, k1) -= jw * m.l1;
                     g(k1, k2) -= jw * mutual;
                     g(k2, k1) -= jw * mutual;
                     g(k2, k2) -= jw * m.l2;
                   },
               },
               br);
  }

  const auto [p1, n1] = netlist.port1;
  const auto [p2, n2] = netlist.port2;
  stamp_admittance(p1, n1, 1.0 / kPortTermination);
  stamp_admittance(p2, n2, 1.0 / kPortTermination);

  // Two Norton excitations: unit current into port 1, then into port 2.
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(n, 2);
  auto inject = [&](int pos, int neg, int col) {
    if (row(pos) >= 0) rhs(row(pos), col) += 1.0;
    if (row(neg) >= 0) rhs(row(neg), col) -= 1.0;
  };
  inject(p1, n1, 0);
  inject(p2, n2, 1);

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(g);
  if (lu.rank() < n) throw DegenerateNetwork("mna_oracle: singular nodal matrix");
  const Eigen::MatrixXcd x = lu.solve(rhs);

  auto voltage = [&](int pos, int neg, int col) {
    const complex vp = row(pos) >= 0 ? x(row(pos), col) : complex(0.0);
    const complex vn = row(neg) >= 0 ? x(row(neg), col) : complex(0.0);
    return vp - vn;
  };

  Eigen::Matrix2cd top;
  Eigen::Matrix2cd bottom;
  for (int col = 0; col < 2; ++col) {
    const double j1 = col == 0 ? 1.0 : 0.0;
    const double j2 = col == 1 ? 1.0 : 0.0;
    const complex v1 = voltage(p1, n1, col);
    const complex v2 = voltage(p2, n2, col);
    top(0, col) = v1;
    top(1, col) = j1 - v1 / kPortTermination;
    bottom(0, col) = v2;
    bottom(1, col) = v2 / kPortTermination - j2;
  }
  const complex det = bottom.determinant();
  if (std::abs(det) < kSingularThreshold * std::max(1.0, bottom.cwiseAbs().maxCoeff())) {
    throw DegenerateNetwork("mna_oracle: port states are linearly dependent");
  }
  const Eigen::Matrix2cd abcd = top * bottom.inverse();
  return {abcd(0, 0), abcd(0, 1), abcd(1, 0), abcd(1, 1)};
}

}  // namespace dohertynet::mna
