// SPDX-License-Identifier: Apache-2.0

// Reference computations for the tests. Nothing here calls into the library
// under test: matrices, nodal solves and closed forms are written out again
// from first principles so the tests compare two independent derivations.

#ifndef DOHERTYNET_TESTS_ORACLES_HPP
#define DOHERTYNET_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cx = std::complex<double>;
constexpr double pi = 3.14159265358979323846;
constexpr cx j{0.0, 1.0};

// Row-major 2x2 chain matrix.
struct M2 {
  cx a, b, c, d;
};

inline M2 mul(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline M2 series(cx z) { return {1.0, z, 0.0, 1.0}; }
inline M2 shunt(cx y) { return {1.0, 0.0, y, 1.0}; }

// Quarter-wave inverter with sign +1 ([[0, jZ], [j/Z, 0]]) or -1.
inline M2 inverter(double z0, int sign) { const double s = sign; return {0.0, s * j * z0, s * j / z0, 0.0}; }

inline M2 line(double z0, double theta_rad) {
  return {std::cos(theta_rad), j * z0 * std::sin(theta_rad), j * std::sin(theta_rad) / z0, std::cos(theta_rad)};
}

inline double omega(double hz) { return 2.0 * pi * hz; }

// Largest balanced-entry deviation over the largest balanced reference entry.
template <class A, class B>
double rel_err(const A& got, const B& ref, double zs = 50.0) {
  const cx g[4] = {got.a, got.b / zs, got.c * zs, got.d};
  const cx r[4] = {ref.a, ref.b / zs, ref.c * zs, ref.d};
  double num = 0.0, den = 0.0;
  for (int k = 0; k < 4; ++k) {
    num = std::max(num, std::abs(g[k] - r[k]));
    den = std::max(den, std::abs(r[k]));
  }
  return num / den;
}

// Closed-form S-parameters of a series impedance between equal references.
struct S2 {
  cx s11, s21;
};
inline S2 series_z_sparams(cx z, double z0) { return {z / (z + 2.0 * z0), 2.0 * z0 / (z + 2.0 * z0)}; }

// Plain nodal analysis with admittance stamps and current injections;
// node 0 is ground and is eliminated.
class Nodal {
 public:
  explicit Nodal(int nodes) : y_(Eigen::MatrixXcd::Zero(nodes, nodes)), i_(Eigen::VectorXcd::Zero(nodes)) {}

  void admittance(int a, int b, cx y) {
    if (a > 0) y_(a - 1, a - 1) += y;
    if (b > 0) y_(b - 1, b - 1) += y;
    if (a > 0 && b > 0) {
      y_(a - 1, b - 1) -= y;
      y_(b - 1, a - 1) -= y;
    }
  }
  void impedance(int a, int b, cx z) { admittance(a, b, 1.0 / z); }
  void inject(int node, cx current) { i_(node - 1) += current; }

  // Voltage of every node; index 0 is ground.
  std::vector<cx> solve() const {
    const Eigen::VectorXcd v = y_.fullPivLu().solve(i_);
    std::vector<cx> out(static_cast<std::size_t>(v.size()) + 1, 0.0);
    for (Eigen::Index k = 0; k < v.size(); ++k) out[static_cast<std::size_t>(k) + 1] = v[k];
    return out;
  }

 private:
  Eigen::MatrixXcd y_;
  Eigen::VectorXcd i_;
};

// One-pole low-pass magnitude: |S21|^2 = 1 / (1 + (f/fc)^2).
inline double one_pole_mag(double f, double fc) { return 1.0 / std::sqrt(1.0 + (f / fc) * (f / fc)); }

// Ideal Doherty efficiency written from the v-domain shape: a single class-B
// device up to half swing, then the two-device expression.
inline double doherty_eta(double v, double peak) {
  if (v <= 0.5) return peak * 2.0 * v;
  return peak * 2.0 * v * v / (3.0 * v - 1.0);
}

inline std::mt19937_64 rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double log_uniform(std::mt19937_64& g, double lo, double hi) {
  return std::exp(uniform(g, std::log(lo), std::log(hi)));
}

}  // namespace oracle

#endif  // DOHERTYNET_TESTS_ORACLES_HPP
