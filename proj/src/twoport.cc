// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/twoport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dohertynet/error.hpp"

namespace dohertynet {

namespace {

bool finite(complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <typename Points>
void require_increasing(const Points& points, const char* what) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1].f < points[i].f)) {
      throw InvalidArgument(std::string(what) + ": frequencies must be strictly increasing (index " +
                            std::to_string(i) + ")");
    }
  }
}

void require_reference(double z0, const char* what) {
  if (!(z0 > 0.0) || !std::isfinite(z0)) {
    throw InvalidArgument(std::string(what) + ": reference impedance must be positive");
  }
}

}  // namespace

Frequency::Frequency(double hz) : hz_(hz) {
  if (!std::isfinite(hz) || !(hz > 0.0)) {
    throw InvalidArgument("frequency must be positive and finite, got " + std::to_string(hz));
  }
}

bool AbcdMatrix::is_finite() const { return finite(a) && finite(b) && finite(c) && finite(d); }

AbcdMatrix operator*(const AbcdMatrix& l, const AbcdMatrix& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
          l.c * r.b + l.d * r.d};
}

AbcdMatrix series_element(complex z) {
  if (!finite(z)) throw InvalidArgument("series_element: impedance must be finite");
  return {1.0, z, 0.0, 1.0};
}

AbcdMatrix shunt_element(complex y) {
  if (!finite(y)) throw InvalidArgument("shunt_element: admittance must be finite");
  return {1.0, 0.0, y, 1.0};
}

AbcdMatrix cascade(const AbcdMatrix& left, const AbcdMatrix& right) {
  if (!left.is_finite() || !right.is_finite()) {
    throw InvalidArgument("cascade: matrices must be finite");
  }
  return left * right;
}

AbcdMatrix cascade(std::span<const AbcdMatrix> chain) {
  AbcdMatrix out = AbcdMatrix::identity();
  for (const auto& m : chain) out = cascade(out, m);
  return out;
}

complex input_impedance(const AbcdMatrix& net, complex zload) {
  const complex den = net.c * zload + net.d;
  if (std::abs(den) < kSingularThreshold) {
    throw SingularError("input_impedance: singular termination (c*zload + d = 0)");
  }
  return (net.a * zload + net.b) / den;
}

double relative_difference(const AbcdMatrix& value, const AbcdMatrix& reference, double z_scale) {
  const complex dv[4] = {value.a - reference.a, (value.b - reference.b) / z_scale,
                         (value.c - reference.c) * z_scale, value.d - reference.d};
  const complex rv[4] = {reference.a, reference.b / z_scale, reference.c * z_scale, reference.d};
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < 4; ++i) {
    num = std::max(num, std::abs(dv[i]));
    den = std::max(den, std::abs(rv[i]));
  }
  return den > 0.0 ? num / den : num;
}

SMatrix to_smatrix(const AbcdMatrix& m, double z01, double z02) {
  require_reference(z01, "to_smatrix");
  require_reference(z02, "to_smatrix");
  const double root = std::sqrt(z01 * z02);
  const complex den = m.a * z02 + m.b + m.c * z01 * z02 + m.d * z01;
  // Normalized so a single 50-ohm reference reduces to a + b/z0 + c*z0 + d.
  if (std::abs(den) / root < kSingularThreshold) {
    throw SingularError("to_smatrix: singular conversion denominator");
  }
  SMatrix s;
  s.s11 = (m.a * z02 + m.b - m.c * z01 * z02 - m.d * z01) / den;
  s.s12 = 2.0 * root * m.det() / den;
  s.s21 = 2.0 * root / den;
  s.s22 = (-m.a * z02 + m.b - m.c * z01 * z02 + m.d * z01) / den;
  return s;
}

AbcdMatrix from_smatrix(const SMatrix& s, double z01, double z02) {
  require_reference(z01, "from_smatrix");
  require_reference(z02, "from_smatrix");
  if (std::abs(s.s21) < kSingularThreshold) {
    throw SingularError("from_smatrix: S21 vanishes, chain matrix undefined");
  }
  const double root = std::sqrt(z01 * z02);
  const complex den = 2.0 * s.s21;
  const complex cross = s.s12 * s.s21;
  AbcdMatrix m;
  m.a = ((1.0 + s.s11) * (1.0 - s.s22) + cross) / den * std::sqrt(z01 / z02);
  m.b = ((1.0 + s.s11) * (1.0 + s.s22) - cross) / den * root;
  m.c = ((1.0 - s.s11) * (1.0 - s.s22) - cross) / den / root;
  m.d = ((1.0 - s.s11) * (1.0 + s.s22) + cross) / den * std::sqrt(z02 / z01);
  return m;
}

TwoPortSpectrum::TwoPortSpectrum(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("TwoPortSpectrum: needs at least one point");
  require_increasing(points_, "TwoPortSpectrum");
  for (const auto& p : points_) {
    if (!p.m.is_finite()) throw InvalidArgument("TwoPortSpectrum: non-finite matrix entry");
  }
}

SParams::SParams(std::vector<Point> points, double z0ref) : SParams(std::move(points), z0ref, z0ref) {}

SParams::SParams(std::vector<Point> points, double z0ref, double z0ref_port2)
    : points_(std::move(points)), z0ref_(z0ref), z0ref_port2_(z0ref_port2) {
  require_reference(z0ref_, "SParams");
  require_reference(z0ref_port2_, "SParams");
  require_increasing(points_, "SParams");
}

SParams to_sparams(const TwoPortSpectrum& net, double z0ref) { return to_sparams(net, z0ref, z0ref); }

SParams to_sparams(const TwoPortSpectrum& net, double z0ref, double z0ref_port2) {
  std::vector<SParams::Point> out;
  out.reserve(net.size());
  for (const auto& p : net) out.push_back({p.f, to_smatrix(p.m, z0ref, z0ref_port2)});
  return SParams(std::move(out), z0ref, z0ref_port2);
}

TwoPortSpectrum from_sparams(const SParams& sp) {
  std::vector<TwoPortSpectrum::Point> out;
  out.reserve(sp.size());
  for (const auto& p : sp) out.push_back({p.f, from_smatrix(p.s, sp.z0ref(), sp.z0ref_port2())});
  return TwoPortSpectrum(std::move(out));
}

}  // namespace dohertynet
