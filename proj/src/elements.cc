// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/elements.hpp"

#include <cmath>
#include <string>

#include "dohertynet/error.hpp"

namespace dohertynet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite, got " + std::to_string(v));
  }
}

void require_q(double q, const char* what) {
  if (!(q > 0.0)) throw InvalidArgument(std::string(what) + " must be > 0 (or infinite)");
}

void require_coupling(double k) {
  if (!std::isfinite(k) || !(k > 0.0 && k <= 1.0)) {
    throw InvalidArgument("coupling factor must satisfy 0 < k <= 1, got " + std::to_string(k));
  }
}

}  // namespace

complex inductor_impedance(double henries, Frequency f, const Losses& losses) {
  require_q(losses.q_l, "inductor Q");
  const double x = f.omega() * henries;
  return {x / losses.q_l, x};
}

complex capacitor_admittance(double farads, Frequency f, const Losses& losses) {
  require_q(losses.q_c, "capacitor Q");
  const double b = f.omega() * farads;
  return {b / losses.q_c, b};
}

void validate(const Element& e) {
  std::visit(overloaded{
                 [](const SeriesR& v) { require_positive(v.ohms, "series R"); },
                 [](const SeriesL& v) { require_positive(v.henries, "series L"); },
                 [](const SeriesC& v) { require_positive(v.farads, "series C"); },
                 [](const ShuntR& v) { require_positive(v.ohms, "shunt R"); },
                 [](const ShuntL& v) { require_positive(v.henries, "shunt L"); },
                 [](const ShuntC& v) { require_positive(v.farads, "shunt C"); },
                 [](const IdealTline& v) {
                   require_positive(v.z0, "line impedance");
                   require_positive(v.theta_deg, "electrical length");
                 },
                 [](const IdealTransformer& v) { require_positive(v.n, "turns ratio"); },
                 [](const CoupledInductors& v) {
                   require_positive(v.lp, "primary inductance");
                   require_positive(v.ls, "secondary inductance");
                   require_coupling(v.k);
                 },
             },
             e);
}

AbcdMatrix abcd(const Element& e, Frequency f, const Losses& losses) {
  validate(e);
  return std::visit(
      overloaded{
          [&](const SeriesR& v) { return series_element(v.ohms); },
          [&](const SeriesL& v) { return series_element(inductor_impedance(v.henries, f, losses)); },
          [&](const SeriesC& v) { return series_element(1.0 / capacitor_admittance(v.farads, f, losses)); },
          [&](const ShuntR& v) { return shunt_element(1.0 / v.ohms); },
          [&](const ShuntL& v) { return shunt_element(1.0 / inductor_impedance(v.henries, f, losses)); },
          [&](const ShuntC& v) { return shunt_element(capacitor_admittance(v.farads, f, losses)); },
          [&](const IdealTline& v) { return tline_abcd(v.z0, v.theta_deg, v.f0, f); },
          [&](const IdealTransformer& v) { return ideal_transformer_abcd(v.n); },
          [&](const CoupledInductors& v) { return coupled_inductor_abcd(v.lp, v.ls, v.k, f); },
      },
      e);
}

AbcdMatrix cascade_elements(std::span<const Element> chain, Frequency f, const Losses& losses) {
  AbcdMatrix out = AbcdMatrix::identity();
  for (const auto& e : chain) out = out * abcd(e, f, losses);
  return out;
}

AbcdMatrix tline_abcd(double z0, double theta_deg, Frequency f0, Frequency f) {
  require_positive(z0, "line impedance");
  if (!std::isfinite(theta_deg)) throw InvalidArgument("electrical length must be finite");
  const double theta = theta_deg * (f.hz() / f0.hz()) * kPi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, complex(0.0, z0 * s), complex(0.0, s / z0), c};
}

const char* to_string(QuarterWaveKind kind) {
  switch (kind) {
    case QuarterWaveKind::pi_clc: return "PI_CLC";
    case QuarterWaveKind::pi_lcl: return "PI_LCL";
    case QuarterWaveKind::tee_lcl: return "TEE_LCL";
  }
  return "?";
}

AbcdMatrix QuarterWaveEquiv::abcd(Frequency f, const Losses& losses) const {
  return cascade_elements(elements, f, losses);
}

QuarterWaveEquiv quarter_wave_equiv(QuarterWaveKind kind, double z0, Frequency f0) {
  require_positive(z0, "quarter-wave impedance");
  const double w0 = f0.omega();
  const double l = z0 / w0;
  const double c = 1.0 / (w0 * z0);
  std::array<Element, 3> el = [&]() -> std::array<Element, 3> {
    switch (kind) {
      case QuarterWaveKind::pi_clc: return {ShuntC{c}, SeriesL{l}, ShuntC{c}};
      case QuarterWaveKind::pi_lcl: return {ShuntL{l}, SeriesC{c}, ShuntL{l}};
      case QuarterWaveKind::tee_lcl: return {SeriesL{l}, ShuntC{c}, SeriesL{l}};
    }
    throw InvalidArgument("unknown quarter-wave kind");
  }();
  return {kind, z0, f0, l, c, el};
}

AbcdMatrix coupled_inductor_abcd(double lp, double ls, double k, Frequency f) {
  require_positive(lp, "primary inductance");
  require_positive(ls, "secondary inductance");
  require_coupling(k);
  const double w = f.omega();
  const double m = k * std::sqrt(lp * ls);
  return {lp / m, complex(0.0, w * (lp * ls - m * m) / m), 1.0 / complex(0.0, w * m), ls / m};
}

AbcdMatrix ideal_transformer_abcd(double n) {
  require_positive(n, "turns ratio");
  return {n, 0.0, 0.0, 1.0 / n};
}

TransformerModel TransformerModel::from_inductances(double lm, double lk, double n,
                                                    std::optional<double> series_cap) {
  TransformerModel t{lm, lk, n, std::sqrt(lm / (lm + lk)), series_cap};
  t.validate();
  return t;
}

void TransformerModel::validate() const {
  require_positive(lm, "magnetizing inductance");
  if (!std::isfinite(lk) || lk < 0.0) throw InvalidArgument("leakage inductance must be >= 0");
  require_positive(n, "turns ratio");
  require_coupling(k);
  if (series_cap) require_positive(*series_cap, "series capacitance");
}

AbcdMatrix transformer_two_port(const TransformerModel& model, Frequency f, const Losses& losses) {
  model.validate();
  AbcdMatrix m = AbcdMatrix::identity();
  if (model.lk > 0.0) m = m * series_element(inductor_impedance(model.lk, f, losses));
  if (model.series_cap) m = m * series_element(1.0 / capacitor_admittance(*model.series_cap, f, losses));
  m = m * shunt_element(1.0 / inductor_impedance(model.lm, f, losses));
  return m * ideal_transformer_abcd(1.0 / model.n);
}

}  // namespace dohertynet
