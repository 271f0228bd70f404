// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/doherty_synth.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "dohertynet/error.hpp"

namespace dohertynet {

namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidArgument(std::string("design spec: ") + what + " must be positive, got " + std::to_string(v));
  }
}

std::string femto(double farads) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f fF", farads * 1e15);
  return buf;
}

// Line 2 is inverting (PI L-C-L gives -j), i.e. 270 degrees as an ideal line.
constexpr double kLineSecondLengthDeg = 270.0;

}  // namespace

double DohertyDesignSpec::inverter_impedance() const {
  return z_inv ? *z_inv : 0.5 * std::sqrt(z_opt * z_ant);
}

double DohertyDesignSpec::transformer_ratio() const {
  return turns_ratio ? *turns_ratio : std::sqrt(z_ant / z_opt);
}

void DohertyDesignSpec::validate() const {
  require_positive(z_opt, "z_opt");
  require_positive(z_ant, "z_ant");
  require_positive(pbo_db, "pbo_db");
  require_positive(z_line1, "z_line1");
  require_positive(z_line2, "z_line2");
  if (z_inv) require_positive(*z_inv, "z_inv");
  if (turns_ratio) require_positive(*turns_ratio, "turns ratio");
  if (!std::isfinite(c_out_main) || c_out_main < 0.0) throw InvalidArgument("design spec: c_out_main must be >= 0");
  if (!std::isfinite(c_out_aux) || c_out_aux < 0.0) throw InvalidArgument("design spec: c_out_aux must be >= 0");
  if (!(neutralization_tolerance >= 0.0)) throw InvalidArgument("design spec: tolerance must be >= 0");
}

double SynthesizedNetwork::capacitance_before_absorption() const {
  return line1.c + line1.c + line2.c + inverter.c;
}

double SynthesizedNetwork::remaining_network_capacitance() const {
  return remaining_device_shunt_c + line1.c + line2.c + inverter.c;
}

AbcdMatrix SynthesizedNetwork::main_branch(Frequency f, Realization r, const Losses& losses) const {
  const double n = transformer.n;
  if (r == Realization::ideal_lines) {
    return tline_abcd(line1.z0, 90.0, spec.f0, f) * tline_abcd(line2.z0, kLineSecondLengthDeg, spec.f0, f) *
           ideal_transformer_abcd(1.0 / n);
  }
  // Device capacitance and the remaining network capacitor are one shunt C.
  return shunt_element(capacitor_admittance(line1.c, f, losses)) * transformer_two_port(transformer, f, losses);
}

AbcdMatrix SynthesizedNetwork::aux_branch(Frequency f, Realization r, const Losses& losses) const {
  if (r == Realization::ideal_lines) return tline_abcd(inverter.z0, 90.0, spec.f0, f);
  AbcdMatrix m = AbcdMatrix::identity();
  if (aux_resonating_l) {
    const complex y = capacitor_admittance(spec.c_out_aux, f, losses) +
                      1.0 / inductor_impedance(*aux_resonating_l, f, losses);
    m = shunt_element(y);
  }
  return m * inverter.abcd(f, losses);
}

complex SynthesizedNetwork::aux_port_impedance(Frequency f, Realization r, const Losses& losses) const {
  const AbcdMatrix m = aux_branch(f, r, losses);
  if (std::abs(m.c) < kSingularThreshold) {
    throw SingularError("aux branch presents an open circuit to the combining loop");
  }
  return m.d / m.c;
}

TwoPortSpectrum SynthesizedNetwork::full_cascade(std::span<const double> freqs_hz, Realization r,
                                                 const Losses& losses) const {
  std::vector<TwoPortSpectrum::Point> pts;
  pts.reserve(freqs_hz.size());
  for (double hz : freqs_hz) {
    const Frequency f(hz);
    pts.push_back({f, full_network_abcd(*this, f, r == Realization::transformer, losses)});
  }
  return TwoPortSpectrum(std::move(pts));
}

SynthesizedNetwork synthesize(const DohertyDesignSpec& spec) {
  spec.validate();
  const Frequency f0 = spec.f0;
  const double w0 = f0.omega();

  SynthesizedNetwork net{
      .spec = spec,
      .inverter = quarter_wave_equiv(QuarterWaveKind::tee_lcl, spec.inverter_impedance(), f0),
      .line1 = quarter_wave_equiv(QuarterWaveKind::pi_clc, spec.z_line1, f0),
      .line2 = quarter_wave_equiv(QuarterWaveKind::pi_lcl, spec.z_line2, f0),
      .transformer = {},
      .aux_resonating_l = std::nullopt,
      .warnings = {},
  };

  // (1) inverter series inductors -> combining traces
  net.combining_trace_inductors = {net.inverter.l, net.inverter.l};

  // (2) device capacitance into line 1's left shunt C
  if (spec.c_out_main > net.line1.c) {
    throw AbsorptionInfeasible("main device capacitance " + femto(spec.c_out_main) +
                                   " exceeds the absorbable shunt capacitance " + femto(net.line1.c),
                               net.line1.c);
  }
  net.absorbed_device_cap = spec.c_out_main;
  net.remaining_device_shunt_c = net.line1.c - spec.c_out_main;

  // (3) line 2 left shunt L against line 1 right shunt C
  net.neutralization_residual_y =
      capacitor_admittance(net.line1.c, f0) + 1.0 / inductor_impedance(net.line2.l, f0);
  net.neutralization_exact = std::abs(net.neutralization_residual_y) <= spec.neutralization_tolerance;
  if (!net.neutralization_exact) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "neutralization residual |Y| = %.4e S at f0 (z_line1 = %.2f, z_line2 = %.2f ohm)",
                  std::abs(net.neutralization_residual_y), spec.z_line1, spec.z_line2);
    net.warnings.emplace_back(buf);
  }

  // (4) leakage from L1 + C2, magnetizing from line 2's right shunt L
  net.leakage_net_reactance = w0 * net.line1.l - 1.0 / (w0 * net.line2.c);
  net.transformer =
      TransformerModel::from_inductances(net.line2.l, net.line1.l, spec.transformer_ratio(), net.line2.c);

  if (spec.c_out_aux > 0.0) net.aux_resonating_l = 1.0 / (w0 * w0 * spec.c_out_aux);
  return net;
}

AbcdMatrix full_network_abcd(const SynthesizedNetwork& net, Frequency f, bool use_transformer,
                             const Losses& losses) {
  const Realization r = use_transformer ? Realization::transformer : Realization::ideal_lines;
  return net.main_branch(f, r, losses) * series_element(net.aux_port_impedance(f, r, losses));
}

PortSolution solve_ports(const SynthesizedNetwork& net, Frequency f, complex i_main, complex i_aux,
                         Realization r, const Losses& losses) {
  const AbcdMatrix tm = net.main_branch(f, r, losses);
  const AbcdMatrix ta = net.aux_branch(f, r, losses);
  const double load = net.spec.z_ant;

  // Unknowns: main loop-port voltage vm and loop current i. The aux port sits
  // in anti-series: its voltage is vm - load * i and its outgoing current -i.
  //   i_main = tm.c * vm + tm.d * i
  //   i_aux  = ta.c * vm - (ta.c * load + ta.d) * i
  const complex m11 = tm.c;
  const complex m12 = tm.d;
  const complex m21 = ta.c;
  const complex m22 = -(ta.c * load + ta.d);
  const complex det = m11 * m22 - m12 * m21;
  if (std::abs(det) * load < kSingularThreshold) throw DegenerateNetwork("solve_ports: singular loop equations");
  const complex vm = (i_main * m22 - m12 * i_aux) / det;
  const complex i = (m11 * i_aux - m21 * i_main) / det;
  const complex va = vm - load * i;

  return {tm.a * vm + tm.b * i, ta.a * va - ta.b * i, i, load * i};
}

double itr(complex z_required, double z_available) {
  const double mag = std::abs(z_required);
  if (!(mag > 0.0) || !std::isfinite(mag)) throw InvalidArgument("itr: required impedance must be nonzero");
  if (!(z_available > 0.0) || !std::isfinite(z_available)) {
    throw InvalidArgument("itr: available impedance must be positive");
  }
  return std::max(mag / z_available, z_available / mag);
}

ItrReport itr_report(const SynthesizedNetwork& net, complex aux_to_main) {
  const Frequency f0 = net.spec.f0;
  const complex z_pbo = input_impedance(full_network_abcd(net, f0, true), net.spec.z_ant);
  const PortSolution peak = solve_ports(net, f0, 1.0, aux_to_main);
  const complex z_peak = peak.v_main;
  return {z_pbo, z_peak, itr(z_pbo, net.spec.z_ant), itr(z_peak, net.spec.z_ant)};
}

ItrReport textbook_parallel_itr(const DohertyDesignSpec& spec) {
  spec.validate();
  const Frequency f0 = spec.f0;
  const double z_node = 0.5 * spec.z_opt;
  const double z_quarter = std::sqrt(z_node * spec.z_ant);
  const AbcdMatrix inverter = tline_abcd(spec.z_opt, 90.0, f0, f0);
  const complex r_node = input_impedance(tline_abcd(z_quarter, 90.0, f0, f0), spec.z_ant);

  const complex z_pbo = input_impedance(inverter, r_node);
  // Aux current injected at the combining node, 90 degrees behind main.
  const complex i_main = 1.0;
  const complex i_aux(0.0, -1.0);
  const complex den = inverter.c + inverter.d / r_node;
  const complex v_node = (i_main + inverter.d * i_aux) / den;
  const complex v_main = inverter.a * v_node + inverter.b * (v_node / r_node - i_aux);
  const complex z_peak = v_main / i_main;
  return {z_pbo, z_peak, itr(z_pbo, spec.z_ant), itr(z_peak, spec.z_ant)};
}

}  // namespace dohertynet
