// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_DOHERTY_SYNTH_HPP
#define DOHERTYNET_DOHERTY_SYNTH_HPP

// Three-line series Doherty output network.
//
// Topology (all at the design frequency f0):
//
//   main device --[line 1: PI C-L-C]--[line 2: PI L-C-L]--[1:n]--+
//                                                                |  series
//   aux device ---[inverter: TEE L-C-L]-----------(anti-series)--+  loop
//                                                                |
//                                                             antenna
//
// The three quarter-wave sections are replaced by lumped equivalents and
// then compacted:
//   - the inverter's two series inductors become the power-combining traces;
//   - line 1's left shunt C absorbs the main device output capacitance;
//   - line 2's left shunt L cancels line 1's right shunt C;
//   - line 1's series L and line 2's series C form the leakage branch and
//     line 2's right shunt L becomes the magnetizing inductance of a 1:n
//     transformer.
// With the auxiliary device off its branch presents a short (inverted open)
// in the loop, so the main device sees z_ant / n^2 = z_opt.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dohertynet/elements.hpp"
#include "dohertynet/twoport.hpp"

namespace dohertynet {

struct DohertyDesignSpec {
  Frequency f0{24e9};
  double z_opt = 50.0;
  double z_ant = 50.0;
  double pbo_db = 6.0;
  double c_out_main = 0.0;
  double c_out_aux = 0.0;
  // Defaults to sqrt(z_opt * z_ant) / 2, which gives 2:1 load modulation
  // with equal main and auxiliary currents at full drive.
  std::optional<double> z_inv;
  double z_line1 = 50.0;
  double z_line2 = 50.0;
  // Secondary:primary turns; defaults to sqrt(z_ant / z_opt).
  std::optional<double> turns_ratio;
  // |Y| above which an imperfect neutralization is reported as a warning.
  double neutralization_tolerance = 1e-12;

  double inverter_impedance() const;
  double transformer_ratio() const;
  void validate() const;
};

enum class Realization {
  ideal_lines,  // quarter-wave lines as ideal transmission lines
  transformer,  // compacted lumped realization
};

struct SynthesizedNetwork {
  DohertyDesignSpec spec;

  QuarterWaveEquiv inverter;
  QuarterWaveEquiv line1;  // as synthesized, before absorption
  QuarterWaveEquiv line2;
  std::array<double, 2> combining_trace_inductors{};

  double absorbed_device_cap = 0.0;
  double remaining_device_shunt_c = 0.0;  // line 1 left C minus the device part

  complex neutralization_residual_y{0.0};
  bool neutralization_exact = true;
  double leakage_net_reactance = 0.0;  // ohms at f0, series L1 + series C2

  TransformerModel transformer;
  // Shunt inductor that resonates c_out_aux at f0, present when c_out_aux > 0.
  std::optional<double> aux_resonating_l;

  std::vector<std::string> warnings;

  double capacitance_before_absorption() const;
  double remaining_network_capacitance() const;

  // Main device terminal (intrinsic plane, device capacitance included) to
  // the loop port.
  AbcdMatrix main_branch(Frequency f, Realization r, const Losses& losses = {}) const;
  // Aux device terminal to its loop port.
  AbcdMatrix aux_branch(Frequency f, Realization r, const Losses& losses = {}) const;
  // Impedance the aux branch inserts into the loop while the aux device is
  // off (open current source).
  complex aux_port_impedance(Frequency f, Realization r, const Losses& losses = {}) const;

  TwoPortSpectrum full_cascade(std::span<const double> freqs_hz, Realization r,
                               const Losses& losses = {}) const;
};

// Throws AbsorptionInfeasible when c_out_main exceeds line 1's left shunt C.
SynthesizedNetwork synthesize(const DohertyDesignSpec& spec);

// Main device terminal to antenna with the aux device off. Terminate in
// z_ant to get the back-off load.
AbcdMatrix full_network_abcd(const SynthesizedNetwork& net, Frequency f, bool use_transformer,
                             const Losses& losses = {});

// Terminal quantities of the loaded network driven by the two device
// current sources.
struct PortSolution {
  complex v_main;
  complex v_aux;
  complex loop_current;
  complex v_load;
};

PortSolution solve_ports(const SynthesizedNetwork& net, Frequency f, complex i_main, complex i_aux,
                         Realization r = Realization::transformer, const Losses& losses = {});

double itr(complex z_required, double z_available);

struct ItrReport {
  complex z_required_pbo;
  complex z_required_peak;
  double itr_pbo;
  double itr_peak;
};

// Peak drive uses i_aux = aux_to_main * i_main.
ItrReport itr_report(const SynthesizedNetwork& net, complex aux_to_main = complex(0.0, -1.0));

// Textbook parallel Doherty at the same f0 / z_opt / z_ant: main behind a
// z_opt inverter, combining node at z_opt / 2 through a quarter-wave
// transformer to the antenna, aux delayed by 90 degrees.
ItrReport textbook_parallel_itr(const DohertyDesignSpec& spec);

}  // namespace dohertynet

#endif  // DOHERTYNET_DOHERTY_SYNTH_HPP
