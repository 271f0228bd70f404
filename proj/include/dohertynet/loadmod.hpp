// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_LOADMOD_HPP
#define DOHERTYNET_LOADMOD_HPP

// Drive-level sweeps with both devices modeled as ideal current sources, the
// ideal efficiency curves, and small-signal S-parameter sweeps of the
// realized network.

#include <optional>
#include <span>
#include <vector>

#include "dohertynet/doherty_synth.hpp"
#include "dohertynet/kernels.hpp"
#include "dohertynet/twoport.hpp"

namespace dohertynet {

struct DriveProfile {
  std::vector<double> alpha_grid;
  double turn_on = 0.5;
  double aux_scale = 2.0;
  double aux_phase_deg = -90.0;
  double i_ref = 1.0;  // amperes at alpha = 1

  void validate() const;
};

struct DriveCurrents {
  complex i_main;
  complex i_aux;
};

DriveCurrents drive_currents(double alpha, const DriveProfile& profile);

struct LoadModPoint {
  double alpha;
  std::optional<complex> z_main;      // device plane, empty when undriven
  std::optional<complex> z_main_ext;  // outside c_out_main
  std::optional<complex> z_aux;       // only once the aux device conducts
  complex i_main;
  complex i_aux;
  complex v_main;
  complex v_aux;
  complex v_load;
  double p_out;   // watts, peak-phasor convention
  double pbo_db;  // below the alpha = 1 output power; +inf at zero drive
  double eta;     // class-B drain efficiency over both devices
};

struct LoadModResult {
  Frequency f;
  double v_max;  // supply-limited swing: largest device voltage at alpha = 1
  std::vector<LoadModPoint> points;
};

// Throws InvalidArgument on an empty or unsorted grid, DegenerateNetwork if
// the loop equations are singular at f.
LoadModResult solve(const SynthesizedNetwork& net, const DriveProfile& profile, Frequency f,
                    Realization r = Realization::transformer, const Losses& losses = {});

struct EfficiencyCurve {
  std::vector<double> pbo_grid_db;
  std::vector<double> doherty_ideal;
  std::vector<double> class_b;
  std::vector<double> class_a;
};

// Closed forms for an ideal symmetric Doherty versus single-device class B and
// class A, all normalized to peak_eta at 0 dB.
EfficiencyCurve ideal_efficiency_curves(std::span<const double> pbo_grid_db, double peak_eta);
double ideal_doherty_efficiency(double pbo_db, double peak_eta);

// Transformer-realized network between (z_opt, z_ant) references.
SParams sweep_sparams(const SynthesizedNetwork& net, std::span<const double> f_grid_hz, double q_l, double q_c);
SParams sweep_sparams(const SynthesizedNetwork& net, std::span<const double> f_grid_hz, double q_l, double q_c,
                      kernels::Isa isa);

struct Bandwidth {
  double f_lo_hz;
  double f_hi_hz;
  double fractional;
  double f_peak_hz;
  double peak_db;
  bool lo_clamped;  // no crossing below the peak; edge is the first grid point
  bool hi_clamped;
  bool peak_at_edge;
};

double fractional_bandwidth(double f_lo_hz, double f_hi_hz);

// -3 dB (half-power) band of |S21| around its global maximum, edges
// interpolated linearly in dB. Throws InvalidArgument on an empty sweep.
Bandwidth bandwidth_3db(const SParams& sp);

double insertion_loss_db(const SMatrix& s);

}  // namespace dohertynet

#endif  // DOHERTYNET_LOADMOD_HPP
