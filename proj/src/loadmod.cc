// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/loadmod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dohertynet/error.hpp"

namespace dohertynet {

namespace {

constexpr double kClassBPeak = kPi / 4.0;
// The "-3 dB" edge is the half-power point, 10 log10(2) = 3.0103 dB down.
const double kHalfPowerDb = 10.0 * std::log10(2.0);

}  // namespace

void DriveProfile::validate() const {
  if (alpha_grid.empty()) throw InvalidArgument("drive profile: alpha grid is empty");
  for (std::size_t k = 0; k < alpha_grid.size(); ++k) {
    const double a = alpha_grid[k];
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("drive profile: alpha must lie in [0, 1]");
    if (k > 0 && a < alpha_grid[k - 1]) throw InvalidArgument("drive profile: alpha grid must be sorted");
  }
  if (!(turn_on > 0.0 && turn_on < 1.0)) throw InvalidArgument("drive profile: turn_on must lie in (0, 1)");
  if (!std::isfinite(aux_scale) || aux_scale < 0.0) throw InvalidArgument("drive profile: aux_scale must be >= 0");
  if (!std::isfinite(aux_phase_deg)) throw InvalidArgument("drive profile: aux phase must be finite");
  if (!(i_ref > 0.0) || !std::isfinite(i_ref)) throw InvalidArgument("drive profile: i_ref must be positive");
}

DriveCurrents drive_currents(double alpha, const DriveProfile& profile) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("drive_currents: alpha must lie in [0, 1]");
  const complex i_main = alpha * profile.i_ref;
  if (alpha <= profile.turn_on) return {i_main, 0.0};
  const double mag = profile.aux_scale * (alpha - profile.turn_on) * profile.i_ref;
  return {i_main, std::polar(mag, profile.aux_phase_deg * kPi / 180.0)};
}

LoadModResult solve(const SynthesizedNetwork& net, const DriveProfile& profile, Frequency f, Realization r,
                    const Losses& losses) {
  profile.validate();

  const DriveCurrents full = drive_currents(1.0, profile);
  const PortSolution at_peak = solve_ports(net, f, full.i_main, full.i_aux, r, losses);
  const double p_peak = 0.5 * std::norm(at_peak.loop_current) * net.spec.z_ant;
  const double v_max = std::max(std::abs(at_peak.v_main), std::abs(at_peak.v_aux));

  // Device capacitance only exists as a separate element in the lumped
  // realization.
  const complex y_dev = r == Realization::transformer ? capacitor_admittance(net.spec.c_out_main, f, losses)
                                                      : complex(0.0);

  LoadModResult out{.f = f, .v_max = v_max, .points = {}};
  out.points.reserve(profile.alpha_grid.size());
  for (double alpha : profile.alpha_grid) {
    const DriveCurrents dc = drive_currents(alpha, profile);
    const PortSolution s = solve_ports(net, f, dc.i_main, dc.i_aux, r, losses);

    LoadModPoint p{};
    p.alpha = alpha;
    p.i_main = dc.i_main;
    p.i_aux = dc.i_aux;
    p.v_main = s.v_main;
    p.v_aux = s.v_aux;
    p.v_load = s.v_load;
    if (dc.i_main != 0.0) {
      p.z_main = s.v_main / dc.i_main;
      p.z_main_ext = s.v_main / (dc.i_main - y_dev * s.v_main);
    }
    if (dc.i_aux != 0.0) p.z_aux = s.v_aux / dc.i_aux;
    p.p_out = 0.5 * std::norm(s.loop_current) * net.spec.z_ant;
    p.pbo_db = p.p_out > 0.0 ? 10.0 * std::log10(p_peak / p.p_out) : std::numeric_limits<double>::infinity();

    const double p_dc = 2.0 / kPi * v_max * (std::abs(dc.i_main) + std::abs(dc.i_aux));
    p.eta = p_dc > 0.0 ? std::min(p.p_out / p_dc, kClassBPeak) : 0.0;
    out.points.push_back(p);
  }
  return out;
}

double ideal_doherty_efficiency(double pbo_db, double peak_eta) {
  const double v = std::pow(10.0, -pbo_db / 20.0);
  const double shape = v <= 0.5 ? 2.0 * v : 2.0 * v * v / (3.0 * v - 1.0);
  return peak_eta * shape;
}

EfficiencyCurve ideal_efficiency_curves(std::span<const double> pbo_grid_db, double peak_eta) {
  if (!(peak_eta > 0.0 && peak_eta <= 1.0)) throw InvalidArgument("efficiency curves: peak_eta must lie in (0, 1]");
  EfficiencyCurve c;
  for (double pbo : pbo_grid_db) {
    if (!std::isfinite(pbo) || pbo < 0.0) throw InvalidArgument("efficiency curves: back-off must be >= 0 dB");
    c.pbo_grid_db.push_back(pbo);
    c.doherty_ideal.push_back(ideal_doherty_efficiency(pbo, peak_eta));
    c.class_b.push_back(peak_eta * std::pow(10.0, -pbo / 20.0));
    c.class_a.push_back(peak_eta * std::pow(10.0, -pbo / 10.0));
  }
  return c;
}

SParams sweep_sparams(const SynthesizedNetwork& net, std::span<const double> f_grid_hz, double q_l, double q_c) {
  return sweep_sparams(net, f_grid_hz, q_l, q_c, kernels::detect_isa());
}

SParams sweep_sparams(const SynthesizedNetwork& net, std::span<const double> f_grid_hz, double q_l, double q_c,
                      kernels::Isa isa) {
  for (std::size_t k = 0; k < f_grid_hz.size(); ++k) {
    if (!(f_grid_hz[k] > 0.0) || !std::isfinite(f_grid_hz[k])) throw InvalidArgument("sweep: frequencies must be > 0");
    if (k > 0 && !(f_grid_hz[k] > f_grid_hz[k - 1])) throw InvalidArgument("sweep: grid must be strictly increasing");
  }
  const Losses losses{q_l, q_c};

  // The aux branch is frequency-dependent in a way the ladder can't express
  // (its open-circuit impedance), so it enters as a per-point table.
  std::vector<complex> z_aux(f_grid_hz.size());
  for (std::size_t k = 0; k < f_grid_hz.size(); ++k) {
    z_aux[k] = net.aux_port_impedance(Frequency(f_grid_hz[k]), Realization::transformer, losses);
  }

  const TransformerModel& t = net.transformer;
  std::vector<kernels::Stage> stages;
  stages.push_back({kernels::StageKind::shunt_c, net.line1.c});
  if (t.lk > 0.0) stages.push_back({kernels::StageKind::series_l, t.lk});
  if (t.series_cap) stages.push_back({kernels::StageKind::series_c, *t.series_cap});
  stages.push_back({kernels::StageKind::shunt_l, t.lm});
  stages.push_back({kernels::StageKind::ideal_transformer, 1.0 / t.n});
  stages.push_back({kernels::StageKind::series_table, 0.0, z_aux});

  kernels::AbcdBatch abcd;
  kernels::SBatch s;
  kernels::evaluate_ladder(stages, f_grid_hz, {q_l, q_c}, abcd, isa);
  const std::size_t bad = kernels::abcd_to_s(abcd, net.spec.z_opt, net.spec.z_ant, s, isa);
  if (bad != kernels::kNoSingularity) throw SingularError("sweep: singular S conversion at grid index " + std::to_string(bad));

  std::vector<SParams::Point> pts;
  pts.reserve(f_grid_hz.size());
  for (std::size_t k = 0; k < f_grid_hz.size(); ++k) {
    pts.push_back({Frequency(f_grid_hz[k]),
                   {{s.s11_re[k], s.s11_im[k]}, {s.s12_re[k], s.s12_im[k]}, {s.s21_re[k], s.s21_im[k]},
                    {s.s22_re[k], s.s22_im[k]}}});
  }
  return SParams(std::move(pts), net.spec.z_opt, net.spec.z_ant);
}

double fractional_bandwidth(double f_lo_hz, double f_hi_hz) {
  return (f_hi_hz - f_lo_hz) / (0.5 * (f_hi_hz + f_lo_hz));
}

double insertion_loss_db(const SMatrix& s) { return -20.0 * std::log10(std::abs(s.s21)); }

Bandwidth bandwidth_3db(const SParams& sp) {
  if (sp.empty()) throw InvalidArgument("bandwidth_3db: empty sweep");
  const std::size_t n = sp.size();
  std::vector<double> db(n);
  for (std::size_t k = 0; k < n; ++k) db[k] = 20.0 * std::log10(std::abs(sp[k].s.s21));
  const std::size_t peak = static_cast<std::size_t>(std::max_element(db.begin(), db.end()) - db.begin());
  const double thr = db[peak] - kHalfPowerDb;

  auto cross = [&](std::size_t inside, std::size_t outside) {
    const double f_in = sp[inside].f.hz();
    const double f_out = sp[outside].f.hz();
    const double t = (db[inside] - thr) / (db[inside] - db[outside]);
    return f_in + t * (f_out - f_in);
  };

  Bandwidth bw{};
  bw.f_peak_hz = sp[peak].f.hz();
  bw.peak_db = db[peak];
  bw.peak_at_edge = peak == 0 || peak == n - 1;

  bw.lo_clamped = true;
  bw.f_lo_hz = sp[0].f.hz();
  for (std::size_t k = peak; k > 0; --k) {
    if (db[k - 1] < thr) {
      bw.f_lo_hz = cross(k, k - 1);
      bw.lo_clamped = false;
      break;
    }
  }
  bw.hi_clamped = true;
  bw.f_hi_hz = sp[n - 1].f.hz();
  for (std::size_t k = peak; k + 1 < n; ++k) {
    if (db[k + 1] < thr) {
      bw.f_hi_hz = cross(k, k + 1);
      bw.hi_clamped = false;
      break;
    }
  }
  bw.fractional = fractional_bandwidth(bw.f_lo_hz, bw.f_hi_hz);
  return bw;
}

}  // namespace dohertynet
