// SPDX-License-Identifier: Apache-2.0

// Acceptance run: each criterion is checked at its stated tolerance and
// runtime budget, one PASS/FAIL line per criterion. Exit status is the number
// of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "dohertynet/doherty_synth.hpp"
#include "dohertynet/error.hpp"
#include "dohertynet/fit_transformer.hpp"
#include "dohertynet/loadmod.hpp"
#include "dohertynet/mna.hpp"
#include "dohertynet/touchstone.hpp"
#include "ladders.hpp"
#include "oracles.hpp"

using namespace dohertynet;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << what;
      ok = false;
    }
  }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(lo + (hi - lo) * k / (n - 1));
  return v;
}

void quarter_wave(Outcome& o) {
  auto g = oracle::rng(101);
  double worst = 0;
  for (auto kind : {QuarterWaveKind::pi_clc, QuarterWaveKind::pi_lcl, QuarterWaveKind::tee_lcl}) {
    const int sign = kind == QuarterWaveKind::pi_lcl ? -1 : +1;
    for (int t = 0; t < 20; ++t) {
      const double z0 = oracle::uniform(g, 20, 100);
      const Frequency f0(oracle::uniform(g, 10e9, 40e9));
      const auto q = quarter_wave_equiv(kind, z0, f0);
      worst = std::max(worst, oracle::rel_err(cascade_elements(q.elements, f0), oracle::inverter(z0, sign), z0));
    }
  }
  o.detail << "worst rel err " << worst;
  o.check(worst <= 1e-12, "; exceeds 1e-12");
}

void back_off_load(Outcome& o) {
  const SynthesizedNetwork net = synthesize({});
  const complex z = input_impedance(full_network_abcd(net, net.spec.f0, true), net.spec.z_ant);
  const ItrReport ours = itr_report(net);
  const ItrReport base = textbook_parallel_itr(net.spec);
  o.detail << "z_pbo " << z.real() << "+j" << z.imag() << " ohm, baseline " << base.z_required_pbo.real()
           << " ohm, ITR " << base.itr_pbo << " vs " << ours.itr_pbo;
  o.check(std::abs(z - 50.0) / 50.0 <= 1e-6, "; z_pbo off");
  o.check(std::abs(base.z_required_pbo - 100.0) / 100.0 <= 1e-6, "; baseline off");
  o.check(std::abs(base.itr_pbo - 2.0) <= 1e-6 && std::abs(ours.itr_pbo - 1.0) <= 1e-6, "; ITR off");
}

void neutralization(Outcome& o) {
  int mismatches = 0;
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) {
      DohertyDesignSpec s;
      s.z_line1 = 20.0 + 9.0 * a;
      s.z_line2 = 20.0 + 9.0 * b;
      const bool small = std::abs(synthesize(s).neutralization_residual_y) <= 1e-12;
      if (small != (a == b)) ++mismatches;
    }
  }
  o.detail << "100 grid points, " << mismatches << " violations";
  o.check(mismatches == 0, "");
}

void compaction(Outcome& o) {
  const SynthesizedNetwork net = synthesize({});
  const double at_f0 =
      relative_difference(full_network_abcd(net, net.spec.f0, true), full_network_abcd(net, net.spec.f0, false));
  double worst = 0;
  for (double f : linspace(0.95 * 24e9, 1.05 * 24e9, 201)) {
    const auto a = to_smatrix(full_network_abcd(net, Frequency(f), true), 50, 50);
    const auto b = to_smatrix(full_network_abcd(net, Frequency(f), false), 50, 50);
    worst = std::max(worst, std::abs(20 * std::log10(std::abs(a.s21)) - 20 * std::log10(std::abs(b.s21))));
  }
  o.detail << "rel diff at f0 " << at_f0 << ", worst |dS21| " << worst << " dB";
  o.check(at_f0 <= 1e-6 && worst <= 0.1, "");
}

void fit_recovery(Outcome& o) {
  const auto truth = TransformerModel::from_inductances(300e-12, 60e-12, 1.2);
  std::vector<TwoPortSpectrum::Point> pts;
  for (double f : linspace(22e9, 26e9, 200)) pts.push_back({Frequency(f), transformer_two_port(truth, Frequency(f))});
  const TwoPortSpectrum target(std::move(pts));
  const auto init = TransformerModel::from_inductances(0.8 * 300e-12, 0.8 * 60e-12, 0.8 * 1.2);
  const FitResult a = fit_transformer(target, {22e9, 26e9}, init);
  const FitResult b = fit_transformer(target, {22e9, 26e9}, init);
  const double e = std::max({std::abs(a.model.lm / 300e-12 - 1), std::abs(a.model.lk / 60e-12 - 1),
                             std::abs(a.model.n / 1.2 - 1)});
  o.detail << "worst param err " << e << ", " << a.iterations << " iterations";
  o.check(e <= 1e-3, "; recovery off");
  o.check(a.model.lm == b.model.lm && a.model.lk == b.model.lk && a.model.n == b.model.n, "; not deterministic");
}

void oracle_equivalence(Outcome& o) {
  auto g = oracle::rng(102);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const auto lad = ladders::random_ladder(g, 8);
    const Frequency f(oracle::uniform(g, 1e9, 40e9));
    worst = std::max(worst, relative_difference(cascade_elements(lad.chain, f), mna::mna_oracle(lad.netlist, f)));
  }
  o.detail << "100 ladders, worst rel err " << worst;
  o.check(worst <= 1e-9, "");
}

void efficiency_shape(Outcome& o) {
  const double peak = kPi / 4;
  const double d = 20 * std::log10(2.0);
  const double e0 = ideal_doherty_efficiency(0, peak), e6 = ideal_doherty_efficiency(d, peak);
  const double dip = ideal_doherty_efficiency(-20 * std::log10(0.75), peak);
  const std::vector<double> grid{d};
  const EfficiencyCurve c = ideal_efficiency_curves(grid, peak);
  const double rb = c.doherty_ideal[0] / c.class_b[0], ra = c.doherty_ideal[0] / c.class_a[0];
  o.detail << "eta(0) " << e0 << ", eta(6.02) " << e6 << ", dip/peak " << dip / peak << ", ratios " << rb << " / "
           << ra;
  o.check(std::abs(e0 - peak) <= 1e-9 && std::abs(e6 - peak) <= 1e-9, "; peaks off");
  o.check(std::abs(dip - 0.9 * peak) <= 1e-9, "; dip off");
  o.check(std::abs(rb - 2) <= 1e-9 && std::abs(ra - 4) <= 1e-9, "; ratios off");
}

void bandwidth(Outcome& o) {
  const double fc = 10e9;
  const auto f = linspace(0.01e9, 40e9, 1001);
  std::vector<SParams::Point> pts;
  for (double x : f) pts.push_back({Frequency(x), {0.0, 0.0, oracle::one_pole_mag(x, fc), 0.0}});
  const Bandwidth bw = bandwidth_3db(SParams(std::move(pts)));
  const double frac = fractional_bandwidth(22e9, 32.5e9);
  o.detail << "corner error " << std::abs(bw.f_hi_hz - fc) / (f[1] - f[0]) << " grid steps, 22-32.5 GHz -> "
           << 100 * frac << " %";
  o.check(std::abs(bw.f_hi_hz - fc) <= f[1] - f[0], "; corner off");
  o.check(std::abs(frac - 0.385) <= 0.0005, "; fractional off");
}

void touchstone_io(Outcome& o) {
  namespace ts = touchstone;
  std::mt19937_64 g(103);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<SParams::Point> pts;
  for (double f : linspace(18e9, 32e9, 201)) pts.push_back({Frequency(f), {{u(g), u(g)}, {u(g), u(g)}, {u(g), u(g)}, {u(g), u(g)}}});
  const SParams sp(std::move(pts), 50);
  double worst = 0;
  bool meta = true;
  for (auto fmt : {ts::DataFormat::ri, ts::DataFormat::ma, ts::DataFormat::db}) {
    ts::File file = ts::from_sparams(sp, fmt, ts::FreqUnit::ghz);
    file.comments = {" acceptance"};
    const ts::File back = ts::parse(ts::serialize(file));
    meta = meta && back.format == fmt && back.freq_unit == file.freq_unit && back.r_ref == file.r_ref &&
           back.comments == file.comments && back.rows.size() == file.rows.size();
    const SParams r = ts::to_sparams(back);
    for (std::size_t k = 0; k < sp.size(); ++k) {
      worst = std::max({worst, std::abs(r[k].s.s11 - sp[k].s.s11), std::abs(r[k].s.s21 - sp[k].s.s21),
                        std::abs(r[k].s.s12 - sp[k].s.s12), std::abs(r[k].s.s22 - sp[k].s.s22),
                        std::abs(r[k].f.hz() / sp[k].f.hz() - 1)});
    }
  }

  const std::string seed = ts::serialize(ts::from_sparams(sp, ts::DataFormat::ri));
  const std::string alphabet = "0123456789.-+eE #!RSMAGHzkDB[]\r\n\t xyYZ";
  int structured = 0, parsed = 0, other = 0;
  for (int t = 0; t < 10000; ++t) {
    std::string s = seed.substr(0, std::uniform_int_distribution<std::size_t>(0, 400)(g));
    const int edits = std::uniform_int_distribution<int>(1, 8)(g);
    for (int e = 0; e < edits && !s.empty(); ++e) {
      const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(g);
      s[pos] = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(g)];
    }
    try {
      (void)ts::to_sparams(ts::parse(s));
      ++parsed;
    } catch (const ParseError&) {
      ++structured;
    } catch (...) {
      ++other;
    }
  }
  o.detail << "round-trip worst " << worst << (meta ? ", metadata exact" : ", metadata differs") << "; fuzz "
           << parsed << " parsed, " << structured << " structured errors, " << other << " other";
  o.check(meta && worst <= 1e-8, "; round trip off");
  o.check(other == 0, "; unstructured failure");
}

void energy(Outcome& o) {
  auto g = oracle::rng(104);
  double worst = 0;
  bool strict = true;
  for (int t = 0; t < 10; ++t) {
    DohertyDesignSpec s;
    s.z_opt = oracle::uniform(g, 20, 80);
    s.c_out_main = oracle::uniform(g, 0, 100e-15);
    const SynthesizedNetwork net = synthesize(s);
    const auto f = linspace(18e9, 32e9, 201);
    for (const auto& p : sweep_sparams(net, f, kInf, kInf)) {
      worst = std::max(worst, std::abs(std::norm(p.s.s11) + std::norm(p.s.s21) - 1));
    }
    for (const auto& p : sweep_sparams(net, f, oracle::uniform(g, 10, 100), oracle::uniform(g, 10, 200))) {
      strict = strict && std::norm(p.s.s11) + std::norm(p.s.s21) < 1;
    }
  }
  o.detail << "lossless worst |sum - 1| " << worst << (strict ? ", finite-Q strictly < 1" : ", finite-Q violation");
  o.check(worst <= 1e-6 && strict, "");
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"quarter-wave equivalence", 1.0, quarter_wave},
      {"back-off load and ITR vs parallel baseline", 1.0, back_off_load},
      {"neutralization law", 1.0, neutralization},
      {"transformer compaction fidelity", 1.0, compaction},
      {"fit recovery", 5.0, fit_recovery},
      {"cascade vs nodal oracle", 5.0, oracle_equivalence},
      {"ideal efficiency shape", 1.0, efficiency_shape},
      {"bandwidth extraction", 1.0, bandwidth},
      {"touchstone round trip and fuzz", 30.0, touchstone_io},
      {"energy conservation", kInf, energy},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > c.budget_s) o.check(false, "; over runtime budget");
    std::printf("%s  %s  (%.3f s)  %s\n", o.ok ? "PASS" : "FAIL", c.name, dt, o.detail.str().c_str());
    failures += o.ok ? 0 : 1;
  }
  return failures;
}
