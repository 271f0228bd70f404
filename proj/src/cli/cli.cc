// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "csv.hpp"
#include "dohertynet/doherty_synth.hpp"
#include "dohertynet/error.hpp"
#include "dohertynet/loadmod.hpp"
#include "dohertynet/touchstone.hpp"
#include "format.hpp"

namespace dohertynet::cli {

namespace {

// Typical PAE of a realized 24 GHz series Doherty at 6 dB back-off; only
// printed as context next to the ideal-model number.
constexpr double kMeasuredPae6db = 0.24;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every option is kept as text and converted after parsing so SI suffixes
// ("24G", "150f") work uniformly for flags and the config file.
struct RawOptions {
  std::string f0 = "24G";
  std::string z_opt = "50";
  std::string z_ant = "50";
  std::string z_inv;
  std::string z_line1 = "50";
  std::string z_line2 = "50";
  std::string cout_main = "0";
  std::string cout_aux = "0";
  std::string turns_ratio;
  std::string pbo;
  std::string turn_on = "0.5";
  std::string aux_phase = "-90";
  std::string aux_scale = "2";
  std::vector<std::string> alpha;
  std::string f_start = "18G";
  std::string f_stop = "32G";
  std::optional<int> points;
  std::string ql = "inf";
  std::string qc = "inf";
  std::string peak_eta;
  std::string pbo_max = "12";
  std::string freq;
  std::string out;
  std::string format;
  std::string unit = "GHz";
  std::string data_format;
  std::string r_ref = "50";
  std::string input;
};

double number(const std::string& text, const char* flag) {
  const auto v = parse_si(text);
  if (!v) throw UsageError(std::string("invalid value for --") + flag + ": '" + text + "'");
  return *v;
}

std::optional<double> maybe_number(const std::string& text, const char* flag) {
  if (text.empty()) return std::nullopt;
  return number(text, flag);
}

int grid_points(const RawOptions& o, int fallback) {
  const int n = o.points.value_or(fallback);
  if (n < 2) throw UsageError("--points must be at least 2");
  return n;
}

std::vector<double> linspace(double start, double stop, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = start + (stop - start) * k / (n - 1);
  v.back() = stop;
  return v;
}

double default_pbo() { return 20.0 * std::log10(2.0); }

DohertyDesignSpec design_spec(const RawOptions& o) {
  DohertyDesignSpec s;
  const double f0 = number(o.f0, "f0");
  if (!(f0 > 0.0) || !std::isfinite(f0)) throw UsageError("--f0 must be a positive frequency");
  s.f0 = Frequency(f0);
  s.z_opt = number(o.z_opt, "z-opt");
  s.z_ant = number(o.z_ant, "z-ant");
  s.z_inv = maybe_number(o.z_inv, "z-inv");
  s.z_line1 = number(o.z_line1, "z-line1");
  s.z_line2 = number(o.z_line2, "z-line2");
  s.c_out_main = number(o.cout_main, "cout-main");
  s.c_out_aux = number(o.cout_aux, "cout-aux");
  s.turns_ratio = maybe_number(o.turns_ratio, "turns-ratio");
  s.pbo_db = o.pbo.empty() ? default_pbo() : number(o.pbo, "pbo");
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return s;
}

std::string ohms(complex z) {
  std::string s = fixed(z.real(), 2);
  if (std::fabs(z.imag()) >= 0.005) s += (z.imag() < 0 ? "-j" : "+j") + fixed(std::fabs(z.imag()), 2);
  return s + " Ω";
}

void emit(const RawOptions& o, const std::string& data, std::ostream& out) {
  if (o.out.empty()) {
    out << data;
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + o.out + "' for writing");
  f << data;
  f.flush();
  if (!f) throw IoError("failed writing '" + o.out + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

touchstone::FreqUnit unit_option(const RawOptions& o) {
  const auto u = touchstone::parse_unit(o.unit);
  if (!u) throw UsageError("--unit must be one of Hz, kHz, MHz, GHz");
  return *u;
}

std::optional<touchstone::DataFormat> data_format_option(const RawOptions& o) {
  if (o.data_format.empty()) return std::nullopt;
  const auto f = touchstone::parse_format(o.data_format);
  if (!f) throw UsageError("--data-format must be one of RI, MA, DB");
  return f;
}

// ---------------------------------------------------------------- synth

void cmd_synth(const RawOptions& o, std::ostream& out) {
  const DohertyDesignSpec spec = design_spec(o);
  const SynthesizedNetwork net = synthesize(spec);
  const ItrReport itr = itr_report(net);
  const ItrReport base = textbook_parallel_itr(spec);

  std::ostringstream r;
  auto triple = [&](const char* name, const QuarterWaveEquiv& q) {
    const bool pi_clc = q.kind == QuarterWaveKind::pi_clc;
    const std::string l = engineering(q.l, "H");
    const std::string c = engineering(q.c, "F");
    r << "  " << name << " (" << to_string(q.kind) << ", " << fixed(q.z0, 2) << " Ω):  ";
    if (pi_clc) {
      r << "C = " << c << ", L = " << l << ", C = " << c << "\n";
    } else {
      r << "L = " << l << ", C = " << c << ", L = " << l << "\n";
    }
  };

  r << "design frequency: " << engineering(spec.f0.hz(), "Hz") << "\n";
  r << "z_opt = " << fixed(spec.z_opt, 2) << " Ω, z_ant = " << fixed(spec.z_ant, 2)
    << " Ω, design back-off = " << fixed(spec.pbo_db, 2) << " dB\n";
  r << "quarter-wave equivalents:\n";
  triple("inverter", net.inverter);
  triple("line 1  ", net.line1);
  triple("line 2  ", net.line2);
  r << "combining trace inductors: " << engineering(net.combining_trace_inductors[0], "H") << ", "
    << engineering(net.combining_trace_inductors[1], "H") << "\n";
  r << "absorbed device capacitance: " << engineering(net.absorbed_device_cap, "F") << " of "
    << engineering(net.line1.c, "F") << " (remaining shunt " << engineering(net.remaining_device_shunt_c, "F")
    << ")\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.3e", std::abs(net.neutralization_residual_y));
  r << "neutralization residual |Y| at f0: " << buf << " S" << (net.neutralization_exact ? " (exact)" : "") << "\n";
  r << "net leakage reactance at f0: " << fixed(net.leakage_net_reactance, 3) << " Ω\n";

  const TransformerModel& t = net.transformer;
  r << "transformer: lm = " << engineering(t.lm, "H") << ", lk = " << engineering(t.lk, "H")
    << ", n = " << fixed(t.n, 4) << ", k = " << fixed(t.k, 4)
    << ", series_cap = " << (t.series_cap ? engineering(*t.series_cap, "F") : std::string("none")) << "\n";
  if (net.aux_resonating_l) r << "aux resonating inductor: " << engineering(*net.aux_resonating_l, "H") << "\n";

  r << "ITR at PBO  = " << fixed(itr.itr_pbo, 2) << " (z = " << ohms(itr.z_required_pbo) << ")\n";
  r << "ITR at peak = " << fixed(itr.itr_peak, 2) << " (z = " << ohms(itr.z_required_peak) << ")\n";
  r << "textbook parallel baseline: ITR at PBO = " << fixed(base.itr_pbo, 2) << " (z = " << ohms(base.z_required_pbo)
    << "), ITR at peak = " << fixed(base.itr_peak, 2) << " (z = " << ohms(base.z_required_peak) << ")\n";
  for (const auto& w : net.warnings) r << "warning: " << w << "\n";

  out << r.str();
  if (!o.out.empty()) emit(o, r.str(), out);
}

// ---------------------------------------------------------------- sweep

void cmd_sweep(const RawOptions& o, std::ostream& out, std::ostream& err) {
  const DohertyDesignSpec spec = design_spec(o);
  const double start = number(o.f_start, "f-start");
  const double stop = number(o.f_stop, "f-stop");
  if (!(start > 0.0) || !(start < stop) || !std::isfinite(stop)) throw UsageError("need 0 < --f-start < --f-stop");
  const int n = grid_points(o, 201);
  const double ql = number(o.ql, "ql");
  const double qc = number(o.qc, "qc");
  if (!(ql > 0.0) || !(qc > 0.0)) throw UsageError("--ql and --qc must be positive (or inf)");
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format != "csv" && format != "touchstone") throw UsageError("--format must be csv or touchstone");

  const SynthesizedNetwork net = synthesize(spec);
  const std::vector<double> grid = linspace(start, stop, n);
  const SParams sp = sweep_sparams(net, grid, ql, qc);

  std::string data;
  if (format == "csv") {
    data = sparams_to_csv(sp);
  } else {
    if (spec.z_opt != spec.z_ant) throw UsageError("touchstone output needs --z-opt equal to --z-ant");
    touchstone::File f = touchstone::from_sparams(sp, data_format_option(o).value_or(touchstone::DataFormat::ri),
                                                  unit_option(o));
    f.comments.push_back(" dohertynet sweep, f0 = " + exact(spec.f0.hz()) + " Hz");
    f.comments.push_back(" port 1: main device (" + exact(spec.z_opt) + " ohm), port 2: antenna (" +
                         exact(spec.z_ant) + " ohm)");
    data = touchstone::serialize(f);
  }

  const Bandwidth bw = bandwidth_3db(sp);
  const double f0s[] = {spec.f0.hz()};
  const SParams at_f0 = sweep_sparams(net, f0s, ql, qc);
  std::ostringstream s;
  s << "-3 dB band: " << engineering(bw.f_lo_hz, "Hz") << (bw.lo_clamped ? " (clamped at grid start)" : "")
    << " to " << engineering(bw.f_hi_hz, "Hz") << (bw.hi_clamped ? " (clamped at grid end)" : "") << "\n";
  s << "fractional bandwidth (f_hi - f_lo) / f_center: " << fixed(100.0 * bw.fractional, 1) << " %\n";
  s << "peak |S21|: " << fixed(bw.peak_db, 3) << " dB at " << engineering(bw.f_peak_hz, "Hz")
    << (bw.peak_at_edge ? " (at grid edge)" : "") << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", std::abs(at_f0[0].s.s11));
  s << "|S11(f0)|: " << buf << "\n";
  s << "insertion loss at f0: " << fixed(insertion_loss_db(at_f0[0].s), 4) << " dB\n";

  if (o.out.empty()) {
    out << data;
    err << s.str();
  } else {
    emit(o, data, out);
    out << s.str();
  }
}

// ---------------------------------------------------------------- loadmod

void cmd_loadmod(const RawOptions& o, std::ostream& out, std::ostream& err) {
  const DohertyDesignSpec spec = design_spec(o);
  if (!o.format.empty() && o.format != "csv") throw UsageError("loadmod writes csv only");

  DriveProfile profile;
  profile.turn_on = number(o.turn_on, "turn-on");
  profile.aux_phase_deg = number(o.aux_phase, "aux-phase");
  profile.aux_scale = number(o.aux_scale, "aux-scale");
  if (!o.alpha.empty()) {
    if (o.points) throw UsageError("--alpha and --points are mutually exclusive");
    for (const auto& a : o.alpha) profile.alpha_grid.push_back(number(a, "alpha"));
    if (profile.alpha_grid.size() < 2) throw UsageError("--alpha needs at least 2 drive levels");
  } else {
    profile.alpha_grid = linspace(0.0, 1.0, grid_points(o, 11));
  }
  try {
    profile.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const double f_hz = o.freq.empty() ? spec.f0.hz() : number(o.freq, "freq");
  if (!(f_hz > 0.0) || !std::isfinite(f_hz)) throw UsageError("--freq must be a positive frequency");
  const Frequency f(f_hz);

  const SynthesizedNetwork net = synthesize(spec);
  const LoadModResult res = solve(net, profile, f);

  auto opt_re = [](const std::optional<complex>& z) { return z ? exact(z->real()) : std::string(); };
  auto opt_im = [](const std::optional<complex>& z) { return z ? exact(z->imag()) : std::string(); };
  std::string data = csv_line({"alpha", "pbo_db", "z_main_re_ohm", "z_main_im_ohm", "z_main_ext_re_ohm",
                               "z_main_ext_im_ohm", "z_aux_re_ohm", "z_aux_im_ohm", "p_out_w", "eta"});
  for (const auto& p : res.points) {
    data += csv_line({exact(p.alpha), std::isinf(p.pbo_db) ? "inf" : exact(p.pbo_db), opt_re(p.z_main),
                      opt_im(p.z_main), opt_re(p.z_main_ext), opt_im(p.z_main_ext), opt_re(p.z_aux),
                      opt_im(p.z_aux), exact(p.p_out), exact(p.eta)});
  }

  DriveProfile ends = profile;
  ends.alpha_grid = {profile.turn_on, 1.0};
  const LoadModResult e = solve(net, ends, f);
  std::ostringstream s;
  s << "z_main(pbo) = " << ohms(*e.points[0].z_main) << ", z_main(peak) = " << ohms(*e.points[1].z_main) << "\n";
  s << "pbo at turn-on = " << fixed(e.points[0].pbo_db, 2) << " dB\n";

  if (o.out.empty()) {
    out << data;
    err << s.str();
  } else {
    emit(o, data, out);
    out << s.str();
  }
}

// ---------------------------------------------------------------- eff

void cmd_eff(const RawOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.format.empty() && o.format != "csv") throw UsageError("eff writes csv only");
  const double peak = o.peak_eta.empty() ? kPi / 4.0 : number(o.peak_eta, "peak-eta");
  if (!(peak > 0.0 && peak <= 1.0)) throw UsageError("--peak-eta must lie in (0, 1]");
  const double depth = o.pbo.empty() ? default_pbo() : number(o.pbo, "pbo");
  const double pbo_max = number(o.pbo_max, "pbo-max");
  if (!(depth >= 0.0) || !(pbo_max > 0.0) || !std::isfinite(pbo_max)) {
    throw UsageError("--pbo must be >= 0 and --pbo-max > 0");
  }
  const std::vector<double> grid = linspace(0.0, pbo_max, grid_points(o, 61));
  const EfficiencyCurve c = ideal_efficiency_curves(grid, peak);

  std::string data = csv_line({"pbo_db", "eta_doherty", "eta_class_b", "eta_class_a", "ratio_doherty_class_b",
                               "ratio_doherty_class_a"});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    data += csv_line({exact(c.pbo_grid_db[k]), exact(c.doherty_ideal[k]), exact(c.class_b[k]), exact(c.class_a[k]),
                      exact(c.doherty_ideal[k] / c.class_b[k]), exact(c.doherty_ideal[k] / c.class_a[k])});
  }

  const double at[] = {depth};
  const EfficiencyCurve d = ideal_efficiency_curves(at, peak);
  std::ostringstream s;
  s << "at " << fixed(depth, 2) << " dB PBO: eta_doherty = " << fixed(d.doherty_ideal[0], 4)
    << ", eta_class_b = " << fixed(d.class_b[0], 4) << ", eta_class_a = " << fixed(d.class_a[0], 4) << "\n";
  s << "ratios doherty/class-B / doherty/class-A = " << fixed(d.doherty_ideal[0] / d.class_b[0], 2) << " / "
    << fixed(d.doherty_ideal[0] / d.class_a[0], 2) << "\n";
  s << "note: ideal current-source model without device or drive losses; realized chips land near "
    << fixed(100.0 * kMeasuredPae6db, 0) << " % PAE at 6 dB back-off\n";

  if (o.out.empty()) {
    out << data;
    err << s.str();
  } else {
    emit(o, data, out);
    out << s.str();
  }
}

// ---------------------------------------------------------------- convert

void cmd_convert(const RawOptions& o, std::ostream& out) {
  const std::string text = read_file(o.input);
  const double r_ref = number(o.r_ref, "r-ref");
  if (!(r_ref > 0.0) || !std::isfinite(r_ref)) throw UsageError("--r-ref must be positive");

  const bool from_csv = looks_like_sparams_csv(text);
  std::optional<touchstone::File> ts_in;
  SParams sp = from_csv ? sparams_from_csv(text, r_ref) : SParams({});
  if (!from_csv) {
    ts_in = touchstone::parse(text);
    sp = touchstone::to_sparams(*ts_in);
  }

  const std::string format = o.format.empty() ? (from_csv ? "touchstone" : "csv") : o.format;
  std::string data;
  if (format == "csv") {
    data = sparams_to_csv(sp);
  } else if (format == "touchstone") {
    const auto df = data_format_option(o).value_or(ts_in ? ts_in->format : touchstone::DataFormat::ri);
    touchstone::File f = touchstone::from_sparams(sp, df, unit_option(o));
    if (ts_in) f.comments = ts_in->comments;
    data = touchstone::serialize(f);
  } else {
    throw UsageError("--format must be csv or touchstone");
  }
  emit(o, data, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Series Doherty output-network synthesis and analysis", "dohertynet"};
  app.require_subcommand(1, 1);
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "key=value file; command-line flags override it");

  RawOptions o;
  app.add_option("--f0", o.f0, "design frequency (SI suffixes ok, e.g. 24G)")->capture_default_str();
  app.add_option("--z-opt", o.z_opt, "main device optimum load, ohm")->capture_default_str();
  app.add_option("--z-ant", o.z_ant, "antenna impedance, ohm")->capture_default_str();
  app.add_option("--z-inv", o.z_inv, "inverter impedance, ohm (default sqrt(z_opt*z_ant)/2)");
  app.add_option("--z-line1", o.z_line1, "line 1 impedance, ohm")->capture_default_str();
  app.add_option("--z-line2", o.z_line2, "line 2 impedance, ohm")->capture_default_str();
  app.add_option("--cout-main", o.cout_main, "main device output capacitance, F")->capture_default_str();
  app.add_option("--cout-aux", o.cout_aux, "aux device output capacitance, F")->capture_default_str();
  app.add_option("--turns-ratio", o.turns_ratio, "transformer 1:n (default sqrt(z_ant/z_opt))");
  app.add_option("--pbo", o.pbo, "back-off depth, dB (default 6.02)");
  app.add_option("--turn-on", o.turn_on, "aux turn-on drive level")->capture_default_str();
  app.add_option("--aux-phase", o.aux_phase, "aux current phase, degrees")->capture_default_str();
  app.add_option("--aux-scale", o.aux_scale, "aux current slope above turn-on")->capture_default_str();
  app.add_option("--alpha", o.alpha, "explicit drive levels for loadmod");
  app.add_option("--f-start", o.f_start, "sweep start, Hz")->capture_default_str();
  app.add_option("--f-stop", o.f_stop, "sweep stop, Hz")->capture_default_str();
  app.add_option("--points", o.points, "grid points (sweep 201, loadmod 11, eff 61)");
  app.add_option("--ql", o.ql, "inductor Q")->capture_default_str();
  app.add_option("--qc", o.qc, "capacitor Q")->capture_default_str();
  app.add_option("--peak-eta", o.peak_eta, "peak efficiency (default pi/4)");
  app.add_option("--pbo-max", o.pbo_max, "efficiency grid end, dB")->capture_default_str();
  app.add_option("--freq", o.freq, "loadmod evaluation frequency (default f0)");
  app.add_option("--out", o.out, "output path (default stdout)");
  app.add_option("--format", o.format, "csv | touchstone");
  app.add_option("--unit", o.unit, "touchstone frequency unit")->capture_default_str();
  app.add_option("--data-format", o.data_format, "touchstone data format RI | MA | DB");
  app.add_option("--r-ref", o.r_ref, "reference impedance for csv input, ohm")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "synthesize the network and print the design report");
  auto* sweep = app.add_subcommand("sweep", "S-parameter sweep of the realized network");
  auto* loadmod = app.add_subcommand("loadmod", "load-modulation trajectory vs drive level");
  auto* eff = app.add_subcommand("eff", "ideal efficiency vs back-off curves");
  auto* convert = app.add_subcommand("convert", "convert between touchstone and csv");
  convert->add_option("input", o.input, "input file (.s2p or csv)")->required();
  for (auto* sub : {synth, sweep, loadmod, eff, convert}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (synth->parsed()) cmd_synth(o, out);
    if (sweep->parsed()) cmd_sweep(o, out, err);
    if (loadmod->parsed()) cmd_loadmod(o, out, err);
    if (eff->parsed()) cmd_eff(o, out, err);
    if (convert->parsed()) cmd_convert(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace dohertynet::cli
