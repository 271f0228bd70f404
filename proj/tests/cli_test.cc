// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "dohertynet/error.hpp"
#include "dohertynet/touchstone.hpp"
#include "format.hpp"

using namespace dohertynet;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("dohertynet_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

bool contains(const std::string& h, const std::string& n) { return h.find(n) != std::string::npos; }

}  // namespace

TEST(Format, ParseSi) {
  EXPECT_EQ(cli::parse_si("24G"), 24e9);
  EXPECT_EQ(cli::parse_si("24GHz"), 24e9);
  EXPECT_EQ(cli::parse_si("150f"), 150e-15);
  EXPECT_EQ(cli::parse_si("331.6pH"), 331.6e-12);
  EXPECT_EQ(cli::parse_si("50"), 50.0);
  EXPECT_EQ(cli::parse_si("50ohm"), 50.0);
  EXPECT_EQ(cli::parse_si("1.5k"), 1500.0);
  EXPECT_EQ(cli::parse_si("2m"), 2e-3);
  EXPECT_EQ(cli::parse_si("3M"), 3e6);
  EXPECT_TRUE(std::isinf(*cli::parse_si("inf")));
  EXPECT_FALSE(cli::parse_si("abc"));
  EXPECT_FALSE(cli::parse_si(""));
  EXPECT_FALSE(cli::parse_si("24X"));
}

TEST(Format, Numbers) {
  EXPECT_EQ(cli::fixed(-1e-12, 3), "0.000");
  EXPECT_EQ(cli::fixed(2.0, 2), "2.00");
  EXPECT_EQ(cli::exact(0.1), "0.1");
  EXPECT_EQ(cli::engineering(331.57e-12, "H"), "331.57 pH");
  EXPECT_EQ(cli::engineering(24e9, "Hz"), "24.00 GHz");
}

TEST(Csv, RoundTrip) {
  std::vector<SParams::Point> pts{{Frequency(1e9), {{0.1, -0.2}, {0.3, 0.4}, {0.5, 0.6}, {-0.7, 0.8}}},
                                  {Frequency(2.5e9), {{1, 0}, {0, 1}, {0, -1}, {0.25, 0.125}}}};
  const SParams sp(pts, 50);
  const std::string text = cli::sparams_to_csv(sp);
  EXPECT_TRUE(cli::looks_like_sparams_csv(text));
  EXPECT_EQ(text.substr(0, cli::kSparamsHeader.size()), cli::kSparamsHeader);
  const SParams back = cli::sparams_from_csv(text, 50);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].f.hz(), 2.5e9);
  EXPECT_EQ(back[0].s.s22, complex(-0.7, 0.8));
  EXPECT_THROW(cli::sparams_from_csv(std::string(cli::kSparamsHeader) + "\n1,2,3\n", 50), ParseError);
  EXPECT_FALSE(cli::looks_like_sparams_csv("# GHz S RI R 50\n"));
}

TEST(Cli, SynthReport) {
  const CliRun r = run({"synth"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "ITR at PBO  = 1.00"));
  EXPECT_TRUE(contains(r.out, "ITR at peak = 2.00"));
  EXPECT_TRUE(contains(r.out, "331.57 pH"));
  EXPECT_TRUE(contains(r.out, "132.63 fF"));
  EXPECT_TRUE(contains(r.out, "(exact)"));
  EXPECT_TRUE(contains(r.out, "textbook parallel baseline: ITR at PBO = 2.00"));
  EXPECT_FALSE(contains(r.out, "warning"));
}

TEST(Cli, SynthWarnsOnDetunedLines) {
  const CliRun r = run({"synth", "--z-line2", "55"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(contains(r.out, "warning: "));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"synth", "--no-such-flag"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"synth", "--f0", "abc"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--points", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"loadmod", "--freq", "0"}).code, cli::kExitUsage);
  const CliRun infeasible = run({"synth", "--cout-main", "150f"});
  EXPECT_EQ(infeasible.code, cli::kExitDomain);
  EXPECT_TRUE(contains(infeasible.err, "132.63 fF"));
  EXPECT_EQ(run({"convert", "/nonexistent/dir/x.s2p"}).code, cli::kExitIo);
  EXPECT_EQ(run({"synth", "--out", "/nonexistent/dir/report.txt"}).code, cli::kExitIo);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, MalformedTouchstoneIsDomainError) {
  TempDir d;
  write(d.file("bad.s2p"), "# GHz S RI R 50\n1 0 0\n");
  const CliRun r = run({"convert", d.file("bad.s2p")});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_TRUE(contains(r.err, "line 2"));
}

TEST(Cli, SweepSummaryAndData) {
  const CliRun r = run({"sweep"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, cli::kSparamsHeader.size()), cli::kSparamsHeader);
  EXPECT_TRUE(contains(r.err, "-3 dB band"));
  EXPECT_TRUE(contains(r.err, "|S11(f0)|"));
  const SParams sp = cli::sparams_from_csv(r.out, 50);
  EXPECT_EQ(sp.size(), 201u);
  EXPECT_EQ(sp[0].f.hz(), 18e9);
  EXPECT_EQ(sp[200].f.hz(), 32e9);
}

TEST(Cli, SweepToTouchstoneFile) {
  TempDir d;
  const CliRun r = run({"sweep", "--format", "touchstone", "--unit", "Hz", "--points", "11", "--out", d.file("s.s2p")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "-3 dB band"));
  const touchstone::File f = touchstone::parse(slurp(d.file("s.s2p")));
  EXPECT_EQ(f.freq_unit, touchstone::FreqUnit::hz);
  EXPECT_EQ(f.rows.size(), 11u);
  EXPECT_EQ(f.rows[0].freq, 18e9);
  EXPECT_EQ(run({"sweep", "--format", "touchstone", "--z-opt", "25"}).code, cli::kExitUsage);
}

TEST(Cli, LoadmodSummary) {
  const CliRun r = run({"loadmod"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "alpha,pbo_db,z_main_re_ohm"));
  EXPECT_TRUE(contains(r.err, "z_main(pbo) = 50.00"));
  EXPECT_TRUE(contains(r.err, "z_main(peak) = 25.00"));
  EXPECT_TRUE(contains(r.err, "pbo at turn-on = 6.02 dB"));
}

TEST(Cli, EffSummary) {
  const CliRun r = run({"eff", "--peak-eta", "0.39"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "pbo_db,eta_doherty,eta_class_b"));
  EXPECT_TRUE(contains(r.err, "ratios doherty/class-B / doherty/class-A = 2.00 / 4.00"));
}

TEST(Cli, Deterministic) {
  TempDir d;
  for (const char* name : {"a.csv", "b.csv"}) {
    ASSERT_EQ(run({"sweep", "--ql", "30", "--qc", "60", "--out", d.file(name)}).code, cli::kExitOk);
  }
  EXPECT_EQ(slurp(d.file("a.csv")), slurp(d.file("b.csv")));
  EXPECT_EQ(run({"loadmod"}).out, run({"loadmod"}).out);
}

TEST(Cli, ConvertRoundTrip) {
  TempDir d;
  ASSERT_EQ(run({"sweep", "--format", "touchstone", "--data-format", "MA", "--points", "21", "--out", d.file("a.s2p")})
                .code,
            cli::kExitOk);
  ASSERT_EQ(run({"convert", d.file("a.s2p"), "--out", d.file("a.csv")}).code, cli::kExitOk);
  ASSERT_EQ(run({"convert", d.file("a.csv"), "--data-format", "MA", "--out", d.file("b.s2p")}).code, cli::kExitOk);
  const SParams a = touchstone::to_sparams(touchstone::parse(slurp(d.file("a.s2p"))));
  const SParams b = touchstone::to_sparams(touchstone::parse(slurp(d.file("b.s2p"))));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].f.hz(), b[k].f.hz());
    EXPECT_LE(std::abs(a[k].s.s21 - b[k].s.s21), 1e-8);
    EXPECT_LE(std::abs(a[k].s.s11 - b[k].s.s11), 1e-8);
  }
}

TEST(Cli, ConvertChangesUnit) {
  TempDir d;
  write(d.file("g.s2p"), "! keep me\n# GHz S RI R 50\n24 0 0 1 0 1 0 0 0\n");
  const CliRun r = run({"convert", d.file("g.s2p"), "--format", "touchstone", "--unit", "Hz"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const touchstone::File f = touchstone::parse(r.out);
  EXPECT_EQ(f.freq_unit, touchstone::FreqUnit::hz);
  EXPECT_EQ(f.rows[0].freq, 24e9);
  EXPECT_EQ(f.comments, std::vector<std::string>{" keep me"});
}

TEST(Cli, ConfigFileWithOverride) {
  TempDir d;
  write(d.file("design.ini"), "z-line2=55\ncout-main=150f\n");
  EXPECT_EQ(run({"synth", "--config", d.file("design.ini")}).code, cli::kExitDomain);
  const CliRun r = run({"synth", "--config", d.file("design.ini"), "--cout-main", "10f"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "warning: "));
}
