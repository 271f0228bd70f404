// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/mna.hpp"

#include <gtest/gtest.h>

#include "dohertynet/elements.hpp"
#include "dohertynet/error.hpp"
#include "ladders.hpp"
#include "oracles.hpp"

using namespace dohertynet;

TEST(MnaOracle, SeriesResistor) {
  mna::Netlist nl{{mna::Resistor{1, 2, 50.0}}};
  const AbcdMatrix m = mna::mna_oracle(nl, Frequency(1e9));
  EXPECT_LE(oracle::rel_err(m, oracle::series(50.0)), 1e-12);
}

TEST(MnaOracle, PiClcQuarterWaveAtF0) {
  const double z0 = 50.0, f0 = 24e9;
  const double w = oracle::omega(f0);
  mna::Netlist nl{{mna::Capacitor{1, 0, 1 / (w * z0)}, mna::Inductor{1, 2, z0 / w}, mna::Capacitor{2, 0, 1 / (w * z0)}}};
  const AbcdMatrix m = mna::mna_oracle(nl, Frequency(f0));
  EXPECT_LE(oracle::rel_err(m, oracle::inverter(z0, +1)), 1e-9);
}

TEST(MnaOracle, PerfectlyCoupledPairIsShuntInductor) {
  const double l = 1e-9, f = 24e9;
  mna::Netlist nl{{mna::MutualPair{1, 0, 2, 0, l, l, 1.0}}};
  const AbcdMatrix m = mna::mna_oracle(nl, Frequency(f));
  EXPECT_LE(oracle::rel_err(m, oracle::shunt(1.0 / (oracle::j * oracle::omega(f) * l))), 1e-9);
}

TEST(MnaOracle, CoupledPairMatchesClosedForm) {
  auto g = oracle::rng(11);
  for (int t = 0; t < 50; ++t) {
    const double lp = oracle::log_uniform(g, 0.1e-9, 5e-9), ls = oracle::log_uniform(g, 0.1e-9, 5e-9);
    const double k = oracle::uniform(g, 0.1, 1.0);
    const Frequency f(oracle::uniform(g, 1e9, 40e9));
    mna::Netlist nl{{mna::MutualPair{1, 0, 2, 0, lp, ls, k}}};
    EXPECT_LE(relative_difference(coupled_inductor_abcd(lp, ls, k, f), mna::mna_oracle(nl, f)), 1e-9);
  }
}

TEST(MnaOracle, ArbitraryNodeIds) {
  mna::Netlist nl{{mna::Resistor{7, 12, 20.0}, mna::Resistor{12, 9, 30.0}}, {7, 0}, {9, 0}};
  const AbcdMatrix m = mna::mna_oracle(nl, Frequency(1e9));
  EXPECT_LE(oracle::rel_err(m, oracle::series(50.0)), 1e-12);
}

// Property: >= 100 random ladders of <= 8 elements agree with the cascade.
TEST(MnaProperty, RandomLaddersMatchCascade) {
  auto g = oracle::rng(12);
  for (int t = 0; t < 300; ++t) {
    const auto lad = ladders::random_ladder(g, 8);
    const Frequency f(oracle::uniform(g, 1e9, 40e9));
    EXPECT_LE(relative_difference(cascade_elements(lad.chain, f), mna::mna_oracle(lad.netlist, f)), 1e-9)
        << "trial " << t;
  }
}

TEST(MnaProperty, SixBranchRlcLadders) {
  auto g = oracle::rng(13);
  for (int t = 0; t < 100; ++t) {
    ladders::Ladder lad;
    int cur = 1, next_id = 2;
    for (int k = 0; k < 6; ++k) {
      lad.chain.push_back(ladders::random_element(g, k % 2 == 0, false));
      cur = ladders::stamp(lad.chain.back(), cur, next_id, lad.netlist);
    }
    lad.netlist.port2 = {cur, 0};
    const Frequency f(oracle::uniform(g, 1e9, 40e9));
    EXPECT_LE(relative_difference(cascade_elements(lad.chain, f), mna::mna_oracle(lad.netlist, f)), 1e-9);
  }
}

TEST(Netlist, Validation) {
  EXPECT_THROW(mna::Netlist{}.validate(), InvalidArgument);
  EXPECT_THROW((mna::Netlist{{mna::Resistor{1, 2, -1.0}}}.validate()), InvalidArgument);
  EXPECT_THROW((mna::Netlist{{mna::Resistor{1, -2, 1.0}}}.validate()), InvalidArgument);
  EXPECT_THROW((mna::Netlist{{mna::MutualPair{1, 0, 2, 0, 1e-9, 1e-9, 1.5}}}.validate()), InvalidArgument);
  // Port 2 not connected to anything.
  EXPECT_THROW((mna::Netlist{{mna::Resistor{1, 0, 1.0}}, {1, 0}, {5, 0}}.validate()), InvalidArgument);
  EXPECT_THROW((mna::Netlist{{mna::Resistor{1, 2, 1.0}}, {1, 1}, {2, 0}}.validate()), InvalidArgument);
}

TEST(MnaOracle, SharedPortNodesAreAShunt) {
  mna::Netlist nl{{mna::Resistor{1, 0, 10.0}}, {1, 0}, {1, 0}};
  EXPECT_LE(oracle::rel_err(mna::mna_oracle(nl, Frequency(1e9)), oracle::shunt(0.1)), 1e-12);
}

TEST(MnaOracle, DegenerateThrows) {
  // Two grounded resistors with no path between the ports: no chain matrix.
  mna::Netlist nl{{mna::Resistor{1, 0, 10.0}, mna::Resistor{2, 0, 10.0}}, {1, 0}, {2, 0}};
  EXPECT_THROW(mna::mna_oracle(nl, Frequency(1e9)), DegenerateNetwork);
}
