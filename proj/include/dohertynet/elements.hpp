// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_ELEMENTS_HPP
#define DOHERTYNET_ELEMENTS_HPP

#include <array>
#include <limits>
#include <optional>
#include <variant>

#include "dohertynet/twoport.hpp"

namespace dohertynet {

/// Finite component quality factors. A lossy inductor becomes
/// jwL(1 + 1/(jQ)), a lossy capacitor admittance jwC(1 + 1/(jQ)).
struct Losses {
  double q_l = std::numeric_limits<double>::infinity();
  double q_c = std::numeric_limits<double>::infinity();

  static Losses lossless() { return {}; }
};

complex inductor_impedance(double henries, Frequency f, const Losses& losses = {});
complex capacitor_admittance(double farads, Frequency f, const Losses& losses = {});

struct SeriesR { double ohms; };
struct SeriesL { double henries; };
struct SeriesC { double farads; };
struct ShuntR { double ohms; };
struct ShuntL { double henries; };
struct ShuntC { double farads; };

// Lossless line; theta_deg is the electrical length at f0.
struct IdealTline {
  double z0;
  double theta_deg;
  Frequency f0;
};

// 1:n ideal transformer in chain form [[n, 0], [0, 1/n]] (Zin = n^2 ZL).
struct IdealTransformer { double n; };

struct CoupledInductors {
  double lp;
  double ls;
  double k;
};

using Element = std::variant<SeriesR, SeriesL, SeriesC, ShuntR, ShuntL, ShuntC, IdealTline,
                             IdealTransformer, CoupledInductors>;

// Throws InvalidArgument if a value violates its physical range.
void validate(const Element& e);

AbcdMatrix abcd(const Element& e, Frequency f, const Losses& losses = {});
AbcdMatrix cascade_elements(std::span<const Element> chain, Frequency f, const Losses& losses = {});

AbcdMatrix tline_abcd(double z0, double theta_deg, Frequency f0, Frequency f);

enum class QuarterWaveKind {
  pi_clc,   // shunt C, series L, shunt C: [[0, jZ0], [j/Z0, 0]] at f0
  pi_lcl,   // shunt L, series C, shunt L: [[0, -jZ0], [-j/Z0, 0]] at f0
  tee_lcl,  // series L, shunt C, series L: [[0, jZ0], [j/Z0, 0]] at f0
};

const char* to_string(QuarterWaveKind kind);

/// Three-element lumped network that equals a quarter-wave line of
/// impedance z0 at f0, with L = z0/w0 and C = 1/(w0 z0).
struct QuarterWaveEquiv {
  QuarterWaveKind kind;
  double z0;
  Frequency f0;
  double l;
  double c;
  std::array<Element, 3> elements;

  AbcdMatrix abcd(Frequency f, const Losses& losses = {}) const;
};

QuarterWaveEquiv quarter_wave_equiv(QuarterWaveKind kind, double z0, Frequency f0);

AbcdMatrix coupled_inductor_abcd(double lp, double ls, double k, Frequency f);
AbcdMatrix ideal_transformer_abcd(double n);

/// Practical transformer: series leakage lk (plus an optional series
/// capacitor) on the primary, shunt magnetizing lm, then an ideal 1:n
/// step with n = secondary/primary turns, so Zin ~ ZL / n^2.
struct TransformerModel {
  double lm;
  double lk;
  double n;
  double k;
  std::optional<double> series_cap;

  // Coupling k = sqrt(lm / (lm + lk)) of the equivalent primary-referred
  // winding pair.
  static TransformerModel from_inductances(double lm, double lk, double n,
                                           std::optional<double> series_cap = std::nullopt);

  void validate() const;
};

AbcdMatrix transformer_two_port(const TransformerModel& model, Frequency f, const Losses& losses = {});

}  // namespace dohertynet

#endif  // DOHERTYNET_ELEMENTS_HPP
