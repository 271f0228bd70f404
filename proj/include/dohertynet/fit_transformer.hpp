// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_FIT_TRANSFORMER_HPP
#define DOHERTYNET_FIT_TRANSFORMER_HPP

#include <optional>

#include "dohertynet/elements.hpp"
#include "dohertynet/twoport.hpp"

namespace dohertynet {

struct FitBand {
  double f_lo_hz;
  double f_hi_hz;
};

struct FitOptions {
  // Stop once an accepted step lowers the cost by less than this fraction.
  double relative_decrease = 1e-10;
  int max_iterations = 200;
  // b is divided and c multiplied by this before differencing.
  double z_scale = 50.0;
  // Fixed shunt capacitor ahead of the transformer (device side). The
  // canonical transformer alone has no shunt C on the primary, so fitting a
  // line cascade needs it held at the absorbed value.
  double device_shunt_c = 0.0;
  // Optional frequency (must be a target point) weighted by anchor_weight so
  // the fit is exact there rather than best-on-average.
  std::optional<Frequency> anchor;
  double anchor_weight = 1e5;
  // within_tolerance is set when the RMS band residual is below this.
  double residual_tolerance = 1e-6;
};

struct FitResult {
  TransformerModel model;
  bool converged = false;
  bool within_tolerance = false;
  double residual = 0.0;  // RMS of the balanced entry differences over the band
  int iterations = 0;
};

// Model evaluated by the fitter: shunt(device_shunt_c) * transformer.
AbcdMatrix fit_model_abcd(const TransformerModel& model, double device_shunt_c, Frequency f);

// Damped least squares over lm, lk, n and (if present) series_cap, all in log
// space. Parameters that start at zero stay at zero. Throws InvalidArgument if
// the band is outside the target or holds fewer than 8 points.
FitResult fit_transformer(const TwoPortSpectrum& target, FitBand band, const TransformerModel& initial,
                          const FitOptions& options = {});

}  // namespace dohertynet

#endif  // DOHERTYNET_FIT_TRANSFORMER_HPP
