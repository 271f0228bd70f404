// SPDX-License-Identifier: Apache-2.0

#include "dohertynet/fit_transformer.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "dohertynet/error.hpp"

namespace dohertynet {

namespace {

constexpr std::size_t kMinBandPoints = 8;
constexpr double kDampingStart = 1e-3;
constexpr double kDampingMax = 1e16;
constexpr double kStep = 1e-6;  // central-difference step in log space

// Which model fields are free, in parameter-vector order.
enum class Param { lm, lk, n, cap };

struct Problem {
  std::vector<TwoPortSpectrum::Point> band;
  std::optional<TwoPortSpectrum::Point> anchor;
  std::vector<Param> free;
  TransformerModel base;
  const FitOptions* opt;

  TransformerModel model_at(const Eigen::VectorXd& x) const {
    TransformerModel m = base;
    for (std::size_t i = 0; i < free.size(); ++i) {
      const double v = std::exp(x[static_cast<Eigen::Index>(i)]);
      switch (free[i]) {
        case Param::lm: m.lm = v; break;
        case Param::lk: m.lk = v; break;
        case Param::n: m.n = v; break;
        case Param::cap: m.series_cap = v; break;
      }
    }
    return TransformerModel::from_inductances(m.lm, m.lk, m.n, m.series_cap);
  }

  Eigen::Index rows() const { return static_cast<Eigen::Index>(8 * (band.size() + (anchor ? 1 : 0))); }

  void put(Eigen::VectorXd& r, Eigen::Index& row, const AbcdMatrix& got, const AbcdMatrix& want,
           double w) const {
    const double zs = opt->z_scale;
    const complex diffs[4] = {got.a - want.a, (got.b - want.b) / zs, (got.c - want.c) * zs, got.d - want.d};
    for (const complex& dv : diffs) {
      r[row++] = w * dv.real();
      r[row++] = w * dv.imag();
    }
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    const TransformerModel m = model_at(x);
    Eigen::VectorXd r(rows());
    Eigen::Index row = 0;
    for (const auto& p : band) put(r, row, fit_model_abcd(m, opt->device_shunt_c, p.f), p.m, 1.0);
    if (anchor) put(r, row, fit_model_abcd(m, opt->device_shunt_c, anchor->f), anchor->m, opt->anchor_weight);
    return r;
  }

  double band_rms(const Eigen::VectorXd& r) const {
    const Eigen::Index n = static_cast<Eigen::Index>(8 * band.size());
    return std::sqrt(r.head(n).squaredNorm() / static_cast<double>(n));
  }
};

}  // namespace

AbcdMatrix fit_model_abcd(const TransformerModel& model, double device_shunt_c, Frequency f) {
  const AbcdMatrix t = transformer_two_port(model, f);
  if (device_shunt_c <= 0.0) return t;
  return shunt_element(capacitor_admittance(device_shunt_c, f)) * t;
}

FitResult fit_transformer(const TwoPortSpectrum& target, FitBand band, const TransformerModel& initial,
                          const FitOptions& options) {
  initial.validate();
  if (!(band.f_lo_hz < band.f_hi_hz)) throw InvalidArgument("fit_transformer: band must have f_lo < f_hi");
  if (band.f_lo_hz < target.points().front().f.hz() || band.f_hi_hz > target.points().back().f.hz()) {
    throw InvalidArgument("fit_transformer: band lies outside the target frequency range");
  }
  if (!(options.z_scale > 0.0) || options.max_iterations < 1 || !(options.anchor_weight > 0.0) ||
      options.device_shunt_c < 0.0) {
    throw InvalidArgument("fit_transformer: invalid options");
  }

  Problem pb{.band = {}, .anchor = std::nullopt, .free = {}, .base = initial, .opt = &options};
  for (const auto& p : target) {
    if (p.f.hz() >= band.f_lo_hz && p.f.hz() <= band.f_hi_hz) pb.band.push_back(p);
    if (options.anchor && p.f == *options.anchor) pb.anchor = p;
  }
  if (pb.band.size() < kMinBandPoints) {
    throw InvalidArgument("fit_transformer: need at least 8 points in band, got " + std::to_string(pb.band.size()));
  }
  if (options.anchor && !pb.anchor) throw InvalidArgument("fit_transformer: anchor is not a target frequency");

  std::vector<double> x0;
  auto add = [&](Param p, double v) {
    if (v > 0.0) {
      pb.free.push_back(p);
      x0.push_back(std::log(v));
    }
  };
  add(Param::lm, initial.lm);
  add(Param::lk, initial.lk);
  add(Param::n, initial.n);
  if (initial.series_cap) add(Param::cap, *initial.series_cap);

  const Eigen::Index np = static_cast<Eigen::Index>(x0.size());
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), np);
  Eigen::VectorXd r = pb.residual(x);
  double cost = r.squaredNorm();
  double lambda = kDampingStart;

  FitResult out{.model = pb.model_at(x)};
  int it = 0;
  while (it < options.max_iterations && cost > 0.0) {
    ++it;
    Eigen::MatrixXd jac(r.size(), np);
    for (Eigen::Index k = 0; k < np; ++k) {
      Eigen::VectorXd xp = x, xm = x;
      xp[k] += kStep;
      xm[k] -= kStep;
      jac.col(k) = (pb.residual(xp) - pb.residual(xm)) / (2.0 * kStep);
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;

    bool accepted = false;
    while (lambda <= kDampingMax) {
      Eigen::MatrixXd lhs = jtj;
      lhs.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
      const Eigen::VectorXd step = lhs.ldlt().solve(-g);
      const Eigen::VectorXd xn = x + step;
      const Eigen::VectorXd rn = pb.residual(xn);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        const double decrease = (cost - cn) / cost;
        x = xn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (decrease < options.relative_decrease) out.converged = true;
        break;
      }
      lambda *= 10.0;
    }
    // No downhill step at any damping: x is stationary to working precision.
    if (!accepted) out.converged = true;
    if (out.converged) break;
  }
  if (cost == 0.0) out.converged = true;

  out.model = pb.model_at(x);
  out.iterations = it;
  out.residual = pb.band_rms(r);
  out.within_tolerance = out.residual <= options.residual_tolerance;
  return out;
}

}  // namespace dohertynet
