// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <string>

#include "dohertynet/error.hpp"
#include "dohertynet/kernels.hpp"

namespace dohertynet::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(DOHERTYNET_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return has;
#else
  return false;
#endif
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

detail::PreparedLadder prepare(std::span<const Stage> stages, std::size_t n_freq, const LossModel& losses) {
  if (!(losses.q_l > 0.0) || !(losses.q_c > 0.0)) throw InvalidArgument("ladder: Q values must be > 0");
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const Stage& st = stages[k];
    const bool table = st.kind == StageKind::series_table || st.kind == StageKind::shunt_table;
    if (table) {
      if (st.table.size() != n_freq) {
        throw InvalidArgument("ladder: table stage " + std::to_string(k) + " has wrong length");
      }
    } else if (!positive(st.value)) {
      throw InvalidArgument("ladder: stage " + std::to_string(k) + " value must be positive");
    }
  }
  return {stages, 1.0 / losses.q_l, 1.0 / losses.q_c};
}

}  // namespace

Isa detect_isa() noexcept { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

bool isa_available(Isa isa) noexcept { return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2()); }

const char* to_string(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void AbcdBatch::resize(std::size_t n) {
  for (auto* v : {&a_re, &a_im, &b_re, &b_im, &c_re, &c_im, &d_re, &d_im}) v->assign(n, 0.0);
}

void SBatch::resize(std::size_t n) {
  for (auto* v : {&s11_re, &s11_im, &s12_re, &s12_im, &s21_re, &s21_im, &s22_re, &s22_im}) v->assign(n, 0.0);
}

void evaluate_ladder(std::span<const Stage> stages, std::span<const double> freq_hz, const LossModel& losses,
                     AbcdBatch& out, Isa isa) {
  if (!isa_available(isa)) throw InvalidArgument(std::string("ladder: ISA not available: ") + to_string(isa));
  for (double f : freq_hz) {
    if (!positive(f)) throw InvalidArgument("ladder: frequencies must be positive");
  }
  const auto ladder = prepare(stages, freq_hz.size(), losses);
  out.resize(freq_hz.size());
  std::size_t done = 0;
#if defined(DOHERTYNET_BUILD_AVX2)
  if (isa == Isa::avx2) {
    detail::ladder_avx2(ladder, freq_hz, out);
    done = freq_hz.size() - freq_hz.size() % detail::kAvx2Lanes;
  }
#endif
  detail::ladder_scalar(ladder, freq_hz, out, done, freq_hz.size());
}

void evaluate_ladder(std::span<const Stage> stages, std::span<const double> freq_hz, const LossModel& losses,
                     AbcdBatch& out) {
  evaluate_ladder(stages, freq_hz, losses, out, detect_isa());
}

std::size_t abcd_to_s(const AbcdBatch& in, double z01, double z02, SBatch& out, Isa isa) {
  if (!isa_available(isa)) throw InvalidArgument(std::string("abcd_to_s: ISA not available: ") + to_string(isa));
  if (!positive(z01) || !positive(z02)) throw InvalidArgument("abcd_to_s: reference impedances must be positive");
  out.resize(in.size());
  std::size_t done = 0;
  std::size_t first_bad = kNoSingularity;
#if defined(DOHERTYNET_BUILD_AVX2)
  if (isa == Isa::avx2) {
    first_bad = detail::abcd_to_s_avx2(in, z01, z02, out);
    done = in.size() - in.size() % detail::kAvx2Lanes;
  }
#endif
  const std::size_t tail_bad = detail::abcd_to_s_scalar(in, z01, z02, out, done, in.size());
  return first_bad != kNoSingularity ? first_bad : tail_bad;
}

std::size_t abcd_to_s(const AbcdBatch& in, double z01, double z02, SBatch& out) {
  return abcd_to_s(in, z01, z02, out, detect_isa());
}

}  // namespace dohertynet::kernels
