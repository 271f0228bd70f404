// SPDX-License-Identifier: Apache-2.0

// AVX2 variants: four frequency points per __m256d lane group. Compiled with
// -mavx2 -mfma and only reached after the dispatcher's cpuid check.

#include <immintrin.h>

#include <cmath>

#include "dohertynet/kernels.hpp"
#include "dohertynet/twoport.hpp"

namespace dohertynet::kernels::detail {

namespace {

struct Vcx {
  __m256d re;
  __m256d im;
};

inline Vcx vmul(Vcx x, Vcx y) {
  return {_mm256_sub_pd(_mm256_mul_pd(x.re, y.re), _mm256_mul_pd(x.im, y.im)),
          _mm256_add_pd(_mm256_mul_pd(x.re, y.im), _mm256_mul_pd(x.im, y.re))};
}

inline Vcx vadd(Vcx x, Vcx y) { return {_mm256_add_pd(x.re, y.re), _mm256_add_pd(x.im, y.im)}; }

inline Vcx vreciprocal(Vcx x) {
  const __m256d m = _mm256_add_pd(_mm256_mul_pd(x.re, x.re), _mm256_mul_pd(x.im, x.im));
  const __m256d zero = _mm256_setzero_pd();
  return {_mm256_div_pd(x.re, m), _mm256_sub_pd(zero, _mm256_div_pd(x.im, m))};
}

inline Vcx vscale(Vcx x, __m256d s) { return {_mm256_mul_pd(x.re, s), _mm256_mul_pd(x.im, s)}; }

// Gathers table[i..i+3] (interleaved re/im) into split registers.
inline Vcx load_table(const std::complex<double>* p) {
  const double* raw = reinterpret_cast<const double*>(p);
  const __m256d lo = _mm256_loadu_pd(raw);      // r0 i0 r1 i1
  const __m256d hi = _mm256_loadu_pd(raw + 4);  // r2 i2 r3 i3
  const __m256d re = _mm256_unpacklo_pd(lo, hi);  // r0 r2 r1 r3
  const __m256d im = _mm256_unpackhi_pd(lo, hi);  // i0 i2 i1 i3
  return {_mm256_permute4x64_pd(re, 0xD8), _mm256_permute4x64_pd(im, 0xD8)};
}

inline void store(double* re, double* im, std::size_t i, Vcx v) {
  _mm256_storeu_pd(re + i, v.re);
  _mm256_storeu_pd(im + i, v.im);
}

inline Vcx load(const std::vector<double>& re, const std::vector<double>& im, std::size_t i) {
  return {_mm256_loadu_pd(re.data() + i), _mm256_loadu_pd(im.data() + i)};
}

}  // namespace

void ladder_avx2(const PreparedLadder& ladder, std::span<const double> freq_hz, AbcdBatch& out) {
  const std::size_t n = freq_hz.size() - freq_hz.size() % kAvx2Lanes;
  const __m256d two_pi = _mm256_set1_pd(2.0 * kPi);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d inv_q_l = _mm256_set1_pd(ladder.inv_q_l);
  const __m256d inv_q_c = _mm256_set1_pd(ladder.inv_q_c);

  for (std::size_t i = 0; i < n; i += kAvx2Lanes) {
    const __m256d w = _mm256_mul_pd(two_pi, _mm256_loadu_pd(freq_hz.data() + i));
    Vcx a{one, zero};
    Vcx b{zero, zero};
    Vcx c{zero, zero};
    Vcx d{one, zero};
    for (const Stage& st : ladder.stages) {
      const __m256d value = _mm256_set1_pd(st.value);
      switch (st.kind) {
        case StageKind::series_r:
        case StageKind::series_l:
        case StageKind::series_c:
        case StageKind::series_table: {
          Vcx z;
          if (st.kind == StageKind::series_r) {
            z = {value, zero};
          } else if (st.kind == StageKind::series_l) {
            const __m256d x = _mm256_mul_pd(w, value);
            z = {_mm256_mul_pd(x, inv_q_l), x};
          } else if (st.kind == StageKind::series_c) {
            const __m256d bc = _mm256_mul_pd(w, value);
            z = vreciprocal({_mm256_mul_pd(bc, inv_q_c), bc});
          } else {
            z = load_table(st.table.data() + i);
          }
          b = vadd(vmul(a, z), b);
          d = vadd(vmul(c, z), d);
          break;
        }
        case StageKind::shunt_r:
        case StageKind::shunt_l:
        case StageKind::shunt_c:
        case StageKind::shunt_table: {
          Vcx y;
          if (st.kind == StageKind::shunt_r) {
            y = {_mm256_div_pd(one, value), zero};
          } else if (st.kind == StageKind::shunt_l) {
            const __m256d x = _mm256_mul_pd(w, value);
            y = vreciprocal({_mm256_mul_pd(x, inv_q_l), x});
          } else if (st.kind == StageKind::shunt_c) {
            const __m256d bc = _mm256_mul_pd(w, value);
            y = {_mm256_mul_pd(bc, inv_q_c), bc};
          } else {
            y = load_table(st.table.data() + i);
          }
          a = vadd(a, vmul(b, y));
          c = vadd(c, vmul(d, y));
          break;
        }
        case StageKind::ideal_transformer: {
          const __m256d inv_n = _mm256_div_pd(one, value);
          a = vscale(a, value);
          c = vscale(c, value);
          b = vscale(b, inv_n);
          d = vscale(d, inv_n);
          break;
        }
      }
    }
    store(out.a_re.data(), out.a_im.data(), i, a);
    store(out.b_re.data(), out.b_im.data(), i, b);
    store(out.c_re.data(), out.c_im.data(), i, c);
    store(out.d_re.data(), out.d_im.data(), i, d);
  }
}

std::size_t abcd_to_s_avx2(const AbcdBatch& in, double z01, double z02, SBatch& out) {
  const std::size_t n = in.size() - in.size() % kAvx2Lanes;
  const double root_s = std::sqrt(z01 * z02);
  const __m256d vz01 = _mm256_set1_pd(z01);
  const __m256d vz02 = _mm256_set1_pd(z02);
  const __m256d vz12 = _mm256_set1_pd(z01 * z02);
  const __m256d two_root = _mm256_set1_pd(2.0 * root_s);
  const __m256d threshold = _mm256_set1_pd(kSingularThreshold * root_s);
  const __m256d zero = _mm256_setzero_pd();

  std::size_t first_bad = kNoSingularity;
  for (std::size_t i = 0; i < n; i += kAvx2Lanes) {
    const Vcx a = load(in.a_re, in.a_im, i);
    const Vcx b = load(in.b_re, in.b_im, i);
    const Vcx c = load(in.c_re, in.c_im, i);
    const Vcx d = load(in.d_re, in.d_im, i);
    const Vcx az = vscale(a, vz02);
    const Vcx cz = vscale(c, vz12);
    const Vcx dz = vscale(d, vz01);
    const Vcx den{_mm256_add_pd(_mm256_add_pd(_mm256_add_pd(az.re, b.re), cz.re), dz.re),
                  _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(az.im, b.im), cz.im), dz.im)};
    const __m256d mag2 = _mm256_add_pd(_mm256_mul_pd(den.re, den.re), _mm256_mul_pd(den.im, den.im));
    if (first_bad == kNoSingularity) {
      // NaN compares false, so it is flagged as well.
      const __m256d ok = _mm256_cmp_pd(_mm256_sqrt_pd(mag2), threshold, _CMP_GE_OQ);
      const int mask = _mm256_movemask_pd(ok);
      if (mask != 0xF) {
        for (int lane = 0; lane < 4; ++lane) {
          if (!(mask & (1 << lane))) {
            first_bad = i + static_cast<std::size_t>(lane);
            break;
          }
        }
      }
    }
    const Vcx inv{_mm256_div_pd(den.re, mag2), _mm256_sub_pd(zero, _mm256_div_pd(den.im, mag2))};
    const Vcx n11{_mm256_sub_pd(_mm256_sub_pd(_mm256_add_pd(az.re, b.re), cz.re), dz.re),
                  _mm256_sub_pd(_mm256_sub_pd(_mm256_add_pd(az.im, b.im), cz.im), dz.im)};
    const Vcx n22{_mm256_add_pd(_mm256_sub_pd(_mm256_add_pd(_mm256_sub_pd(zero, az.re), b.re), cz.re), dz.re),
                  _mm256_add_pd(_mm256_sub_pd(_mm256_add_pd(_mm256_sub_pd(zero, az.im), b.im), cz.im), dz.im)};
    const Vcx ad = vmul(a, d);
    const Vcx bc = vmul(b, c);
    const Vcx det{_mm256_sub_pd(ad.re, bc.re), _mm256_sub_pd(ad.im, bc.im)};
    const Vcx s21 = vscale(inv, two_root);
    store(out.s11_re.data(), out.s11_im.data(), i, vmul(n11, inv));
    store(out.s22_re.data(), out.s22_im.data(), i, vmul(n22, inv));
    store(out.s21_re.data(), out.s21_im.data(), i, s21);
    store(out.s12_re.data(), out.s12_im.data(), i, vmul(det, s21));
  }
  return first_bad;
}

}  // namespace dohertynet::kernels::detail
