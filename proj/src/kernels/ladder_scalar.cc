// SPDX-License-Identifier: Apache-2.0

// Reference kernels. Arithmetic is spelled out on real/imaginary parts in the
// same order the vector variants use, so the two agree to rounding.

#include <cmath>

#include "dohertynet/kernels.hpp"
#include "dohertynet/twoport.hpp"

namespace dohertynet::kernels::detail {

namespace {

struct Cx {
  double re;
  double im;
};

inline Cx mul(Cx x, Cx y) { return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; }
inline Cx add(Cx x, Cx y) { return {x.re + y.re, x.im + y.im}; }
inline Cx reciprocal(Cx x) {
  const double m = x.re * x.re + x.im * x.im;
  return {x.re / m, -x.im / m};
}

}  // namespace

void ladder_scalar(const PreparedLadder& ladder, std::span<const double> freq_hz, AbcdBatch& out,
                   std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    const double w = 2.0 * kPi * freq_hz[i];
    Cx a{1.0, 0.0};
    Cx b{0.0, 0.0};
    Cx c{0.0, 0.0};
    Cx d{1.0, 0.0};
    for (const Stage& st : ladder.stages) {
      switch (st.kind) {
        case StageKind::series_r:
        case StageKind::series_l:
        case StageKind::series_c:
        case StageKind::series_table: {
          Cx z;
          if (st.kind == StageKind::series_r) {
            z = {st.value, 0.0};
          } else if (st.kind == StageKind::series_l) {
            const double x = w * st.value;
            z = {x * ladder.inv_q_l, x};
          } else if (st.kind == StageKind::series_c) {
            const double bc = w * st.value;
            z = reciprocal({bc * ladder.inv_q_c, bc});
          } else {
            z = {st.table[i].real(), st.table[i].imag()};
          }
          b = add(mul(a, z), b);
          d = add(mul(c, z), d);
          break;
        }
        case StageKind::shunt_r:
        case StageKind::shunt_l:
        case StageKind::shunt_c:
        case StageKind::shunt_table: {
          Cx y;
          if (st.kind == StageKind::shunt_r) {
            y = {1.0 / st.value, 0.0};
          } else if (st.kind == StageKind::shunt_l) {
            const double x = w * st.value;
            y = reciprocal({x * ladder.inv_q_l, x});
          } else if (st.kind == StageKind::shunt_c) {
            const double bc = w * st.value;
            y = {bc * ladder.inv_q_c, bc};
          } else {
            y = {st.table[i].real(), st.table[i].imag()};
          }
          a = add(a, mul(b, y));
          c = add(c, mul(d, y));
          break;
        }
        case StageKind::ideal_transformer: {
          const double n = st.value;
          const double inv_n = 1.0 / n;
          a = {a.re * n, a.im * n};
          c = {c.re * n, c.im * n};
          b = {b.re * inv_n, b.im * inv_n};
          d = {d.re * inv_n, d.im * inv_n};
          break;
        }
      }
    }
    out.a_re[i] = a.re, out.a_im[i] = a.im;
    out.b_re[i] = b.re, out.b_im[i] = b.im;
    out.c_re[i] = c.re, out.c_im[i] = c.im;
    out.d_re[i] = d.re, out.d_im[i] = d.im;
  }
}

std::size_t abcd_to_s_scalar(const AbcdBatch& in, double z01, double z02, SBatch& out, std::size_t begin,
                             std::size_t end) {
  const double root = std::sqrt(z01 * z02);
  const double z12 = z01 * z02;
  std::size_t first_bad = kNoSingularity;
  for (std::size_t i = begin; i < end; ++i) {
    const Cx a{in.a_re[i], in.a_im[i]};
    const Cx b{in.b_re[i], in.b_im[i]};
    const Cx c{in.c_re[i], in.c_im[i]};
    const Cx d{in.d_re[i], in.d_im[i]};
    const Cx az{a.re * z02, a.im * z02};
    const Cx cz{c.re * z12, c.im * z12};
    const Cx dz{d.re * z01, d.im * z01};
    const Cx den{az.re + b.re + cz.re + dz.re, az.im + b.im + cz.im + dz.im};
    const double mag2 = den.re * den.re + den.im * den.im;
    if (first_bad == kNoSingularity && !(std::sqrt(mag2) >= kSingularThreshold * root)) first_bad = i;
    const Cx inv{den.re / mag2, -den.im / mag2};
    const Cx n11{az.re + b.re - cz.re - dz.re, az.im + b.im - cz.im - dz.im};
    const Cx n22{-az.re + b.re - cz.re + dz.re, -az.im + b.im - cz.im + dz.im};
    const Cx ad = mul(a, d);
    const Cx bc = mul(b, c);
    const Cx det{ad.re - bc.re, ad.im - bc.im};
    const Cx s11 = mul(n11, inv);
    const Cx s22 = mul(n22, inv);
    const Cx s21{2.0 * root * inv.re, 2.0 * root * inv.im};
    const Cx s12 = mul(det, s21);
    out.s11_re[i] = s11.re, out.s11_im[i] = s11.im;
    out.s12_re[i] = s12.re, out.s12_im[i] = s12.im;
    out.s21_re[i] = s21.re, out.s21_im[i] = s21.im;
    out.s22_re[i] = s22.re, out.s22_im[i] = s22.im;
  }
  return first_bad;
}

}  // namespace dohertynet::kernels::detail
