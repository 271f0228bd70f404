// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_KERNELS_HPP
#define DOHERTYNET_KERNELS_HPP

// Batched frequency-sweep kernels. A ladder of lumped stages is evaluated at
// many frequencies at once in structure-of-arrays layout; the scalar variant
// is the reference and the AVX2 variant must match it to rounding.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace dohertynet::kernels {

enum class Isa : std::uint8_t { scalar, avx2 };

// Best ISA compiled in and supported by the running CPU.
Isa detect_isa() noexcept;
bool isa_available(Isa isa) noexcept;
const char* to_string(Isa isa) noexcept;

enum class StageKind : std::uint8_t {
  series_r,
  series_l,
  series_c,
  shunt_r,
  shunt_l,
  shunt_c,
  ideal_transformer,  // value = n, chain [[n, 0], [0, 1/n]]
  series_table,       // per-frequency impedance from `table`
  shunt_table,        // per-frequency admittance from `table`
};

struct Stage {
  StageKind kind;
  double value = 0.0;
  std::span<const std::complex<double>> table{};
};

struct LossModel {
  double q_l = std::numeric_limits<double>::infinity();
  double q_c = std::numeric_limits<double>::infinity();
};

// ABCD entries per frequency, split into real and imaginary arrays.
struct AbcdBatch {
  std::vector<double> a_re, a_im, b_re, b_im, c_re, c_im, d_re, d_im;

  void resize(std::size_t n);
  std::size_t size() const noexcept { return a_re.size(); }
};

struct SBatch {
  std::vector<double> s11_re, s11_im, s12_re, s12_im, s21_re, s21_im, s22_re, s22_im;

  void resize(std::size_t n);
  std::size_t size() const noexcept { return s11_re.size(); }
};

inline constexpr std::size_t kNoSingularity = std::numeric_limits<std::size_t>::max();

// Throws InvalidArgument on bad stage values, table sizes or frequencies.
void evaluate_ladder(std::span<const Stage> stages, std::span<const double> freq_hz,
                     const LossModel& losses, AbcdBatch& out, Isa isa);
void evaluate_ladder(std::span<const Stage> stages, std::span<const double> freq_hz,
                     const LossModel& losses, AbcdBatch& out);

// Converts with real references z01 / z02. Returns the first index whose
// normalized denominator fell below 1e-15, or kNoSingularity.
std::size_t abcd_to_s(const AbcdBatch& in, double z01, double z02, SBatch& out, Isa isa);
std::size_t abcd_to_s(const AbcdBatch& in, double z01, double z02, SBatch& out);

namespace detail {

// Stage data after validation, with 1/Q precomputed.
struct PreparedLadder {
  std::span<const Stage> stages;
  double inv_q_l;
  double inv_q_c;
};

void ladder_scalar(const PreparedLadder& ladder, std::span<const double> freq_hz, AbcdBatch& out,
                   std::size_t begin, std::size_t end);
std::size_t abcd_to_s_scalar(const AbcdBatch& in, double z01, double z02, SBatch& out, std::size_t begin,
                             std::size_t end);

#if defined(DOHERTYNET_BUILD_AVX2)
inline constexpr std::size_t kAvx2Lanes = 4;

// Both process [0, n - n % 4); the caller finishes the tail with the scalar
// path.
void ladder_avx2(const PreparedLadder& ladder, std::span<const double> freq_hz, AbcdBatch& out);
std::size_t abcd_to_s_avx2(const AbcdBatch& in, double z01, double z02, SBatch& out);
#endif

}  // namespace detail

}  // namespace dohertynet::kernels

#endif  // DOHERTYNET_KERNELS_HPP
