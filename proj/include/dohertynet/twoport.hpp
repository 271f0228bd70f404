// SPDX-License-Identifier: Apache-2.0

#ifndef DOHERTYNET_TWOPORT_HPP
#define DOHERTYNET_TWOPORT_HPP

#include <complex>
#include <span>
#include <vector>

namespace dohertynet {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Magnitude below which a conversion or termination denominator is treated
// as zero.
inline constexpr double kSingularThreshold = 1e-15;

/// Positive, finite frequency in hertz.
class Frequency {
 public:
  explicit Frequency(double hz);

  double hz() const noexcept { return hz_; }
  double omega() const noexcept { return 2.0 * kPi * hz_; }

  friend bool operator==(Frequency, Frequency) = default;
  friend auto operator<=>(Frequency, Frequency) = default;

 private:
  double hz_;
};

/// Chain (ABCD) matrix of a two-port:
///   [V1]   [a b] [V2]
///   [I1] = [c d] [I2]
/// with I2 flowing out of port 2.
struct AbcdMatrix {
  complex a{1.0};
  complex b{0.0};
  complex c{0.0};
  complex d{1.0};

  static AbcdMatrix identity() { return {}; }

  complex det() const { return a * d - b * c; }
  bool is_finite() const;
  bool is_reciprocal(double tol = 1e-9) const { return std::abs(det() - 1.0) <= tol; }

  friend bool operator==(const AbcdMatrix&, const AbcdMatrix&) = default;
};

AbcdMatrix operator*(const AbcdMatrix& left, const AbcdMatrix& right);

AbcdMatrix series_element(complex z);
AbcdMatrix shunt_element(complex y);
AbcdMatrix cascade(const AbcdMatrix& left, const AbcdMatrix& right);
AbcdMatrix cascade(std::span<const AbcdMatrix> chain);

/// Impedance seen at port 1 with port 2 terminated in zload.
complex input_impedance(const AbcdMatrix& net, complex zload);

// Largest entrywise deviation after balancing units (b / z_scale,
// c * z_scale), divided by the largest balanced entry of `reference`.
double relative_difference(const AbcdMatrix& value, const AbcdMatrix& reference,
                           double z_scale = 50.0);

struct SMatrix {
  complex s11{0.0};
  complex s12{0.0};
  complex s21{0.0};
  complex s22{0.0};
};

// Real reference impedances, possibly different at the two ports.
SMatrix to_smatrix(const AbcdMatrix& m, double z01, double z02);
AbcdMatrix from_smatrix(const SMatrix& s, double z01, double z02);

class TwoPortSpectrum {
 public:
  struct Point {
    Frequency f;
    AbcdMatrix m;
  };

  explicit TwoPortSpectrum(std::vector<Point> points);

  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<Point> points_;
};

class SParams {
 public:
  struct Point {
    Frequency f;
    SMatrix s;
  };

  // Port 2 shares the port-1 reference unless given.
  explicit SParams(std::vector<Point> points, double z0ref = 50.0);
  SParams(std::vector<Point> points, double z0ref, double z0ref_port2);

  double z0ref() const noexcept { return z0ref_; }
  double z0ref_port2() const noexcept { return z0ref_port2_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<Point> points_;
  double z0ref_;
  double z0ref_port2_;
};

SParams to_sparams(const TwoPortSpectrum& net, double z0ref = 50.0);
SParams to_sparams(const TwoPortSpectrum& net, double z0ref, double z0ref_port2);
TwoPortSpectrum from_sparams(const SParams& sp);

}  // namespace dohertynet

#endif  // DOHERTYNET_TWOPORT_HPP
