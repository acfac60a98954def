#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "phisimpson/errors.hpp"

namespace phisimpson {

using complex = std::complex<double>;

/// The rotated segment [a, a + e^{i phi}(b - a)] in the complex plane.
///
/// Construction enforces a < b and 0 <= phi <= pi/2; out-of-range angles are
/// rejected, never wrapped.
class PhiInterval {
 public:
  PhiInterval(double a, double b, double phi) : a_(a), b_(b), phi_(phi) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
      throw RangeError("PhiInterval: need finite a < b (got a=" + std::to_string(a) +
                       ", b=" + std::to_string(b) + ")");
    if (!(phi >= 0.0 && phi <= std::numbers::pi / 2))
      throw RangeError("PhiInterval: phi must lie in [0, pi/2] (got " + std::to_string(phi) + ")");
    chord_ = std::polar(b - a, phi);
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double phi() const noexcept { return phi_; }

  /// e^{i phi}(b - a); its modulus is length().
  complex chord() const noexcept { return chord_; }
  double length() const noexcept { return b_ - a_; }

  complex start() const noexcept { return {a_, 0.0}; }
  complex midpoint() const noexcept { return a_ + 0.5 * chord_; }
  complex endpoint() const noexcept { return a_ + chord_; }

 private:
  double a_;
  double b_;
  double phi_;
  complex chord_;
};

/// a + t e^{i phi}(b - a) for t in [0, 1].
inline complex path_point(const PhiInterval& iv, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RangeError("path_point: t must lie in [0, 1] (got " + std::to_string(t) + ")");
  return iv.a() + t * iv.chord();
}

/// Simpson kernel: t - 1/6 on [0, 1/2), t - 5/6 on [1/2, 1]. Drops from +1/3 to -1/3 at t = 1/2.
inline double kernel(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RangeError("kernel: t must lie in [0, 1] (got " + std::to_string(t) + ")");
  return t < 0.5 ? t - 1.0 / 6.0 : t - 5.0 / 6.0;
}

struct KernelValue {
  double t;
  double value;
};

inline KernelValue kernel_value(double t) { return {t, kernel(t)}; }

/// Points where the kernel has a kink (zeros at 1/6, 5/6) or a jump (1/2).
inline constexpr double kKernelBreakpoints[] = {1.0 / 6.0, 0.5, 5.0 / 6.0};

}  // namespace phisimpson
