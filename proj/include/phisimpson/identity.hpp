#pragma once

// Both sides of the Simpson kernel identity on a rotated segment:
//
//   (1/6)[f(a) + 4 f(mid) + f(end)] - (1/chord) * int_a^end f(x) dx
//       = chord * int_0^1 p(t) f'(a + t chord) dt
//
// held as an equality of complex numbers. Theorems bound the modulus of the
// left side.

#include <complex>
#include <cstddef>
#include <span>

#include "phisimpson/domain.hpp"
#include "phisimpson/expr.hpp"
#include "phisimpson/quad.hpp"

namespace phisimpson {

inline constexpr double kDefaultIdentityTol = 1e-8;

struct IdentityReport {
  complex simpson_value{};
  complex path_mean{};
  complex lhs{};  // simpson_value - path_mean
  complex rhs{};
  double residual = 0.0;  // |lhs - rhs|

  bool holds(double tol = kDefaultIdentityTol) const noexcept { return residual <= tol; }
};

inline complex simpson_functional(const Expr& f, const PhiInterval& iv) {
  return (eval(f, iv.start()) + 4.0 * eval(f, iv.midpoint()) + eval(f, iv.endpoint())) / 6.0;
}

inline complex path_mean(const Expr& f, const PhiInterval& iv, double tol = QuadratureOptions{}.tol) {
  return contour_integral(f, iv, tol).value / iv.chord();
}

// Takes f' directly; the Expr overload below differentiates first.
inline complex identity_rhs_from_derivative(const Expr& df, const PhiInterval& iv,
                                            double tol = QuadratureOptions{}.tol) {
  const complex chord = iv.chord();
  const auto integrand = [&](double t) { return kernel(t) * eval(df, iv.a() + t * chord); };
  const double t_tol = tol / std::max(1.0, iv.length());
  return chord * integrate_01(integrand, t_tol, std::span<const double>(kKernelBreakpoints)).value;
}

inline complex identity_rhs(const Expr& f, const PhiInterval& iv, double tol = QuadratureOptions{}.tol) {
  return identity_rhs_from_derivative(differentiate(f), iv, tol);
}

inline IdentityReport identity_residual(const Expr& f, const Expr& df, const PhiInterval& iv,
                                        double tol = QuadratureOptions{}.tol) {
  IdentityReport r;
  r.simpson_value = simpson_functional(f, iv);
  r.path_mean = path_mean(f, iv, tol);
  r.lhs = r.simpson_value - r.path_mean;
  r.rhs = identity_rhs_from_derivative(df, iv, tol);
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

inline IdentityReport identity_residual(const Expr& f, const PhiInterval& iv, double tol = QuadratureOptions{}.tol) {
  return identity_residual(f, differentiate(f), iv, tol);
}

}  // namespace phisimpson
