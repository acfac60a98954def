#pragma once

// Closed-form Simpson error bounds for functions whose |f'|^q is phi-convex
// along the rotated segment, plus the classical fourth-derivative bound.
//
// All bounds are real and nonnegative: the complex factor e^{i phi}(b - a)
// enters through its modulus L = b - a.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "phisimpson/convexity.hpp"
#include "phisimpson/domain.hpp"
#include "phisimpson/errors.hpp"
#include "phisimpson/expr.hpp"

namespace phisimpson {

enum class Theorem { T31, T32, T33, T34, Classical };

constexpr std::string_view to_string(Theorem t) noexcept {
  switch (t) {
    case Theorem::T31: return "T31";
    case Theorem::T32: return "T32";
    case Theorem::T33: return "T33";
    case Theorem::T34: return "T34";
    case Theorem::Classical: return "CLASSICAL";
  }
  return "?";
}

/// Whether a theorem has a bound at exponent q. T32/T33 need a finite Hölder
/// conjugate, so they start strictly above q = 1.
constexpr bool applicable(Theorem t, double q) noexcept {
  switch (t) {
    case Theorem::T31:
    case Theorem::T34:
      return q >= 1.0;
    case Theorem::T32:
    case Theorem::T33:
      return q > 1.0;
    case Theorem::Classical:
      return false;
  }
  return false;
}

struct BoundInputs {
  double A = 0.0;  // |f'(a)|
  double B = 0.0;  // |f'(endpoint)|
  double L = 1.0;  // b - a
  double q = 1.0;

  BoundInputs() = default;
  BoundInputs(double a_deriv, double b_deriv, double length, double exponent = 1.0)
      : A(a_deriv), B(b_deriv), L(length), q(exponent) {
    if (!(A >= 0.0) || !std::isfinite(A) || !(B >= 0.0) || !std::isfinite(B))
      throw RangeError("BoundInputs: derivative magnitudes must be finite and nonnegative");
    if (!(L > 0.0) || !std::isfinite(L)) throw RangeError("BoundInputs: length must be positive");
    if (!(q >= 1.0) || !std::isfinite(q)) throw RangeError("BoundInputs: need finite q >= 1");
  }

  /// Hölder conjugate q/(q-1); only meaningful for q > 1.
  double p() const {
    if (!(q > 1.0)) throw RangeError("BoundInputs: conjugate exponent undefined for q = " + std::to_string(q));
    return q / (q - 1.0);
  }
};

namespace detail {

inline double log_kernel_moment(double p) {
  // log((1 + 2^{p+1}) / (6^{p+1}(p+1))) without overflow for large p
  return (p + 1.0) * std::log(2.0) + std::log1p(std::exp2(-(p + 1.0))) - (p + 1.0) * std::log(6.0) -
         std::log(p + 1.0);
}

// kernel_moment(p)^{1/p}, stable as p grows (q -> 1+).
inline double kernel_moment_root(double p, double scale = 1.0) {
  return std::exp((std::log(scale) + log_kernel_moment(p)) / p);
}

inline double weighted_root(double wa, double A, double wb, double B, double q) {
  return std::pow(wa * std::pow(A, q) + wb * std::pow(B, q), 1.0 / q);
}

}  // namespace detail

/// int_0^{1/2} |t - 1/6|^p dt = (1 + 2^{p+1}) / (6^{p+1}(p+1)).
inline double kernel_moment(double p) {
  if (!(p > 0.0)) throw RangeError("kernel_moment: need p > 0");
  const double direct = (1.0 + std::pow(2.0, p + 1.0)) / (std::pow(6.0, p + 1.0) * (p + 1.0));
  if (std::isnormal(direct)) return direct;
  return std::exp(detail::log_kernel_moment(p));
}

inline double bound_t31(const BoundInputs& in) { return 5.0 / 72.0 * in.L * (in.A + in.B); }

inline double bound_t32(const BoundInputs& in) {
  if (!(in.q > 1.0)) throw RangeError("bound_t32: need q > 1");
  const double p = in.p();
  return in.L * detail::kernel_moment_root(p) *
         (detail::weighted_root(3.0 / 8.0, in.A, 1.0 / 8.0, in.B, in.q) +
          detail::weighted_root(1.0 / 8.0, in.A, 3.0 / 8.0, in.B, in.q));
}

inline double bound_t33(const BoundInputs& in) {
  if (!(in.q > 1.0)) throw RangeError("bound_t33: need q > 1");
  const double p = in.p();
  return in.L * detail::kernel_moment_root(p, 2.0) * detail::weighted_root(0.5, in.A, 0.5, in.B, in.q);
}

inline double bound_t34(const BoundInputs& in) {
  const double q = in.q;
  return in.L * std::pow(5.0 / 72.0, 1.0 - 1.0 / q) *
         (detail::weighted_root(61.0 / 1296.0, in.A, 29.0 / 1296.0, in.B, q) +
          detail::weighted_root(29.0 / 1296.0, in.A, 61.0 / 1296.0, in.B, q));
}

inline double bound(Theorem t, const BoundInputs& in) {
  switch (t) {
    case Theorem::T31: return bound_t31(in);
    case Theorem::T32: return bound_t32(in);
    case Theorem::T33: return bound_t33(in);
    case Theorem::T34: return bound_t34(in);
    case Theorem::Classical: break;
  }
  throw RangeError("bound: the classical bound takes a fourth-derivative sup, not BoundInputs");
}

/// ||f''''||_inf (b - a)^4 / 2880.
inline double classical_bound(double m4, double len) {
  if (!(m4 >= 0.0)) throw RangeError("classical_bound: need m4 >= 0");
  if (!(len > 0.0)) throw RangeError("classical_bound: need len > 0");
  return m4 * std::pow(len, 4) / 2880.0;
}

/// Max of |f''''| over a uniform grid on [a, b], endpoints included. A lower
/// estimate of the sup: it is reported as estimated, never certified.
inline double estimate_m4_from_derivative(const Expr& d4f, const PhiInterval& iv, std::size_t samples) {
  if (iv.phi() != 0.0) throw RangeError("estimate_m4: only defined for phi = 0");
  if (samples < 2) throw RangeError("estimate_m4: need at least 2 samples");
  double m4 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = (i + 1 == samples)
                         ? iv.b()
                         : iv.a() + iv.length() * static_cast<double>(i) / static_cast<double>(samples - 1);
    m4 = std::max(m4, std::abs(eval(d4f, complex(x, 0.0))));
  }
  return m4;
}

inline double estimate_m4(const Expr& f, const PhiInterval& iv, std::size_t samples) {
  return estimate_m4_from_derivative(differentiate(f, 4), iv, samples);
}

inline constexpr double kDominanceSlop = 1e-12;

struct BoundReport {
  Theorem theorem = Theorem::T31;
  std::optional<double> q;  // empty for the classical bound
  double bound = 0.0;
  double actual = 0.0;
  double slack = 0.0;
  bool dominant = true;
  CertificateStatus certificate_status = CertificateStatus::Skipped;
};

inline BoundReport make_bound_report(Theorem theorem, std::optional<double> q, double bound_value, double actual,
                                     CertificateStatus status) {
  BoundReport r;
  r.theorem = theorem;
  r.q = q;
  r.bound = bound_value;
  r.actual = actual;
  r.slack = bound_value - actual;
  r.dominant = r.slack >= -kDominanceSlop;
  r.certificate_status = status;
  return r;
}

}  // namespace phisimpson
