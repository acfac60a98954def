#pragma once

// Adaptive Gauss-Kronrod (7/15) integration of complex-valued integrands.
//
// The range is first cut at every breakpoint; the subinterval with the largest
// error estimate is then bisected until the summed estimate drops below the
// absolute tolerance or the evaluation budget runs out. The rule never samples
// an interval endpoint, so integrands may be discontinuous at breakpoints.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "phisimpson/domain.hpp"
#include "phisimpson/errors.hpp"
#include "phisimpson/expr.hpp"

namespace phisimpson {

struct QuadratureOptions {
  double tol = 1e-11;
  std::size_t budget = 1'000'000;
};

struct QuadratureResult {
  complex value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

// Kronrod abscissae on [-1, 1], descending; odd indices are the Gauss nodes.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss 7-point weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  complex value;
  double error;
};

template <class F>
complex sample(F& g, double t) {
  const complex v = static_cast<complex>(g(t));
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NonFiniteIntegrandError(t);
  return v;
}

template <class F>
Segment gauss_kronrod15(F& g, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const complex fc = sample(g, center);
  complex kronrod = kWgk[7] * fc;
  complex gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const complex pair = sample(g, center - dx) + sample(g, center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

inline constexpr std::size_t kEvalsPerSegment = 15;

}  // namespace detail

/// Integrates g over [lo, hi] to absolute tolerance opts.tol.
///
/// Breakpoints must lie strictly inside (lo, hi). Throws BudgetExceededError
/// (carrying the best estimate) when opts.budget evaluations are not enough,
/// and NonFiniteIntegrandError when g returns inf/nan.
template <class F>
QuadratureResult integrate(F&& g, double lo, double hi, const QuadratureOptions& opts,
                           std::span<const double> breakpoints = {}) {
  if (!(opts.tol > 0.0)) throw RangeError("integrate: tolerance must be positive");
  if (!(lo < hi)) throw RangeError("integrate: need lo < hi");

  std::vector<double> cuts{lo};
  std::vector<double> sorted(breakpoints.begin(), breakpoints.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (double c : sorted) {
    if (!(c > lo && c < hi)) throw RangeError("integrate: breakpoint " + std::to_string(c) + " outside the open range");
    cuts.push_back(c);
  }
  cuts.push_back(hi);

  std::size_t evaluations = 0;
  std::vector<detail::Segment> segments;
  segments.reserve(64);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    segments.push_back(detail::gauss_kronrod15(g, cuts[i], cuts[i + 1]));
    evaluations += detail::kEvalsPerSegment;
  }

  const auto by_error = [](const detail::Segment& x, const detail::Segment& y) { return x.error < y.error; };
  // Fixed-order summation: live segments in heap order, then the parked ones.
  const auto totals = [](const std::vector<detail::Segment>& live, const std::vector<detail::Segment>& parked) {
    complex value{};
    double error = 0.0;
    for (const auto* group : {&live, &parked}) {
      for (const auto& s : *group) {
        value += s.value;
        error += s.error;
      }
    }
    return std::pair{value, error};
  };

  // Segments too narrow to bisect in floating point are parked here.
  std::vector<detail::Segment> exhausted;
  std::make_heap(segments.begin(), segments.end(), by_error);
  double running_error = totals(segments, exhausted).second;

  for (;;) {
    if (running_error <= opts.tol) {
      const auto [value, error] = totals(segments, exhausted);
      if (error <= opts.tol) return {value, error, evaluations};
      running_error = error;
    }
    if (segments.empty())
      throw QuadratureError("integrate: roundoff prevents reaching tolerance (error estimate " +
                            std::to_string(running_error) + ")");
    if (evaluations + 2 * detail::kEvalsPerSegment > opts.budget) {
      const auto [value, error] = totals(segments, exhausted);
      throw BudgetExceededError(value, error, evaluations);
    }

    std::pop_heap(segments.begin(), segments.end(), by_error);
    const detail::Segment worst = segments.back();
    segments.pop_back();

    const double mid = 0.5 * (worst.lo + worst.hi);
    const double scale = std::max({1.0, std::abs(worst.lo), std::abs(worst.hi)});
    if (worst.hi - worst.lo < 64.0 * std::numeric_limits<double>::epsilon() * scale) {
      exhausted.push_back(worst);
      continue;
    }

    const detail::Segment left = detail::gauss_kronrod15(g, worst.lo, mid);
    const detail::Segment right = detail::gauss_kronrod15(g, mid, worst.hi);
    running_error += left.error + right.error - worst.error;
    segments.push_back(left);
    std::push_heap(segments.begin(), segments.end(), by_error);
    segments.push_back(right);
    std::push_heap(segments.begin(), segments.end(), by_error);
    evaluations += 2 * detail::kEvalsPerSegment;
  }
}

/// Integral of g over [0, 1], pre-split at the given breakpoints.
template <class F>
QuadratureResult integrate_01(F&& g, double tol, std::span<const double> breakpoints = {},
                              std::size_t budget = QuadratureOptions{}.budget) {
  return integrate(std::forward<F>(g), 0.0, 1.0, QuadratureOptions{tol, budget}, breakpoints);
}

template <class F>
QuadratureResult integrate_01(F&& g, double tol, std::initializer_list<double> breakpoints,
                              std::size_t budget = QuadratureOptions{}.budget) {
  return integrate_01(std::forward<F>(g), tol, std::span<const double>(breakpoints.begin(), breakpoints.size()),
                      budget);
}

/// Contour integral of f along the rotated segment: chord * int_0^1 f(path(t)) dt.
inline QuadratureResult contour_integral(const Expr& f, const PhiInterval& iv, double tol,
                                         std::size_t budget = QuadratureOptions{}.budget) {
  const complex chord = iv.chord();
  // The t-integral is scaled by |chord|, so tighten it to keep the final estimate within tol.
  const double t_tol = tol / std::max(1.0, iv.length());
  QuadratureResult r = integrate_01([&](double t) { return eval(f, iv.a() + t * chord); }, t_tol,
                                    std::span<const double>{}, budget);
  r.value *= chord;
  r.error_estimate *= iv.length();
  return r;
}

}  // namespace phisimpson
