#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "phisimpson/domain.hpp"
#include "phisimpson/errors.hpp"
#include "phisimpson/expr.hpp"

namespace phisimpson {

enum class CertificateStatus { Verified, Violated, Skipped };

constexpr std::string_view to_string(CertificateStatus s) noexcept {
  switch (s) {
    case CertificateStatus::Verified: return "verified";
    case CertificateStatus::Violated: return "violated";
    case CertificateStatus::Skipped: return "skipped";
  }
  return "?";
}

inline constexpr double kCertificateTol = 1e-10;
inline constexpr std::size_t kDefaultCertificateSamples = 1001;

/// Sampled check of |f'(a + t chord)|^q <= (1 - t)|f'(a)|^q + t|f'(b')|^q, where
/// b' is the rotated endpoint. This is the u = a, v = endpoint instance of
/// phi-convexity, the only one the bounds consume.
struct ConvexityCertificate {
  double q = 1.0;
  std::size_t sample_count = 0;
  CertificateStatus status = CertificateStatus::Verified;
  double worst_margin = 0.0;  // min over samples of chord - value
  std::optional<double> violation_t;
  double worst_t = 0.0;  // where worst_margin was attained (first occurrence)
};

inline ConvexityCertificate certify_phi_convexity_from_derivative(const Expr& df, const PhiInterval& iv, double q,
                                                                  std::size_t n = kDefaultCertificateSamples,
                                                                  double tol = kCertificateTol) {
  if (n < 3) throw RangeError("certify_phi_convexity: need at least 3 samples");
  if (!(q >= 1.0) || !std::isfinite(q)) throw RangeError("certify_phi_convexity: need finite q >= 1");

  const complex chord = iv.chord();
  const auto g = [&](double t) { return std::pow(std::abs(eval(df, iv.a() + t * chord)), q); };
  const double g0 = g(0.0);
  const double g1 = g(1.0);

  ConvexityCertificate cert;
  cert.q = q;
  cert.sample_count = n;
  cert.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    // Endpoints reuse g0/g1 so the margin there is exactly zero.
    const double t = (i + 1 == n) ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    const double value = (i == 0) ? g0 : (i + 1 == n) ? g1 : g(t);
    const double margin = (1.0 - t) * g0 + t * g1 - value;
    if (std::isnan(margin)) throw DomainError("|f'|^q", "not a number at t = " + std::to_string(t));
    if (margin < cert.worst_margin) {
      cert.worst_margin = margin;
      cert.worst_t = t;
    }
  }
  if (cert.worst_margin < -tol) {
    cert.status = CertificateStatus::Violated;
    cert.violation_t = cert.worst_t;
  }
  return cert;
}

inline ConvexityCertificate certify_phi_convexity(const Expr& f, const PhiInterval& iv, double q,
                                                  std::size_t n = kDefaultCertificateSamples,
                                                  double tol = kCertificateTol) {
  return certify_phi_convexity_from_derivative(differentiate(f), iv, q, n, tol);
}

}  // namespace phisimpson
