#pragma once

// Verification pipeline: parse -> differentiate -> identity -> certificates ->
// bounds, for one configuration (verify) or a cartesian grid of them (sweep).

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "phisimpson/bounds.hpp"
#include "phisimpson/convexity.hpp"
#include "phisimpson/domain.hpp"
#include "phisimpson/errors.hpp"
#include "phisimpson/expr.hpp"
#include "phisimpson/identity.hpp"
#include "phisimpson/quad.hpp"

namespace phisimpson {

enum class OutputFormat { Table, Json, Csv };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // identity failure, or a bound beaten under a verified certificate
inline constexpr int kConfig = 2;
inline constexpr int kMath = 3;
inline constexpr int kIo = 4;
}  // namespace exit_code

inline const std::vector<double>& default_q_list() {
  static const std::vector<double> qs{1.0, 1.5, 2.0, 3.0, 5.0};
  return qs;
}

struct RunConfig {
  std::string expression;
  double a = 0.0;
  double b = 1.0;
  double phi = 0.0;
  std::vector<double> q_list = default_q_list();
  double oracle_tol = QuadratureOptions{}.tol;
  double identity_tol = kDefaultIdentityTol;
  std::size_t certificate_samples = kDefaultCertificateSamples;
  std::size_t budget = QuadratureOptions{}.budget;
  OutputFormat format = OutputFormat::Table;
  std::string output_path;  // empty or "-" means standard output
};

inline void validate(const RunConfig& c) {
  if (c.expression.empty()) throw ConfigError("expression is empty");
  if (!std::isfinite(c.a) || !std::isfinite(c.b) || !(c.a < c.b)) throw ConfigError("need finite a < b");
  if (!(c.phi >= 0.0 && c.phi <= std::numbers::pi / 2)) throw ConfigError("phi must lie in [0, pi/2]");
  if (c.q_list.empty()) throw ConfigError("q list is empty");
  for (double q : c.q_list)
    if (!std::isfinite(q) || !(q >= 1.0)) throw ConfigError("every q must be finite and >= 1");
  if (!(c.oracle_tol > 0.0)) throw ConfigError("oracle tolerance must be positive");
  if (!(c.identity_tol > 0.0)) throw ConfigError("identity tolerance must be positive");
  if (c.certificate_samples < 3) throw ConfigError("certificate samples must be >= 3");
  if (c.budget < 2 * detail::kEvalsPerSegment) throw ConfigError("quadrature budget too small");
}

struct RunReport {
  RunConfig config;
  int exit_status = exit_code::kOk;
  std::string error;  // set when the run stopped early

  std::optional<IdentityReport> identity;
  bool identity_ok = false;
  double deriv_a = 0.0;  // |f'(a)|
  double deriv_b = 0.0;  // |f'(endpoint)|
  std::vector<ConvexityCertificate> certificates;
  std::vector<BoundReport> bounds;  // per (theorem, q); classical last when phi = 0
  std::optional<double> m4_estimate;

  bool all_dominant() const {
    return std::all_of(bounds.begin(), bounds.end(), [](const BoundReport& r) { return r.dominant; });
  }
  std::string_view verdict() const { return all_dominant() ? "all-dominant" : "violations-listed"; }
  std::vector<BoundReport> violations() const {
    std::vector<BoundReport> out;
    for (const auto& r : bounds)
      if (!r.dominant) out.push_back(r);
    return out;
  }
};

inline RunReport cmd_verify(const RunConfig& config) {
  RunReport report;
  report.config = config;
  try {
    validate(config);
    const Expr f = parse(config.expression);
    const PhiInterval iv(config.a, config.b, config.phi);
    const Expr df = differentiate(f);

    report.identity = identity_residual(f, df, iv, config.oracle_tol);
    report.identity_ok = report.identity->holds(config.identity_tol);
    const double actual = std::abs(report.identity->lhs);

    report.deriv_a = std::abs(eval(df, iv.start()));
    report.deriv_b = std::abs(eval(df, iv.endpoint()));

    bool verified_violation = false;
    for (double q : config.q_list) {
      const ConvexityCertificate cert =
          certify_phi_convexity_from_derivative(df, iv, q, config.certificate_samples);
      report.certificates.push_back(cert);
      const BoundInputs in(report.deriv_a, report.deriv_b, iv.length(), q);
      for (Theorem t : {Theorem::T31, Theorem::T32, Theorem::T33, Theorem::T34}) {
        if (!applicable(t, q)) continue;
        const BoundReport br = make_bound_report(t, q, bound(t, in), actual, cert.status);
        if (!br.dominant && br.certificate_status == CertificateStatus::Verified) verified_violation = true;
        report.bounds.push_back(br);
      }
    }

    if (iv.phi() == 0.0) {
      const double m4 = estimate_m4_from_derivative(differentiate(df, 3), iv, config.certificate_samples);
      report.m4_estimate = m4;
      report.bounds.push_back(make_bound_report(Theorem::Classical, std::nullopt, classical_bound(m4, iv.length()),
                                                actual, CertificateStatus::Skipped));
    }

    report.exit_status = (report.identity_ok && !verified_violation) ? exit_code::kOk : exit_code::kFailed;
  } catch (const ConfigError& e) {
    report.exit_status = exit_code::kConfig;
    report.error = e.what();
  } catch (const ParseError& e) {
    report.exit_status = exit_code::kConfig;
    report.error = e.what();
  } catch (const RangeError& e) {
    report.exit_status = exit_code::kConfig;
    report.error = e.what();
  } catch (const Error& e) {
    report.exit_status = exit_code::kMath;
    report.error = e.what();
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

struct SweepConfig {
  std::vector<std::string> expressions;
  std::vector<double> a_list;
  std::vector<double> b_list;
  std::vector<double> phi_list;
  std::vector<double> q_list = default_q_list();
  RunConfig base;  // tolerances, sample counts, output settings
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SweepSummary {
  std::size_t cells = 0;
  std::size_t failed_cells = 0;  // cells that stopped with a config or math error
  double max_residual = 0.0;
  std::map<Theorem, double> min_slack;
  std::size_t violation_count = 0;
  std::size_t verified_violation_count = 0;
};

struct SweepResult {
  std::vector<RunReport> runs;
  SweepSummary summary;
  int exit_status = exit_code::kOk;
};

inline void validate(const SweepConfig& c) {
  if (c.expressions.empty()) throw ConfigError("sweep needs at least one expression");
  if (c.a_list.empty() || c.b_list.empty()) throw ConfigError("sweep needs nonempty a and b lists");
  if (c.phi_list.empty()) throw ConfigError("sweep needs a nonempty phi list");
  if (c.q_list.empty()) throw ConfigError("q list is empty");
}

/// Cells are the cartesian product expression x a x b x phi x q, in that
/// nesting order; each cell is a single-q verify run.
inline std::vector<RunConfig> expand(const SweepConfig& c) {
  std::vector<RunConfig> cells;
  for (const auto& expr : c.expressions)
    for (double a : c.a_list)
      for (double b : c.b_list)
        for (double phi : c.phi_list)
          for (double q : c.q_list) {
            RunConfig cell = c.base;
            cell.expression = expr;
            cell.a = a;
            cell.b = b;
            cell.phi = phi;
            cell.q_list = {q};
            cells.push_back(std::move(cell));
          }
  return cells;
}

inline SweepSummary summarize(const std::vector<RunReport>& runs) {
  SweepSummary s;
  s.cells = runs.size();
  for (const auto& r : runs) {
    if (r.exit_status == exit_code::kConfig || r.exit_status == exit_code::kMath) ++s.failed_cells;
    if (r.identity) s.max_residual = std::max(s.max_residual, r.identity->residual);
    for (const auto& b : r.bounds) {
      auto [it, inserted] = s.min_slack.try_emplace(b.theorem, b.slack);
      if (!inserted) it->second = std::min(it->second, b.slack);
      if (!b.dominant) {
        ++s.violation_count;
        if (b.certificate_status == CertificateStatus::Verified) ++s.verified_violation_count;
      }
    }
  }
  return s;
}

/// Throws ConfigError for an empty or malformed grid; individual cell failures
/// are recorded in their reports.
inline SweepResult cmd_sweep(const SweepConfig& config) {
  validate(config);
  const std::vector<RunConfig> cells = expand(config);

  SweepResult result;
  result.runs.resize(cells.size());

  unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells.size()));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) result.runs[i] = cmd_verify(cells[i]);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  result.summary = summarize(result.runs);
  const bool any_failed = std::any_of(result.runs.begin(), result.runs.end(),
                                      [](const RunReport& r) { return r.exit_status == exit_code::kFailed; });
  if (any_failed) {
    result.exit_status = exit_code::kFailed;
  } else if (result.summary.failed_cells != 0) {
    result.exit_status = exit_code::kMath;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Input helpers shared by the CLI and tests
// ---------------------------------------------------------------------------

inline double parse_real(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

/// Radians as a decimal, or one of the tokens 0, pi/6, pi/4, pi/3, pi/2.
inline double parse_angle(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  constexpr double pi = std::numbers::pi;
  if (text == "pi/6") return pi / 6;
  if (text == "pi/4") return pi / 4;
  if (text == "pi/3") return pi / 3;
  if (text == "pi/2") return pi / 2;
  return parse_real(text);
}

template <class Convert>
std::vector<double> parse_list(std::string_view text, Convert convert) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(convert(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<double> parse_real_list(std::string_view text) { return parse_list(text, parse_real); }
inline std::vector<double> parse_angle_list(std::string_view text) { return parse_list(text, parse_angle); }

}  // namespace phisimpson
