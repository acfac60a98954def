#pragma once

// Report rendering. Machine formats (json, csv) print every real with 17
// significant digits so values re-parse bit-for-bit, and contain nothing that
// varies between runs of the same configuration.
//
// json: verify writes one object; sweep writes one object per line (one per
//       run) followed by a final {"summary": ...} line.
// csv:  header plus one row per (theorem, q) pair of every run.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "phisimpson/errors.hpp"
#include "phisimpson/pipeline.hpp"

namespace phisimpson {

namespace detail {

inline std::string format17(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 40> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), end);
}

inline std::string json_number(double v) { return std::isfinite(v) ? format17(v) : "null"; }

inline std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

inline std::string json_complex(complex z) {
  return "{\"re\":" + json_number(z.real()) + ",\"im\":" + json_number(z.imag()) + "}";
}

inline std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Table: return "table";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "?";
}

inline std::string json_bound(const BoundReport& b) {
  std::string s = "{\"theorem\":" + json_string(to_string(b.theorem));
  s += ",\"q\":" + (b.q ? json_number(*b.q) : std::string("null"));
  s += ",\"bound\":" + json_number(b.bound);
  s += ",\"actual\":" + json_number(b.actual);
  s += ",\"slack\":" + json_number(b.slack);
  s += ",\"dominant\":" + std::string(b.dominant ? "true" : "false");
  s += ",\"certificate_status\":" + json_string(to_string(b.certificate_status)) + "}";
  return s;
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_json(const RunReport& r) {
  const RunConfig& c = r.config;
  std::string s = "{\"config\":{";
  s += "\"expression\":" + detail::json_string(c.expression);
  s += ",\"a\":" + detail::json_number(c.a);
  s += ",\"b\":" + detail::json_number(c.b);
  s += ",\"phi\":" + detail::json_number(c.phi);
  s += ",\"q\":[";
  for (std::size_t i = 0; i < c.q_list.size(); ++i) s += (i ? "," : "") + detail::json_number(c.q_list[i]);
  s += "],\"oracle_tol\":" + detail::json_number(c.oracle_tol);
  s += ",\"identity_tol\":" + detail::json_number(c.identity_tol);
  s += ",\"certificate_samples\":" + std::to_string(c.certificate_samples);
  s += ",\"budget\":" + std::to_string(c.budget) + "}";

  s += ",\"exit_status\":" + std::to_string(r.exit_status);
  s += ",\"error\":" + (r.error.empty() ? std::string("null") : detail::json_string(r.error));

  if (r.identity) {
    const IdentityReport& id = *r.identity;
    s += ",\"identity\":{\"simpson_value\":" + detail::json_complex(id.simpson_value);
    s += ",\"path_mean\":" + detail::json_complex(id.path_mean);
    s += ",\"lhs\":" + detail::json_complex(id.lhs);
    s += ",\"rhs\":" + detail::json_complex(id.rhs);
    s += ",\"residual\":" + detail::json_number(id.residual);
    s += ",\"within_tolerance\":" + std::string(r.identity_ok ? "true" : "false") + "}";
    s += ",\"deriv_a\":" + detail::json_number(r.deriv_a);
    s += ",\"deriv_b\":" + detail::json_number(r.deriv_b);
  } else {
    s += ",\"identity\":null";
  }

  s += ",\"certificates\":[";
  for (std::size_t i = 0; i < r.certificates.size(); ++i) {
    const auto& cert = r.certificates[i];
    s += i ? "," : "";
    s += "{\"q\":" + detail::json_number(cert.q);
    s += ",\"sample_count\":" + std::to_string(cert.sample_count);
    s += ",\"status\":" + detail::json_string(to_string(cert.status));
    s += ",\"worst_margin\":" + detail::json_number(cert.worst_margin);
    s += ",\"violation_t\":" + (cert.violation_t ? detail::json_number(*cert.violation_t) : std::string("null")) + "}";
  }
  s += "],\"bounds\":[";
  for (std::size_t i = 0; i < r.bounds.size(); ++i) s += (i ? "," : "") + detail::json_bound(r.bounds[i]);
  s += "]";
  s += ",\"m4_estimate\":" + (r.m4_estimate ? detail::json_number(*r.m4_estimate) : std::string("null"));
  s += ",\"verdict\":" + detail::json_string(r.verdict());
  s += ",\"violations\":[";
  const auto violations = r.violations();
  for (std::size_t i = 0; i < violations.size(); ++i) s += (i ? "," : "") + detail::json_bound(violations[i]);
  s += "]}";
  return s;
}

inline std::string to_json(const SweepSummary& sum, int exit_status) {
  std::string s = "{\"summary\":{\"cells\":" + std::to_string(sum.cells);
  s += ",\"failed_cells\":" + std::to_string(sum.failed_cells);
  s += ",\"max_residual\":" + detail::json_number(sum.max_residual);
  s += ",\"min_slack\":{";
  bool first = true;
  for (const auto& [theorem, slack] : sum.min_slack) {
    s += (first ? "" : ",") + detail::json_string(to_string(theorem)) + ":" + detail::json_number(slack);
    first = false;
  }
  s += "},\"violation_count\":" + std::to_string(sum.violation_count);
  s += ",\"verified_violation_count\":" + std::to_string(sum.verified_violation_count);
  s += ",\"exit_status\":" + std::to_string(exit_status) + "}}";
  return s;
}

inline constexpr std::string_view kCsvHeader =
    "expression,a,b,phi,theorem,q,bound,actual,slack,dominant,certificate_status";

inline std::string csv_rows(const RunReport& r) {
  std::string out;
  const std::string prefix = detail::csv_field(r.config.expression) + "," + detail::format17(r.config.a) + "," +
                             detail::format17(r.config.b) + "," + detail::format17(r.config.phi) + ",";
  for (const auto& b : r.bounds) {
    out += prefix + std::string(to_string(b.theorem)) + "," + (b.q ? detail::format17(*b.q) : std::string()) + ",";
    out += detail::format17(b.bound) + "," + detail::format17(b.actual) + "," + detail::format17(b.slack) + ",";
    out += std::string(b.dominant ? "true" : "false") + "," + std::string(to_string(b.certificate_status)) + "\n";
  }
  return out;
}

inline std::string to_table(const RunReport& r) {
  std::ostringstream os;
  const RunConfig& c = r.config;
  char line[256];
  os << "f(x) = " << c.expression << "\n";
  std::snprintf(line, sizeof line, "segment: a = %.10g, b = %.10g, phi = %.10g rad\n", c.a, c.b, c.phi);
  os << line;
  if (!r.error.empty()) {
    os << "error: " << r.error << "\n";
    os << "exit status: " << r.exit_status << "\n";
    return os.str();
  }
  if (r.identity) {
    const IdentityReport& id = *r.identity;
    std::snprintf(line, sizeof line, "simpson functional : %.15g %+.3ei\n", id.simpson_value.real(),
                  id.simpson_value.imag());
    os << line;
    std::snprintf(line, sizeof line, "path mean          : %.15g %+.3ei\n", id.path_mean.real(), id.path_mean.imag());
    os << line;
    std::snprintf(line, sizeof line, "identity residual  : %.3e (%s, tol %.1e)\n", id.residual,
                  r.identity_ok ? "ok" : "FAILED", c.identity_tol);
    os << line;
    std::snprintf(line, sizeof line, "|f'(a)| = %.10g, |f'(end)| = %.10g\n", r.deriv_a, r.deriv_b);
    os << line;
  }
  os << "\n  q        certificate  worst margin\n";
  for (const auto& cert : r.certificates) {
    std::snprintf(line, sizeof line, "  %-8g %-12s %.3e\n", cert.q, std::string(to_string(cert.status)).c_str(),
                  cert.worst_margin);
    os << line;
  }
  os << "\n  theorem    q        bound            actual           slack            dominant  certificate\n";
  for (const auto& b : r.bounds) {
    const std::string q = b.q ? detail::format17(*b.q) : std::string("-");
    std::snprintf(line, sizeof line, "  %-10s %-8s %-16.9e %-16.9e %-16.9e %-9s %s\n",
                  std::string(to_string(b.theorem)).c_str(), q.c_str(), b.bound, b.actual, b.slack,
                  b.dominant ? "yes" : "NO", std::string(to_string(b.certificate_status)).c_str());
    os << line;
  }
  if (r.m4_estimate) {
    std::snprintf(line, sizeof line, "\nclassical bound uses an estimated sup |f''''| = %.10g (sampled)\n",
                  *r.m4_estimate);
    os << line;
  }
  os << "\nverdict: " << r.verdict() << " (exit status " << r.exit_status << ")\n";
  return os.str();
}

inline std::string render(const RunReport& r, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return to_json(r) + "\n";
    case OutputFormat::Csv: return std::string(kCsvHeader) + "\n" + csv_rows(r);
    case OutputFormat::Table: return to_table(r);
  }
  return {};
}

inline std::string render(const SweepResult& sweep, OutputFormat format) {
  std::string out;
  switch (format) {
    case OutputFormat::Json:
      for (const auto& r : sweep.runs) out += to_json(r) + "\n";
      out += to_json(sweep.summary, sweep.exit_status) + "\n";
      return out;
    case OutputFormat::Csv:
      out = std::string(kCsvHeader) + "\n";
      for (const auto& r : sweep.runs) out += csv_rows(r);
      return out;
    case OutputFormat::Table: {
      char line[256];
      out = "  #     expression           a          b          phi        q      residual   min slack  verdict\n";
      std::size_t i = 0;
      for (const auto& r : sweep.runs) {
        double min_slack = std::numeric_limits<double>::infinity();
        for (const auto& b : r.bounds)
          if (b.theorem != Theorem::Classical) min_slack = std::min(min_slack, b.slack);
        const std::string verdict = r.error.empty() ? std::string(r.verdict()) : "error: " + r.error;
        std::snprintf(line, sizeof line, "  %-5zu %-20.20s %-10.4g %-10.4g %-10.4g %-6g %-10.2e %-10.2e %s\n", i++,
                      r.config.expression.c_str(), r.config.a, r.config.b, r.config.phi,
                      r.config.q_list.empty() ? 0.0 : r.config.q_list.front(),
                      r.identity ? r.identity->residual : 0.0, min_slack, verdict.c_str());
        out += line;
      }
      const SweepSummary& s = sweep.summary;
      std::snprintf(line, sizeof line,
                    "\nsummary: %zu cells, %zu failed, max residual %.3e, %zu violations (%zu under verified "
                    "certificates), exit status %d\n",
                    s.cells, s.failed_cells, s.max_residual, s.violation_count, s.verified_violation_count,
                    sweep.exit_status);
      out += line;
      for (const auto& [theorem, slack] : s.min_slack) {
        std::snprintf(line, sizeof line, "  min slack %-10s %.9e\n", std::string(to_string(theorem)).c_str(), slack);
        out += line;
      }
      return out;
    }
  }
  return out;
}

/// Writes text to path, or to standard output when path is empty or "-".
inline void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

template <class Report>
void emit_report(const Report& report, OutputFormat format, const std::string& path) {
  write_output(render(report, format), path);
}

}  // namespace phisimpson
