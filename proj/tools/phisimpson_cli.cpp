// Command-line front end: `phisimpson verify ...` and `phisimpson sweep ...`.
//
// Exit status: 0 ok, 1 identity failure or a bound beaten under a verified
// certificate, 2 invalid configuration, 3 math/domain error, 4 I/O error.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phisimpson/phisimpson.hpp"

namespace {

using namespace phisimpson;

struct CommonOptions {
  std::string q = "1,1.5,2,3,5";
  double oracle_tol = QuadratureOptions{}.tol;
  double identity_tol = kDefaultIdentityTol;
  std::size_t samples = kDefaultCertificateSamples;
  std::size_t budget = QuadratureOptions{}.budget;
  OutputFormat format = OutputFormat::Table;
  std::string output = "-";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  const std::map<std::string, OutputFormat> formats{
      {"table", OutputFormat::Table}, {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}};
  cmd->add_option("--q", opts.q, "comma-separated exponents q >= 1")->capture_default_str();
  cmd->add_option("--oracle-tol", opts.oracle_tol, "absolute tolerance of the quadrature oracle")
      ->capture_default_str();
  cmd->add_option("--identity-tol", opts.identity_tol, "maximum accepted identity residual")->capture_default_str();
  cmd->add_option("--samples", opts.samples, "convexity certificate / sup-estimate sample count")
      ->capture_default_str();
  cmd->add_option("--budget", opts.budget, "quadrature evaluation budget")->capture_default_str();
  cmd->add_option("--format", opts.format, "table | json | csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--output,-o", opts.output, "output path ('-' for standard output)")->capture_default_str();
}

RunConfig base_config(const CommonOptions& opts) {
  RunConfig c;
  c.q_list = parse_real_list(opts.q);
  c.oracle_tol = opts.oracle_tol;
  c.identity_tol = opts.identity_tol;
  c.certificate_samples = opts.samples;
  c.budget = opts.budget;
  c.format = opts.format;
  c.output_path = opts.output;
  return c;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read expression file '" + path + "'");
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simpson-type error bounds on rotated segments: identity check, convexity certificates, bounds"};
  app.require_subcommand(1);

  CommonOptions verify_opts;
  std::string f_text, a_text = "0", b_text = "1", phi_text = "0";
  auto* verify = app.add_subcommand("verify", "check one function on one segment");
  verify->add_option("--f", f_text, "expression in x")->required();
  verify->add_option("--a", a_text, "left endpoint")->capture_default_str();
  verify->add_option("--b", b_text, "right endpoint")->capture_default_str();
  verify->add_option("--phi", phi_text, "rotation angle in radians, or pi/6, pi/4, pi/3, pi/2")
      ->capture_default_str();
  add_common(verify, verify_opts);

  CommonOptions sweep_opts;
  std::vector<std::string> sweep_fs;
  std::string sweep_f_file, sweep_a = "0", sweep_b = "1", sweep_phi = "0";
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "run verify over the cartesian product of the given lists");
  sweep->add_option("--f", sweep_fs, "expression in x (repeatable)");
  sweep->add_option("--f-file", sweep_f_file, "file with one expression per line ('#' starts a comment)");
  sweep->add_option("--a", sweep_a, "comma-separated left endpoints")->capture_default_str();
  sweep->add_option("--b", sweep_b, "comma-separated right endpoints")->capture_default_str();
  sweep->add_option("--phi", sweep_phi, "comma-separated angles")->capture_default_str();
  sweep->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
  add_common(sweep, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::kConfig;
  }

  try {
    if (verify->parsed()) {
      RunConfig config = base_config(verify_opts);
      config.expression = f_text;
      config.a = parse_real(a_text);
      config.b = parse_real(b_text);
      config.phi = parse_angle(phi_text);

      const RunReport report = cmd_verify(config);
      if (!report.error.empty()) std::cerr << "phisimpson: " << report.error << "\n";
      if (report.exit_status != exit_code::kConfig) emit_report(report, config.format, config.output_path);
      return report.exit_status;
    }

    SweepConfig grid;
    grid.base = base_config(sweep_opts);
    grid.expressions = sweep_fs;
    if (!sweep_f_file.empty()) {
      const auto more = read_lines(sweep_f_file);
      grid.expressions.insert(grid.expressions.end(), more.begin(), more.end());
    }
    grid.a_list = parse_real_list(sweep_a);
    grid.b_list = parse_real_list(sweep_b);
    grid.phi_list = parse_angle_list(sweep_phi);
    grid.q_list = grid.base.q_list;
    grid.threads = threads;

    const SweepResult result = cmd_sweep(grid);
    emit_report(result, grid.base.format, grid.base.output_path);
    return result.exit_status;
  } catch (const ConfigError& e) {
    std::cerr << "phisimpson: " << e.what() << "\n";
    return exit_code::kConfig;
  } catch (const IoError& e) {
    std::cerr << "phisimpson: " << e.what() << "\n";
    return exit_code::kIo;
  } catch (const Error& e) {
    std::cerr << "phisimpson: " << e.what() << "\n";
    return exit_code::kMath;
  }
}
