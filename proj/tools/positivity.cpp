#include <CLI11.hpp>
#include <iostream>

#include "positivity/cli.hpp"
#include "positivity/errors.hpp"
#include "positivity/io.hpp"

namespace {

using positivity::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg, std::string& mode) {
  sub->add_option("--k", cfg.k, "wavenumber");
  sub->add_option("--c0", cfg.c0, "boundary constant");
  sub->add_option("--max-order", cfg.max_order, "expansion order M");
  sub->add_option("--n-col", cfg.n_col, "collocation points");
  sub->add_option("--mode", mode, "qr | tsvd:<t> | tikhonov:<alpha> (default: automatic)");
  sub->add_option("--samples", cfg.samples, "boundary samples for the certificate");
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_flag("--override-gate", cfg.override_gate, "run even if the Faber-Krahn gate fails");
  sub->add_option("--boundary-tol", cfg.boundary_tolerance, "boundary proximity tolerance");
  sub->add_option("--out", cfg.out_path, "report JSON");
  sub->add_option("--csv", cfg.csv_path, "CSV output");
  sub->add_option("--wave", cfg.wave_path, "wave JSON output");
  sub->add_flag("--timing", cfg.record_wall_time, "record wall_time in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive Helmholtz solutions on planar domains"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string mode;
  std::string domain;

  auto* boundary = app.add_subcommand("positive-boundary", "wave positive on the boundary of a domain");
  add_common(boundary, cfg, mode);
  boundary->add_option("--domain", domain, "domain JSON")->required();

  auto* set = app.add_subcommand("positive-set", "wave positive on a compact set inside a domain");
  add_common(set, cfg, mode);
  set->add_option("--domain", domain, "domain JSON");
  set->add_option("--set", cfg.set_path, "target set JSON")->required();
  set->add_option("--epsilon", cfg.epsilon, "tube radius around the set when no domain is given");
  set->add_option("--mfs-tol", cfg.mfs_tolerance, "relative boundary tolerance of the Dirichlet solve");

  auto* counter = app.add_subcommand("counterexample", "disk of radius j_{0,m}/k");
  add_common(counter, cfg, mode);
  counter->add_option("--m", cfg.m, "zero index m");
  counter->add_option("--r-multiplier", cfg.r_multiplier, "radius multiplier");
  counter->add_option("--waves", cfg.random_waves, "random waves in the panel");
  counter->add_option("--wave-order", cfg.random_order, "order of the random waves");

  auto* scan = app.add_subcommand("scan-k", "gate, residual and margin over a k grid");
  add_common(scan, cfg, mode);
  scan->add_option("--domain", domain, "domain JSON")->required();
  scan->add_option("--k-min", cfg.k_min)->required();
  scan->add_option("--k-max", cfg.k_max)->required();
  scan->add_option("--steps", cfg.steps)->required();

  auto* selftest = app.add_subcommand("selftest", "invariant suite");
  selftest->add_option("--seed", cfg.seed, "random seed");
  selftest->add_option("--out", cfg.out_path, "report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : positivity::cli::kExitInput;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!domain.empty()) cfg.domain_path = domain;
  try {
    if (!mode.empty() && mode != "auto") cfg.mode = positivity::linalg::parse_mode(mode);
  } catch (const positivity::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return positivity::cli::kExitInput;
  }

  positivity::cli::RunReport report;
  try {
    report = positivity::cli::run(cfg);
  } catch (const positivity::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return positivity::cli::kExitInput;
  }

  if (cfg.command == "selftest") {
    for (const auto& c : report.checks) {
      std::printf("%-28s %-4s residual %10.3e  threshold %10.3e\n", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                  c.residual, c.threshold);
    }
  } else if (!cfg.out_path && cfg.command != "scan-k") {
    std::cout << positivity::cli::to_json(report, cfg.record_wall_time).dump(2) << '\n';
  }
  if (cfg.command == "scan-k" && !cfg.csv_path) {
    positivity::io::write_csv(std::cout, report.csv_header, report.csv_rows);
  }
  std::cerr << report.command << ": " << report.status;
  if (!report.message.empty()) std::cerr << " (" << report.message << ")";
  std::cerr << ", " << report.wall_time << " s\n";
  return report.exit_code;
}
