#pragma once

// Pipelines behind the `positivity` command line tool. Each command returns
// a RunReport; `run` adds error handling and writes the artifacts.

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "positivity/geometry.hpp"
#include "positivity/helmholtz.hpp"
#include "positivity/herglotz.hpp"
#include "positivity/linalg.hpp"
#include "positivity/specfun.hpp"
#include "positivity/verify.hpp"

namespace positivity::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotCertified = 1;  // ran to completion, outcome negative
inline constexpr int kExitGate = 2;
inline constexpr int kExitFit = 3;
inline constexpr int kExitInput = 4;

struct RunConfig {
  std::string command;
  std::optional<std::string> domain_path;
  std::optional<geometry::Domain2D> domain;  // takes precedence over domain_path
  double k = 1.0;
  double c0 = 1.0;
  std::optional<int> max_order;
  std::optional<int> n_col;
  /// Empty: the boundary pipelines try tsvd:1e-12 and tikhonov:1e-6..1e-1 and
  /// keep the fit with the largest certified margin.
  std::optional<linalg::Mode> mode;
  int samples = 4096;
  std::uint64_t seed = 42;
  bool override_gate = false;
  double boundary_tolerance = geometry::kBoundaryTolerance;
  std::optional<std::string> out_path;
  std::optional<std::string> csv_path;
  std::optional<std::string> wave_path;
  /// Reports omit wall_time unless asked, so that they are reproducible.
  bool record_wall_time = false;

  // positive-set
  std::optional<std::string> set_path;
  std::optional<geometry::TargetSet> target_set;
  double set_coverage_radius = 0.0;  // Lipschitz radius around each point of E
  std::optional<double> epsilon;     // D = tube around E when no domain is given
  double mfs_tolerance = 1e-4;

  // counterexample
  int m = 1;
  double r_multiplier = 1.0;
  int random_waves = 50;
  int random_order = 10;

  // scan-k
  double k_min = 0.0;
  double k_max = 0.0;
  int steps = 0;
};

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double threshold = 0.0;
};

struct RunReport {
  std::string command;
  int exit_code = kExitOk;
  std::string status;
  std::string message;
  nlohmann::json config = nlohmann::json::object();
  std::optional<helmholtz::SpectralGate> gate;
  std::optional<herglotz::FitReport> fit;
  std::optional<verify::PositivityCertificate> certificate;
  std::optional<herglotz::FourierBesselWave> wave;
  std::vector<Check> checks;
  nlohmann::json details = nlohmann::json::object();
  double wall_time = 0.0;  // seconds
  std::vector<std::string> csv_header;
  std::vector<std::vector<double>> csv_rows;

  bool all_checks_passed() const;
};

nlohmann::json to_json(const RunReport& report, bool include_wall_time);

/// Fit a wave to c0 on the boundary, certify it, run the identity checks.
RunReport cmd_positive_boundary(const RunConfig& config);
/// Positivity on a compact set E inside D through the Dirichlet solution.
RunReport cmd_positive_set(const RunConfig& config);
/// Disk of radius j_{0,m}/k: the boundary fit fails and random waves change sign.
RunReport cmd_counterexample(const RunConfig& config);
/// Gate, residual and margin over an equispaced k grid (CSV rows).
RunReport cmd_scan_k(const RunConfig& config);

struct SelftestOptions {
  /// Replaces specfun::bessel_j inside the Wronskian check (fault injection).
  std::function<double(specfun::Order, double)> bessel_j;
  std::uint64_t seed = 42;
  double soft_time_limit = 120.0;
};

RunReport cmd_selftest(const SelftestOptions& options = {});

/// Dispatches on config.command, maps exceptions to exit codes, records
/// wall_time and writes the report, wave and CSV artifacts.
RunReport run(const RunConfig& config);

/// Writes the artifacts requested in config. Throws InputError on I/O errors.
void write_artifacts(const RunConfig& config, const RunReport& report);

}  // namespace positivity::cli
