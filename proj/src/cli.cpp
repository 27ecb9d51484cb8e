#include "positivity/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include "positivity/errors.hpp"
#include "positivity/io.hpp"

namespace positivity::cli {

using nlohmann::json;
using geometry::Domain2D;
using herglotz::Fit;
using herglotz::FourierBesselWave;
using verify::PositivityCertificate;

namespace {

constexpr double kPi = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json point_json(Point2 p) { return json::array({p.x, p.y}); }

void require_positive_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("k must be positive and finite");
}

Domain2D resolve_domain(const RunConfig& cfg) {
  if (cfg.domain) return *cfg.domain;
  if (!cfg.domain_path) throw InputError("no domain given (--domain)");
  return io::domain_from_json(io::read_json_file(*cfg.domain_path));
}

json config_json(const RunConfig& cfg) {
  json j;
  j["k"] = cfg.k;
  j["c0"] = cfg.c0;
  j["max_order"] = cfg.max_order ? json(*cfg.max_order) : json(nullptr);
  j["n_col"] = cfg.n_col ? json(*cfg.n_col) : json(nullptr);
  j["mode"] = cfg.mode ? linalg::describe_mode(*cfg.mode) : std::string("auto");
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["override_gate"] = cfg.override_gate;
  j["boundary_tolerance"] = cfg.boundary_tolerance;
  return j;
}

// Circles B_r(c) with closure inside D, drawn from a seeded generator.
std::vector<std::pair<Point2, double>> seeded_circles(const Domain2D& domain, int n, std::mt19937_64& rng) {
  const geometry::BoundarySampling s = geometry::sample_boundary(domain, 256);
  Point2 lo = s.points[0];
  Point2 hi = s.points[0];
  for (const Point2& p : s.points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double min_depth = 1e-3 * geometry::diameter(domain);
  std::uniform_real_distribution<double> ux(lo.x, hi.x);
  std::uniform_real_distribution<double> uy(lo.y, hi.y);
  std::uniform_real_distribution<double> fraction(0.25, 0.9);
  std::vector<std::pair<Point2, double>> out;
  for (int attempt = 0; attempt < 100000 && static_cast<int>(out.size()) < n; ++attempt) {
    const Point2 c{ux(rng), uy(rng)};
    if (!geometry::contains(domain, c)) continue;
    const double d = geometry::boundary_distance(domain, c);
    if (d <= min_depth) continue;
    out.emplace_back(c, fraction(rng) * d);
  }
  if (static_cast<int>(out.size()) < n) throw InputError("could not place test circles inside the domain");
  return out;
}

double max_abs_on(const FourierBesselWave& wave, std::span<const Point2> pts) {
  double m = 0.0;
  for (double v : herglotz::eval_series(wave, pts)) m = std::max(m, std::abs(v));
  return m;
}

// |circle mean - u(c) J_0(kr)| relative to max|u| over the circles' closure.
Check mean_value_check(const FourierBesselWave& wave, const Domain2D& domain, std::uint64_t seed, double u_scale) {
  std::mt19937_64 rng(seed);
  const auto circles = seeded_circles(domain, 10, rng);
  const auto u = [&](Point2 p) { return herglotz::eval_series(wave, p); };
  double worst = 0.0;
  for (const auto& [c, r] : circles) {
    worst = std::max(worst, helmholtz::mean_value_check(u, c, r, wave.k, 128));
  }
  const double rel = worst / u_scale;
  return {"mean_value", rel <= 1e-6, rel, 1e-6};
}

Check pde_residual_check(const FourierBesselWave& wave, const Domain2D& domain, double u_scale) {
  const auto pts = geometry::interior_samples(domain, 100);
  const auto u = [&](Point2 p) { return herglotz::eval_series(wave, p); };
  double worst = 0.0;
  for (const Point2& p : pts) worst = std::max(worst, std::abs(helmholtz::helmholtz_residual_fd(u, p, wave.k)));
  const double rel = worst / (wave.k * wave.k * u_scale);
  return {"pde_residual", rel <= 1e-5, rel, 1e-5};
}

// Every real solution vanishes somewhere in each closed ball of radius
// j_{0,1}/k; witnessed here for the ball about the domain centroid.
Check zero_ball_check(const FourierBesselWave& wave, Point2 center, json& details) {
  const double radius = 1.001 * specfun::bessel_zero(specfun::Order(0), 1) / wave.k;
  const verify::ZeroScan scan = verify::scan_for_zero(wave, center, radius, 0.05 / wave.k);
  details["zero_ball"] = {{"center", point_json(center)},
                          {"radius", radius},
                          {"found", scan.found},
                          {"positive_point", point_json(scan.positive_point)},
                          {"negative_point", point_json(scan.negative_point)},
                          {"points_scanned", scan.points_scanned}};
  const double separation = scan.found ? distance(scan.positive_point, scan.negative_point)
                                       : std::numeric_limits<double>::infinity();
  return {"zero_ball", scan.found, separation, 2.0 * radius};
}

struct BoundaryCandidate {
  Fit fit;
  bool failed = false;
  PositivityCertificate certificate;
};

std::vector<linalg::Mode> candidate_modes(const RunConfig& cfg) {
  if (cfg.mode) return {*cfg.mode};
  std::vector<linalg::Mode> modes{linalg::Tsvd{}};
  for (double a : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) modes.emplace_back(linalg::Tikhonov{a});
  return modes;
}

// Fits every candidate mode; keeps the successful fit with the largest
// certified margin (earlier, less regularised candidates win ties within
// 1e-6), or the smallest residual when every fit fails.
BoundaryCandidate select_boundary_fit(const Domain2D& domain, const RunConfig& cfg, double k,
                                      const geometry::BoundarySampling& sampling, json* log) {
  std::optional<BoundaryCandidate> best;
  for (const linalg::Mode& mode : candidate_modes(cfg)) {
    herglotz::BoundaryFitOptions opt;
    opt.k = k;
    opt.target = cfg.c0;
    opt.order = cfg.max_order;
    opt.n_col = cfg.n_col;
    opt.mode = mode;
    opt.override_gate = true;  // callers decide on the gate
    BoundaryCandidate c;
    try {
      c.fit = herglotz::fit_boundary(domain, opt);
    } catch (const herglotz::FitFailed& e) {
      c.fit = e.fit();
      c.failed = true;
    }
    c.certificate = verify::certify_positive(c.fit.wave, sampling);
    if (log) {
      log->push_back({{"mode", c.fit.report.regularization},
                      {"failed", c.failed},
                      {"residual_max", nullable(c.fit.report.residual_max)},
                      {"certified_margin", nullable(c.certificate.certified_margin)}});
    }
    bool better = false;
    if (!best) {
      better = true;
    } else if (best->failed != c.failed) {
      better = !c.failed;
    } else if (c.failed) {
      better = c.fit.report.residual_max < best->fit.report.residual_max;
    } else {
      better = c.certificate.certified_margin > best->certificate.certified_margin + 1e-6;
    }
    if (better) best = std::move(c);
  }
  return *best;
}

std::vector<Point2> simplify_spine(const std::vector<Point2>& pts) {
  std::vector<Point2> out;
  for (const Point2& p : pts) {
    if (!out.empty() && distance(out.back(), p) == 0.0) continue;
    if (out.size() >= 2) {
      const Point2 a = out[out.size() - 2];
      const Point2 b = out.back();
      const double scale = norm(b - a) * norm(p - b);
      if (std::abs(cross(b - a, p - b)) <= 1e-12 * scale && dot(b - a, p - b) > 0.0) out.back() = p;
      else out.push_back(p);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

geometry::TargetSet resolve_target_set(const RunConfig& cfg, double& coverage_radius) {
  coverage_radius = cfg.set_coverage_radius;
  if (cfg.target_set) return *cfg.target_set;
  if (!cfg.set_path) throw InputError("no target set given (--set)");
  const json j = io::read_json_file(*cfg.set_path);
  geometry::TargetSet set = io::target_set_from_json(j);
  if (j.contains("spacing")) coverage_radius = std::max(coverage_radius, 0.5 * j.at("spacing").get<double>());
  return set;
}

}  // namespace

bool RunReport::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

json to_json(const RunReport& r, bool include_wall_time) {
  json j;
  j["command"] = r.command;
  j["exit_code"] = r.exit_code;
  j["status"] = r.status;
  j["message"] = r.message;
  j["config"] = r.config;
  j["gate"] = r.gate ? io::to_json(*r.gate) : json(nullptr);
  j["fit"] = r.fit ? io::to_json(*r.fit) : json(nullptr);
  j["certificate"] = r.certificate ? io::to_json(*r.certificate) : json(nullptr);
  json checks = json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", nullable(c.residual)},
                      {"threshold", c.threshold}});
  }
  j["checks"] = checks;
  j["details"] = r.details;
  if (include_wall_time) j["wall_time"] = r.wall_time;
  return j;
}

RunReport cmd_positive_boundary(const RunConfig& cfg) {
  require_positive_k(cfg.k);
  if (cfg.samples < 16) throw InputError("--samples must be at least 16");
  const Domain2D domain = resolve_domain(cfg);
  RunReport r;
  r.command = "positive-boundary";
  r.config = config_json(cfg);
  r.config["domain"] = io::to_json(domain);
  r.gate = helmholtz::faber_krahn_gate(domain, cfg.k);
  if (domain.is_disk()) {
    r.details["near_dirichlet_eigenvalue"] =
        helmholtz::disk_near_dirichlet_eigenvalue(std::get<geometry::Disk>(domain.shape()).radius, cfg.k);
  }
  if (!r.gate->passes && !cfg.override_gate) {
    r.exit_code = kExitGate;
    r.status = "gate failure";
    r.message = "k^2 may exceed the first Dirichlet eigenvalue; rerun with --override-gate to fit anyway";
    return r;
  }

  const geometry::BoundarySampling sampling = geometry::sample_boundary(domain, cfg.samples);
  json log = json::array();
  BoundaryCandidate best = select_boundary_fit(domain, cfg, cfg.k, sampling, &log);
  r.details["regularization_candidates"] = log;
  r.fit = best.fit.report;
  r.wave = best.fit.wave;
  if (best.failed) {
    r.exit_code = kExitFit;
    r.status = "fit failure";
    r.message = "boundary residual exceeds the failure threshold";
    return r;
  }
  r.certificate = best.certificate;
  const FourierBesselWave& w = best.fit.wave;

  std::vector<double> values = herglotz::eval_series(w, sampling.points);
  for (std::size_t i = 0; i < values.size(); ++i) {
    r.csv_rows.push_back({sampling.points[i].x, sampling.points[i].y, values[i]});
  }
  r.csv_header = {"x", "y", "u"};

  const auto interior = geometry::interior_samples(domain, 200);
  double u_scale = std::max(max_abs_on(w, sampling.points), max_abs_on(w, interior));
  r.checks.push_back(mean_value_check(w, domain, cfg.seed, u_scale));
  r.checks.push_back(pde_residual_check(w, domain, u_scale));
  const double q = verify::max_difference_quotient(w, sampling);
  r.checks.push_back({"lipschitz_bound", q <= r.certificate->lipschitz_bound, q, r.certificate->lipschitz_bound});
  if (r.certificate->certified) {
    const geometry::BoundarySampling fine = geometry::sample_boundary(domain, 4 * cfg.samples);
    double fine_min = std::numeric_limits<double>::infinity();
    for (double v : herglotz::eval_series(w, fine.points)) fine_min = std::min(fine_min, v);
    r.checks.push_back({"refined_sampling_positive", fine_min > 0.0, fine_min, 0.0});
  }
  r.checks.push_back(zero_ball_check(w, geometry::centroid(domain), r.details));

  r.exit_code = r.certificate->certified ? kExitOk : kExitNotCertified;
  r.status = r.certificate->certified ? "certified" : "not certified";
  return r;
}

RunReport cmd_positive_set(const RunConfig& cfg) {
  require_positive_k(cfg.k);
  double coverage = 0.0;
  const geometry::TargetSet set = resolve_target_set(cfg, coverage);
  if (set.points.empty()) throw InputError("target set is empty");
  Domain2D domain = [&] {
    if (cfg.domain || cfg.domain_path) return resolve_domain(cfg);
    if (!cfg.epsilon) throw InputError("give a domain (--domain) or a tube radius (--epsilon)");
    return geometry::tube_of(simplify_spine(set.points), *cfg.epsilon);
  }();

  RunReport r;
  r.command = "positive-set";
  r.config = config_json(cfg);
  r.config["domain"] = io::to_json(domain);
  r.config["target_set"] = io::to_json(set);
  r.config["coverage_radius"] = coverage;
  r.config["mfs_tolerance"] = cfg.mfs_tolerance;

  for (const Point2& e : set.points) {
    if (geometry::locate(domain, e, cfg.boundary_tolerance) != geometry::Location::inside) {
      throw InputError("target point (" + io::format_double(e.x) + ", " + io::format_double(e.y) +
                       ") is not strictly inside the domain");
    }
  }

  r.gate = helmholtz::faber_krahn_gate(domain, cfg.k);
  if (r.gate->equality_case) {
    throw DegenerateCase("area equals pi (j01/k)^2: the Dirichlet solution may vanish identically");
  }
  if (!r.gate->passes && !cfg.override_gate) {
    r.exit_code = kExitGate;
    r.status = "gate failure";
    r.message = "k^2 may exceed the first Dirichlet eigenvalue";
    return r;
  }

  helmholtz::MfsOptions mopt;
  mopt.tolerance = cfg.mfs_tolerance;
  mopt.override_gate = cfg.override_gate;
  std::optional<helmholtz::InteriorSolution> solved;
  try {
    solved = helmholtz::solve_dirichlet_mfs({domain, cfg.k, 1.0}, mopt);
  } catch (const helmholtz::SolveFailed& e) {
    r.exit_code = kExitFit;
    r.status = "solve failure";
    r.message = e.what();
    r.details["mfs"] = {{"boundary_residual", nullable(e.residual())},
                        {"effective_rank", e.effective_rank()},
                        {"near_eigenvalue", e.near_eigenvalue()}};
    return r;
  }
  const helmholtz::InteriorSolution& v = *solved;
  r.details["mfs"] = {{"boundary_residual", v.boundary_residual}, {"effective_rank", v.effective_rank}};

  const helmholtz::StrongPositivityReport sp = helmholtz::check_strong_positivity(v, *r.gate, 1000);
  r.details["strong_positivity"] = io::to_json(sp);
  r.checks.push_back({"strong_positivity", sp.passed, sp.min_value, 0.0});
  if (!sp.passed) {
    r.exit_code = kExitFit;
    r.status = "solve failure";
    r.message = "the Dirichlet solution is not positive at every interior sample";
    return r;
  }

  double dmin = std::numeric_limits<double>::infinity();
  for (const Point2& e : set.points) dmin = std::min(dmin, geometry::boundary_distance(domain, e));
  std::optional<Domain2D> d1;
  double delta = 0.5 * dmin;
  for (int attempt = 0; attempt < 12 && !d1; ++attempt, delta *= 0.5) {
    try {
      Domain2D candidate = geometry::shrink(domain, delta);
      const bool holds_e = std::all_of(set.points.begin(), set.points.end(),
                                       [&](Point2 e) { return geometry::contains(candidate, e); });
      if (holds_e) d1 = std::move(candidate);
    } catch (const GeometryError&) {
    }
  }
  if (!d1) throw InputError("could not shrink the domain around the target set");
  r.details["shrunk_domain"] = io::to_json(*d1);

  std::vector<Point2> pts = geometry::interior_samples(*d1, 600);
  for (const Point2& p : geometry::sample_boundary(*d1, 200).points) pts.push_back(p);
  for (const Point2& e : set.points) pts.push_back(e);
  const helmholtz::InteriorValues vals = helmholtz::evaluate_interior(v, pts);
  std::vector<herglotz::InteriorTarget> targets;
  for (std::size_t i = 0; i < pts.size(); ++i) targets.push_back({pts[i], vals.values[i]});

  herglotz::InteriorFitOptions fopt;
  fopt.k = cfg.k;
  fopt.order = cfg.max_order;
  fopt.origin = geometry::centroid(domain);
  fopt.mode = cfg.mode.value_or(linalg::QrPivot{});
  Fit fit;
  try {
    fit = herglotz::fit_interior(targets, fopt);
  } catch (const herglotz::FitFailed& e) {
    r.fit = e.report();
    r.wave = e.fit().wave;
    r.exit_code = kExitFit;
    r.status = "fit failure";
    r.message = e.what();
    return r;
  }
  r.fit = fit.report;
  r.wave = fit.wave;
  r.certificate = verify::certify_positive_on_set(fit.wave, set, coverage);

  const std::vector<double> u_e = herglotz::eval_series(fit.wave, set.points);
  const helmholtz::InteriorValues v_e = helmholtz::evaluate_interior(v, set.points);
  double worst = 0.0;
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    worst = std::max(worst, std::abs(u_e[i] - v_e.values[i]) / std::abs(v_e.values[i]));
    r.csv_rows.push_back({set.points[i].x, set.points[i].y, u_e[i], v_e.values[i]});
  }
  r.csv_header = {"x", "y", "u", "v"};
  r.checks.push_back({"wave_matches_dirichlet_solution_on_E", worst <= 0.05, worst, 0.05});

  const double u_scale = std::max(max_abs_on(fit.wave, pts), 1e-300);
  r.checks.push_back(mean_value_check(fit.wave, *d1, cfg.seed, u_scale));
  r.checks.push_back(pde_residual_check(fit.wave, *d1, u_scale));
  r.checks.push_back(zero_ball_check(fit.wave, geometry::centroid(domain), r.details));

  r.exit_code = r.certificate->certified ? kExitOk : kExitNotCertified;
  r.status = r.certificate->certified ? "certified" : "not certified";
  return r;
}

RunReport cmd_counterexample(const RunConfig& cfg) {
  require_positive_k(cfg.k);
  if (cfg.m < 1) throw InputError("m must be at least 1");
  if (!(cfg.r_multiplier > 0.0)) throw InputError("the radius multiplier must be positive");
  if (cfg.random_waves < 1 || cfg.random_order < 0) throw InputError("invalid random wave panel");

  const double zero = specfun::bessel_zero(specfun::Order(0), cfg.m);
  const double radius = cfg.r_multiplier * zero / cfg.k;
  const Domain2D disk = Domain2D::disk({0.0, 0.0}, radius);

  RunReport r;
  r.command = "counterexample";
  r.config = config_json(cfg);
  r.config["m"] = cfg.m;
  r.config["r_multiplier"] = cfg.r_multiplier;
  r.config["random_waves"] = cfg.random_waves;
  r.config["random_order"] = cfg.random_order;
  r.details["radius"] = radius;
  r.details["bessel_zero"] = zero;
  r.gate = helmholtz::faber_krahn_gate(disk, cfg.k);

  herglotz::BoundaryFitOptions opt;
  opt.k = cfg.k;
  opt.target = cfg.c0;
  opt.order = cfg.max_order;
  opt.n_col = cfg.n_col;
  opt.mode = cfg.mode.value_or(linalg::Tsvd{});
  opt.override_gate = true;
  bool fit_failed = false;
  try {
    Fit fit = herglotz::fit_boundary(disk, opt);
    r.fit = fit.report;
    r.wave = fit.wave;
  } catch (const herglotz::FitFailed& e) {
    r.fit = e.report();
    r.wave = e.fit().wave;
    fit_failed = true;
  }
  r.details["fit_failed"] = fit_failed;
  const double obstruction = r.fit->residual_max / std::abs(cfg.c0);
  r.checks.push_back({"boundary_fit_obstructed", obstruction >= 0.5, obstruction, 0.5});

  std::mt19937_64 rng(cfg.seed);
  int changed = 0;
  double worst_flux = 0.0;
  for (int i = 0; i < cfg.random_waves; ++i) {
    const FourierBesselWave w = verify::random_wave(cfg.k, cfg.random_order, rng);
    const verify::SignChangeReport s = verify::sign_change_on_circle(w, cfg.m, 1024);
    if (s.changes_sign || s.vanishes_on_circle) ++changed;
    const double flux = std::abs(s.flux_integral) / w.coefficient_norm();
    worst_flux = std::max(worst_flux, flux);
    r.csv_rows.push_back({static_cast<double>(i), s.min_on_circle, s.max_on_circle, s.flux_integral});
  }
  r.csv_header = {"wave", "min_on_circle", "max_on_circle", "flux_integral"};
  r.details["waves_changing_sign"] = changed;
  const double unchanged = cfg.random_waves - changed;
  r.checks.push_back({"random_waves_change_sign", unchanged == 0.0, unchanged, 0.0});
  r.checks.push_back({"flux_integral", worst_flux <= 1e-8, worst_flux, 1e-8});

  const bool witnessed = r.all_checks_passed();
  r.exit_code = witnessed ? kExitOk : kExitNotCertified;
  r.status = witnessed ? "obstruction witnessed" : "obstruction not witnessed";
  return r;
}

RunReport cmd_scan_k(const RunConfig& cfg) {
  if (!(cfg.k_min > 0.0) || !(cfg.k_max > cfg.k_min) || !std::isfinite(cfg.k_max)) {
    throw InputError("scan-k needs 0 < k_min < k_max");
  }
  if (cfg.steps < 2) throw InputError("scan-k needs at least 2 steps");
  if (cfg.samples < 16) throw InputError("--samples must be at least 16");
  const Domain2D domain = resolve_domain(cfg);
  RunReport r;
  r.command = "scan-k";
  r.config = config_json(cfg);
  r.config.erase("k");
  r.config["domain"] = io::to_json(domain);
  r.config["k_min"] = cfg.k_min;
  r.config["k_max"] = cfg.k_max;
  r.config["steps"] = cfg.steps;

  const geometry::BoundarySampling sampling = geometry::sample_boundary(domain, cfg.samples);
  r.csv_header = {"k", "gate_pass", "residual_max", "certified_margin"};
  for (int i = 0; i < cfg.steps; ++i) {
    const double k = cfg.k_min + (cfg.k_max - cfg.k_min) * i / (cfg.steps - 1);
    const helmholtz::SpectralGate gate = helmholtz::faber_krahn_gate(domain, k);
    const BoundaryCandidate best = select_boundary_fit(domain, cfg, k, sampling, nullptr);
    r.csv_rows.push_back({k, gate.passes ? 1.0 : 0.0, best.fit.report.residual_max,
                          best.certificate.certified_margin});
  }
  r.exit_code = kExitOk;
  r.status = "scanned";
  return r;
}

RunReport cmd_selftest(const SelftestOptions& options) {
  using specfun::Order;
  const auto start = std::chrono::steady_clock::now();
  const auto bessel_j = options.bessel_j ? options.bessel_j : [](Order o, double x) { return specfun::bessel_j(o, x); };
  std::mt19937_64 rng(options.seed);
  RunReport r;
  r.command = "selftest";
  r.config = {{"seed", options.seed}};

  {
    double worst = 0.0;
    for (int twice = 2; twice <= 100; ++twice) {
      const Order nu = Order(0.5 * (twice));
      for (double x : {0.3, 2.0, 7.5, 31.0, 120.0}) {
        const double lhs = specfun::bessel_j(Order(0.5 * (twice - 2)), x) + specfun::bessel_j(Order(0.5 * (twice + 2)), x);
        const double rhs = nu.value() * 2.0 / x * specfun::bessel_j(nu, x);
        const double scale = std::abs(specfun::bessel_j(Order(0.5 * (twice - 2)), x)) +
                             std::abs(specfun::bessel_j(Order(0.5 * (twice + 2)), x)) + 1e-300;
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
      }
    }
    r.checks.push_back({"bessel_recurrence", worst <= 1e-10, worst, 1e-10});
  }
  {
    double worst = 0.0;
    double prev = 0.0;
    bool increasing = true;
    for (int m = 1; m <= 20; ++m) {
      const double z = specfun::bessel_zero(Order(0), m);
      increasing = increasing && z > prev;
      prev = z;
      worst = std::max(worst, std::abs(specfun::bessel_j(Order(0), z)));
    }
    r.checks.push_back({"bessel_zeros_j0", worst <= 1e-10 && increasing, worst, 1e-10});
    double half = 0.0;
    for (int m = 1; m <= 20; ++m) half = std::max(half, std::abs(specfun::bessel_zero(Order(0.5), m) - m * kPi));
    r.checks.push_back({"bessel_zeros_half_order", half <= 1e-12, half, 1e-12});
  }
  {
    std::uniform_real_distribution<double> ux(0.05, 100.0);
    std::uniform_int_distribution<int> un(0, 40);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = ux(rng);
      const int twice = un(rng);
      const Order a = Order(0.5 * (twice));
      const Order b = Order(0.5 * (twice + 2));
      const double w = bessel_j(b, x) * specfun::bessel_y(a, x) - bessel_j(a, x) * specfun::bessel_y(b, x);
      const double expected = 2.0 / (kPi * x);
      worst = std::max(worst, std::abs(w - expected) / expected);
    }
    r.checks.push_back({"wronskian", worst <= 1e-9, worst, 1e-9});
  }
  {
    std::uniform_int_distribution<int> um(0, 40);
    std::uniform_real_distribution<double> uk(0.2, 5.0);
    std::uniform_real_distribution<double> uangle(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> ufrac(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double k = uk(rng);
      const FourierBesselWave w = verify::random_wave(k, um(rng), rng);
      const double t = uangle(rng);
      const double rad = 30.0 / k * ufrac(rng);
      const Point2 p{rad * std::cos(t), rad * std::sin(t)};
      const herglotz::HerglotzDensity f = herglotz::to_density(w);
      const std::vector<Point2> one{p};
      const auto q = herglotz::eval_quadrature(f, one, herglotz::minimum_quadrature_nodes(f, one));
      worst = std::max(worst, std::abs(q[0] - herglotz::eval_series(w, p)));
    }
    r.checks.push_back({"jacobi_anger", worst <= 1e-9, worst, 1e-9});
  }
  {
    const Domain2D square = Domain2D::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    helmholtz::MfsOptions mopt;
    mopt.tolerance = 1e-4;  // corner singularities limit the boundary accuracy, not the identity
    const helmholtz::InteriorSolution v = helmholtz::solve_dirichlet_mfs({square, 1.0, 1.0}, mopt);
    const auto u = [&](Point2 p) { return helmholtz::evaluate_unchecked(v, p); };
    std::mt19937_64 circle_rng(options.seed);
    double worst = 0.0;
    for (const auto& [c, rad] : seeded_circles(square, 10, circle_rng)) {
      worst = std::max(worst, helmholtz::mean_value_check(u, c, rad, 1.0, 128));
    }
    r.checks.push_back({"mean_value_mfs", worst <= 1e-7, worst, 1e-7});
  }
  {
    const double radius = 1.001 * specfun::bessel_zero(Order(0), 1);
    std::uniform_real_distribution<double> uc(-3.0, 3.0);
    double missed = 0.0;
    for (int i = 0; i < 100; ++i) {
      const FourierBesselWave w = verify::random_wave(1.0, 10, rng);
      for (int b = 0; b < 5; ++b) {
        const Point2 c{uc(rng), uc(rng)};
        if (!verify::scan_for_zero(w, c, radius, 0.05).found) missed += 1.0;
      }
    }
    r.checks.push_back({"zero_ball", missed == 0.0, missed, 0.0});
  }
  {
    const Domain2D disk = Domain2D::disk({0, 0}, 1.0);
    const helmholtz::InteriorSolution mfs = helmholtz::solve_dirichlet_mfs({disk, 1.0, 1.0}, {});
    const helmholtz::InteriorSolution exact = helmholtz::disk_closed_form(disk, 1.0, 1.0);
    const auto pts = geometry::interior_samples(disk, 200);
    const auto a = helmholtz::evaluate_interior(mfs, pts);
    const auto b = helmholtz::evaluate_interior(exact, pts);
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    r.checks.push_back({"mfs_vs_closed_form", worst <= 1e-8, worst, 1e-8});
  }
  {
    const std::vector<Point2> unit{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const Domain2D square = Domain2D::polygon(unit);
    bool ok = helmholtz::faber_krahn_gate(square, 1.0).passes && !helmholtz::faber_krahn_gate(square, 10.0).passes;
    for (double t : {0.5, 2.0}) {
      std::vector<Point2> scaled;
      for (const Point2& p : unit) scaled.push_back(p * t);
      const Domain2D big = Domain2D::polygon(scaled);
      for (double k : {1.0, 3.0, 4.4, 4.5, 10.0}) {
        ok = ok && helmholtz::faber_krahn_gate(big, k / t).passes == helmholtz::faber_krahn_gate(square, k).passes;
      }
    }
    r.checks.push_back({"faber_krahn_gate", ok, ok ? 0.0 : 1.0, 0.0});
  }
  {
    herglotz::HerglotzDensity f{1.0, 0, {}, {{1.0, 0.0}}};
    std::vector<double> radii;
    for (int i = 0; i < 12; ++i) radii.push_back(50.0 * std::pow(8.0, i / 11.0));
    const double p = herglotz::far_field(f, {1.0, 0.0}, radii).decay_exponent;
    r.checks.push_back({"far_field_decay", std::abs(p - 1.5) <= 0.3, std::abs(p - 1.5), 0.3});
  }

  r.wall_time = seconds_since(start);
  r.details["runtime_seconds_exceeds_budget"] = r.wall_time > options.soft_time_limit;
  if (r.wall_time > options.soft_time_limit) {
    std::cerr << "warning: selftest took " << r.wall_time << " s (budget " << options.soft_time_limit << " s)\n";
  }
  const bool ok = r.all_checks_passed();
  r.exit_code = ok ? kExitOk : kExitNotCertified;
  r.status = ok ? "all checks passed" : "check failures";
  return r;
}

void write_artifacts(const RunConfig& cfg, const RunReport& r) {
  if (cfg.out_path) io::write_json_file(*cfg.out_path, to_json(r, cfg.record_wall_time));
  if (cfg.wave_path && r.wave) io::write_json_file(*cfg.wave_path, io::to_json(*r.wave));
  if (cfg.csv_path && !r.csv_header.empty()) io::write_csv_file(*cfg.csv_path, r.csv_header, r.csv_rows);
}

RunReport run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  try {
    if (cfg.command == "positive-boundary") r = cmd_positive_boundary(cfg);
    else if (cfg.command == "positive-set") r = cmd_positive_set(cfg);
    else if (cfg.command == "counterexample") r = cmd_counterexample(cfg);
    else if (cfg.command == "scan-k") r = cmd_scan_k(cfg);
    else if (cfg.command == "selftest") r = cmd_selftest({.bessel_j = {}, .seed = cfg.seed});
    else throw InputError("unknown command '" + cfg.command + "'");
  } catch (const InputError& e) {
    r = RunReport{};
    r.command = cfg.command;
    r.exit_code = kExitInput;
    r.status = "input error";
    r.message = e.what();
  } catch (const helmholtz::GateFailure& e) {
    r = RunReport{};
    r.command = cfg.command;
    r.gate = e.gate();
    r.exit_code = kExitGate;
    r.status = "gate failure";
    r.message = e.what();
  } catch (const helmholtz::SolveFailed& e) {
    r = RunReport{};
    r.command = cfg.command;
    r.exit_code = kExitFit;
    r.status = "solve failure";
    r.message = e.what();
  } catch (const herglotz::FitFailed& e) {
    r = RunReport{};
    r.command = cfg.command;
    r.fit = e.report();
    r.exit_code = kExitFit;
    r.status = "fit failure";
    r.message = e.what();
  }
  r.wall_time = seconds_since(start);
  write_artifacts(cfg, r);
  return r;
}

}  // namespace positivity::cli
