#include "positivity/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "positivity/errors.hpp"

namespace positivity::io {

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw InputError(std::string(what) + ": unknown key '" + key + "'");
  }
}

const json& require(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw InputError(std::string(what) + ": missing key '" + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + ": value is not finite");
  return v;
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + ": expected an integer");
  return j.get<int>();
}

Point2 point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw InputError(std::string(what) + ": expected [x, y]");
  return {number(j[0], what), number(j[1], what)};
}

std::vector<Point2> points(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of [x, y]");
  std::vector<Point2> out;
  for (const json& p : j) out.push_back(point(p, what));
  return out;
}

std::vector<double> numbers(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) {
    throw InputError(std::string(what) + ": expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const json& v : j) out.push_back(number(v, what));
  return out;
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

json points_json(const std::vector<Point2>& pts) {
  json a = json::array();
  for (const Point2& p : pts) a.push_back(point_json(p));
  return a;
}

// JSON has no representation for infinities or NaN.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

geometry::Domain2D domain_from_json(const json& j) {
  reject_unknown(j, {"type", "vertices", "center", "radius", "spine", "epsilon"}, "domain");
  const json& type = require(j, "type", "domain");
  if (!type.is_string()) throw InputError("domain: 'type' must be a string");
  const std::string t = type.get<std::string>();
  auto only = [&](std::set<std::string> keys) {
    keys.insert("type");
    for (const auto& [key, _] : j.items()) {
      if (!keys.contains(key)) throw InputError("domain: key '" + key + "' does not apply to type '" + t + "'");
    }
  };
  if (t == "polygon") {
    only({"vertices"});
    return geometry::Domain2D::polygon(points(require(j, "vertices", "domain"), "domain.vertices"));
  }
  if (t == "disk") {
    only({"center", "radius"});
    return geometry::Domain2D::disk(point(require(j, "center", "domain"), "domain.center"),
                                    number(require(j, "radius", "domain"), "domain.radius"));
  }
  if (t == "tube") {
    only({"spine", "epsilon"});
    return geometry::tube_of(points(require(j, "spine", "domain"), "domain.spine"),
                             number(require(j, "epsilon", "domain"), "domain.epsilon"));
  }
  throw InputError("domain: unknown type '" + t + "'");
}

json to_json(const geometry::Domain2D& domain) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, geometry::Polygon>) {
          return {{"type", "polygon"}, {"vertices", points_json(s.vertices)}};
        } else if constexpr (std::is_same_v<T, geometry::Disk>) {
          return {{"type", "disk"}, {"center", point_json(s.center)}, {"radius", s.radius}};
        } else {
          return {{"type", "tube"}, {"spine", points_json(s.spine)}, {"epsilon", s.epsilon}};
        }
      },
      domain.shape());
}

geometry::TargetSet target_set_from_json(const json& j) {
  reject_unknown(j, {"points", "polyline", "spacing"}, "target set");
  if (j.contains("points")) {
    if (j.contains("polyline") || j.contains("spacing")) {
      throw InputError("target set: give either 'points' or 'polyline' with 'spacing'");
    }
    geometry::TargetSet set{points(j.at("points"), "target set.points")};
    if (set.points.empty()) throw InputError("target set: no points");
    return set;
  }
  const std::vector<Point2> line = points(require(j, "polyline", "target set"), "target set.polyline");
  return geometry::densify_polyline(line, number(require(j, "spacing", "target set"), "target set.spacing"));
}

json to_json(const geometry::TargetSet& set) { return {{"points", points_json(set.points)}}; }

herglotz::FourierBesselWave wave_from_json(const json& j) {
  reject_unknown(j, {"k", "M", "a0", "ac", "as", "origin"}, "wave");
  const double k = number(require(j, "k", "wave"), "wave.k");
  const int m = integer(require(j, "M", "wave"), "wave.M");
  if (m < 0) throw InputError("wave: M must be nonnegative");
  if (!(k > 0.0)) throw InputError("wave: k must be positive");
  herglotz::FourierBesselWave w = herglotz::FourierBesselWave::zero(
      k, m, j.contains("origin") ? point(j.at("origin"), "wave.origin") : Point2{});
  w.a0 = number(require(j, "a0", "wave"), "wave.a0");
  w.ac = numbers(require(j, "ac", "wave"), static_cast<std::size_t>(m), "wave.ac");
  w.as = numbers(require(j, "as", "wave"), static_cast<std::size_t>(m), "wave.as");
  return w;
}

json to_json(const herglotz::FourierBesselWave& w) {
  return {{"k", w.k}, {"M", w.order}, {"a0", w.a0}, {"ac", w.ac}, {"as", w.as}, {"origin", point_json(w.origin)}};
}

herglotz::HerglotzDensity density_from_json(const json& j) {
  reject_unknown(j, {"k", "M", "c_re", "c_im", "origin"}, "density");
  herglotz::HerglotzDensity f;
  f.k = number(require(j, "k", "density"), "density.k");
  f.order = integer(require(j, "M", "density"), "density.M");
  if (f.order < 0) throw InputError("density: M must be nonnegative");
  if (!(f.k > 0.0)) throw InputError("density: k must be positive");
  if (j.contains("origin")) f.origin = point(j.at("origin"), "density.origin");
  const auto n = static_cast<std::size_t>(2 * f.order + 1);
  const std::vector<double> re = numbers(require(j, "c_re", "density"), n, "density.c_re");
  const std::vector<double> im = numbers(require(j, "c_im", "density"), n, "density.c_im");
  for (std::size_t i = 0; i < n; ++i) f.coeffs.emplace_back(re[i], im[i]);
  return f;
}

json to_json(const herglotz::HerglotzDensity& f) {
  json re = json::array();
  json im = json::array();
  for (const auto& c : f.coeffs) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"k", f.k}, {"M", f.order}, {"c_re", re}, {"c_im", im}, {"origin", point_json(f.origin)}};
}

json to_json(const verify::PositivityCertificate& c) {
  return {{"n_samples", c.n_samples},
          {"min_sample", c.min_sample},
          {"argmin", point_json(c.argmin)},
          {"lipschitz_bound", c.lipschitz_bound},
          {"max_gap", c.max_gap},
          {"coverage_radius", c.coverage_radius},
          {"certified_margin", c.certified_margin},
          {"certified", c.certified}};
}

json to_json(const verify::SignChangeReport& r) {
  return {{"m", r.m},
          {"circle_radius", r.circle_radius},
          {"min_on_circle", r.min_on_circle},
          {"max_on_circle", r.max_on_circle},
          {"changes_sign", r.changes_sign},
          {"vanishes_on_circle", r.vanishes_on_circle},
          {"flux_integral", r.flux_integral}};
}

json to_json(const helmholtz::SpectralGate& g) {
  return {{"k", g.k},
          {"area", g.area},
          {"area_is_upper_bound", g.area_is_upper_bound},
          {"r_star", g.r_star},
          {"lambda1_lower_bound", g.lambda1_lower_bound},
          {"k_squared", g.k * g.k},
          {"passes", g.passes},
          {"equality_case", g.equality_case}};
}

json to_json(const helmholtz::StrongPositivityReport& r) {
  return {{"samples", r.samples},
          {"min_value", r.min_value},
          {"argmin", point_json(r.argmin)},
          {"max_abs_value", r.max_abs_value},
          {"positive", r.positive},
          {"identically_zero", r.identically_zero},
          {"passed", r.passed}};
}

json to_json(const herglotz::FitReport& r) {
  return {{"residual_max", finite_or_null(r.residual_max)},
          {"residual_l2", finite_or_null(r.residual_l2)},
          {"collocation_residual_l2", finite_or_null(r.collocation_residual_l2)},
          {"M_used", r.order_used},
          {"regularization", r.regularization},
          {"coefficient_norm", finite_or_null(r.coefficient_norm)},
          {"effective_rank", r.effective_rank},
          {"n_fit", r.n_fit},
          {"n_validation", r.n_validation}};
}

json to_json(const herglotz::FarFieldReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"radius", s.radius},
                       {"value_deviation", s.value_deviation},
                       {"combined_deviation", s.combined_deviation},
                       {"relative_error", s.relative_error}});
  }
  return {{"direction", point_json(r.direction)}, {"samples", samples}, {"decay_exponent", r.decay_exponent}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_csv(out, header, rows);
}

}  // namespace positivity::io
