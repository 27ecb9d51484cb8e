#include "positivity/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "positivity/errors.hpp"

namespace positivity::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

Point2 unit(Point2 v) {
  const double n = norm(v);
  return {v.x / n, v.y / n};
}

double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

bool on_segment(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return true;
  }
  return (o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) ||
         (o3 == 0 && on_segment(a, c, d)) || (o4 == 0 && on_segment(b, c, d));
}

double segment_segment_distance(Point2 a, Point2 b, Point2 c, Point2 d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

double signed_area(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

Point2 polygon_centroid(const std::vector<Point2>& v) {
  double a = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 p = v[i];
    const Point2 q = v[(i + 1) % v.size()];
    const double c = cross(p, q);
    a += c;
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
  }
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

double polyline_distance(const std::vector<Point2>& path, bool closed, Point2 p) {
  if (path.size() == 1) return distance(p, path[0]);
  double best = std::numeric_limits<double>::infinity();
  const std::size_t edges = closed ? path.size() : path.size() - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    best = std::min(best, point_segment_distance(p, path[i], path[(i + 1) % path.size()]));
  }
  return best;
}

double path_length(const std::vector<Point2>& path, bool closed) {
  double s = 0.0;
  const std::size_t edges = closed ? path.size() : path.size() - 1;
  for (std::size_t i = 0; i < edges; ++i) s += distance(path[i], path[(i + 1) % path.size()]);
  return s;
}

bool ray_cast_inside(const std::vector<Point2>& v, Point2 p) {
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Point2 a = v[i];
    const Point2 b = v[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

// --- parallel curves -------------------------------------------------------

// One piece of a parallel curve: a straight offset segment or a circular arc
// around a path vertex.
struct Piece {
  bool arc = false;
  Point2 a, b;          // segment endpoints
  Point2 center;        // arc centre
  double radius = 0.0;  // arc radius
  double theta0 = 0.0;  // arc start angle
  double sweep = 0.0;   // arc sweep, counterclockwise
  double length = 0.0;

  Point2 at(double s) const {
    if (!arc) return a + (b - a) * (s / length);
    const double t = theta0 + sweep * (s / length);
    return center + Point2{radius * std::cos(t), radius * std::sin(t)};
  }
};

// The loop traced at distance d to the right of a closed counterclockwise
// path (its outer parallel curve), or around both sides of an open polyline.
// Pieces overlapping near reflex corners are not trimmed here.
std::vector<Piece> parallel_pieces(const std::vector<Point2>& path, bool closed, double d) {
  std::vector<Point2> loop = path;
  if (!closed) {
    for (std::size_t i = path.size() - 1; i-- > 1;) loop.push_back(path[i]);
  }
  const std::size_t n = loop.size();
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = loop[i];
    const Point2 b = loop[(i + 1) % n];
    const Point2 c = loop[(i + 2) % n];
    const Point2 t = unit(b - a);
    const Point2 t2 = unit(c - b);
    const Point2 nrm{t.y, -t.x};
    const Point2 nrm2{t2.y, -t2.x};
    Piece seg;
    seg.a = a + d * nrm;
    seg.b = b + d * nrm;
    seg.length = distance(a, b);
    pieces.push_back(seg);

    const double turn = cross(t, t2);
    const bool reversal = std::abs(turn) <= 1e-14 && dot(t, t2) < 0.0;
    if (turn > 1e-14 || reversal) {
      Piece arc;
      arc.arc = true;
      arc.center = b;
      arc.radius = d;
      arc.theta0 = std::atan2(nrm.y, nrm.x);
      arc.sweep = reversal ? kPi : std::atan2(cross(nrm, nrm2), dot(nrm, nrm2));
      arc.length = d * arc.sweep;
      pieces.push_back(arc);
    }
  }
  return pieces;
}

// n points equidistributed in arclength on the part of the parallel curve at
// distance d from the path that is not overlapped by other pieces. `phase`
// shifts the samples by a fraction of one step.
std::vector<Point2> sample_parallel_curve(const std::vector<Point2>& path, bool closed, double d,
                                          int n, double phase, double* kept_length = nullptr) {
  const std::vector<Piece> pieces = parallel_pieces(path, closed, d);
  double total = 0.0;
  for (const Piece& p : pieces) total += p.length;
  const double h = std::min(total / (64.0 * n), total / 4096.0);

  struct Node {
    std::size_t piece;
    double s;       // arclength within piece
    double kept;    // cumulative kept arclength up to this node
    bool keep;
  };
  std::vector<Node> nodes;
  const double threshold = d * (1.0 - 1e-9);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const int m = std::max(1, static_cast<int>(std::ceil(pieces[i].length / h)));
    for (int j = 0; j <= m; ++j) {
      const double s = pieces[i].length * j / m;
      const bool keep = polyline_distance(path, closed, pieces[i].at(s)) >= threshold;
      nodes.push_back({i, s, 0.0, keep});
    }
  }
  double acc = 0.0;
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (nodes[j].piece == nodes[j - 1].piece && nodes[j].keep && nodes[j - 1].keep) {
      acc += nodes[j].s - nodes[j - 1].s;
    }
    nodes[j].kept = acc;
  }
  if (kept_length != nullptr) *kept_length = acc;

  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(n));
  std::size_t j = 1;
  for (int i = 0; i < n; ++i) {
    const double target = (i + phase) * acc / n;
    while (j + 1 < nodes.size() && nodes[j].kept < target) ++j;
    // Skip zero-length (trimmed or piece-boundary) intervals.
    while (j + 1 < nodes.size() && nodes[j].kept == nodes[j - 1].kept) ++j;
    const Node& lo = nodes[j - 1];
    const Node& hi = nodes[j];
    const double span = hi.kept - lo.kept;
    const double f = span > 0.0 ? std::clamp((target - lo.kept) / span, 0.0, 1.0) : 0.0;
    out.push_back(pieces[hi.piece].at(lo.s + f * (hi.s - lo.s)));
  }
  return out;
}

struct TurnInfo {
  std::vector<double> angles;  // turning angle at each spine vertex, 0 at the ends
};

TurnInfo spine_turns(const std::vector<Point2>& spine) {
  TurnInfo info;
  info.angles.assign(spine.size(), 0.0);
  for (std::size_t i = 1; i + 1 < spine.size(); ++i) {
    const Point2 t1 = unit(spine[i] - spine[i - 1]);
    const Point2 t2 = unit(spine[i + 1] - spine[i]);
    info.angles[i] = std::atan2(std::abs(cross(t1, t2)), dot(t1, t2));
  }
  return info;
}

// Whether each corner overlap of the tube stays within its two segments, in
// which case the closed-form area and perimeter are exact.
bool tube_corners_local(const Tube& t) {
  const TurnInfo turns = spine_turns(t.spine);
  for (std::size_t i = 0; i + 1 < t.spine.size(); ++i) {
    const double ta = std::tan(0.5 * turns.angles[i]);
    const double tb = std::tan(0.5 * turns.angles[i + 1]);
    if (!std::isfinite(ta) || !std::isfinite(tb) ||
        t.epsilon * (ta + tb) > distance(t.spine[i], t.spine[i + 1])) {
      return false;
    }
  }
  return true;
}

struct Box {
  Point2 lo, hi;
};

Box bounding_box(const Domain2D& domain) {
  return std::visit(
      [](const auto& s) -> Box {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return {s.center - Point2{s.radius, s.radius}, s.center + Point2{s.radius, s.radius}};
        } else {
          const std::vector<Point2>& pts = [&]() -> const std::vector<Point2>& {
            if constexpr (std::is_same_v<T, Polygon>) return s.vertices;
            else return s.spine;
          }();
          Box b{pts[0], pts[0]};
          for (const Point2& p : pts) {
            b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y)};
            b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y)};
          }
          if constexpr (std::is_same_v<T, Tube>) {
            b.lo = b.lo - Point2{s.epsilon, s.epsilon};
            b.hi = b.hi + Point2{s.epsilon, s.epsilon};
          }
          return b;
        }
      },
      domain.shape());
}

double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

// Position along a closed polygon at arclength s in [0, perimeter).
Point2 polygon_point_at(const std::vector<Point2>& v, const std::vector<double>& cum, double s) {
  const double total = cum.back();
  s = std::fmod(s, total);
  if (s < 0.0) s += total;
  std::size_t i = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), s) - cum.begin());
  i = std::clamp<std::size_t>(i, 1, v.size()) - 1;
  const Point2 a = v[i];
  const Point2 b = v[(i + 1) % v.size()];
  const double len = cum[i + 1] - cum[i];
  return a + (b - a) * ((s - cum[i]) / len);
}

std::vector<double> cumulative_lengths(const std::vector<Point2>& v) {
  std::vector<double> cum{0.0};
  for (std::size_t i = 0; i < v.size(); ++i) cum.push_back(cum.back() + distance(v[i], v[(i + 1) % v.size()]));
  return cum;
}

BoundarySampling with_gaps(std::vector<Point2> pts) {
  BoundarySampling s;
  s.points = std::move(pts);
  s.gaps.resize(s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    s.gaps[i] = distance(s.points[i], s.points[(i + 1) % s.points.size()]);
    s.max_gap = std::max(s.max_gap, s.gaps[i]);
  }
  return s;
}

void require_count(int n, int minimum, const char* what) {
  if (n < minimum) {
    throw InputError(std::string(what) + ": need at least " + std::to_string(minimum) + " points");
  }
}

}  // namespace

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

// --- construction ----------------------------------------------------------

Domain2D Domain2D::polygon(std::vector<Point2> v) {
  if (v.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
  for (const Point2& p : v) {
    if (!is_finite(p)) throw GeometryError("polygon vertex is not finite");
  }
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == v[(i + 1) % n]) throw GeometryError("polygon has repeated consecutive vertices");
  }
  const double a = signed_area(v);
  if (!(std::abs(a) > 0.0)) throw GeometryError("polygon has zero area");
  if (a < 0.0) std::reverse(v.begin(), v.end());

  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a0 = v[i];
    const Point2 a1 = v[(i + 1) % n];
    // Adjacent edges may only share their common vertex.
    const Point2 a2 = v[(i + 2) % n];
    if (orient(a0, a1, a2) == 0.0 && dot(a1 - a0, a2 - a1) < 0.0) {
      throw GeometryError("polygon is not simple: edges fold back on each other");
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(a0, a1, v[j], v[(j + 1) % n])) {
        throw GeometryError("polygon is not simple: edges " + std::to_string(i) + " and " +
                            std::to_string(j) + " intersect");
      }
    }
  }
  return Domain2D(Polygon{std::move(v)});
}

Domain2D Domain2D::disk(Point2 center, double radius) {
  if (!is_finite(center)) throw GeometryError("disk centre is not finite");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw GeometryError("disk radius must be positive");
  return Domain2D(Disk{center, radius});
}

Domain2D Domain2D::tube(std::vector<Point2> spine, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw GeometryError("tube epsilon must be positive");
  if (spine.empty()) throw GeometryError("tube spine is empty");
  for (const Point2& p : spine) {
    if (!is_finite(p)) throw GeometryError("tube spine point is not finite");
  }
  if (spine.size() == 1) return disk(spine[0], epsilon);
  const std::size_t n = spine.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (spine[i] == spine[i + 1]) throw GeometryError("tube spine has repeated consecutive points");
  }
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (orient(spine[i], spine[i + 1], spine[i + 2]) == 0.0 &&
        dot(spine[i + 1] - spine[i], spine[i + 2] - spine[i + 1]) < 0.0) {
      throw GeometryError("tube spine is not simple: it folds back on itself");
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 2; j + 1 < n; ++j) {
      const double d = segment_segment_distance(spine[i], spine[i + 1], spine[j], spine[j + 1]);
      if (d == 0.0) throw GeometryError("tube spine is not simple");
      if (epsilon >= 0.5 * d) {
        throw GeometryError("tube epsilon " + std::to_string(epsilon) +
                            " overlaps the spine with itself (half self-distance " +
                            std::to_string(0.5 * d) + ")");
      }
    }
  }
  return Domain2D(Tube{std::move(spine), epsilon});
}

Domain2D tube_of(std::vector<Point2> spine, double epsilon) {
  return Domain2D::tube(std::move(spine), epsilon);
}

// --- measures --------------------------------------------------------------

AreaInfo area_info(const Domain2D& domain) {
  return std::visit(
      [](const auto& s) -> AreaInfo {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          return {signed_area(s.vertices), false};
        } else if constexpr (std::is_same_v<T, Disk>) {
          return {kPi * s.radius * s.radius, false};
        } else {
          const double eps = s.epsilon;
          const double bound = 2.0 * eps * path_length(s.spine, false) + kPi * eps * eps;
          if (!tube_corners_local(s)) return {bound, true};
          // Each bend of turning angle phi adds a sector eps^2 phi / 2 on the
          // outer side and double-counts a kite eps^2 tan(phi/2) on the inner side.
          double correction = 0.0;
          for (double phi : spine_turns(s.spine).angles) {
            correction += eps * eps * (std::tan(0.5 * phi) - 0.5 * phi);
          }
          return {bound - correction, false};
        }
      },
      domain.shape());
}

double area(const Domain2D& domain) { return area_info(domain).value; }

double perimeter(const Domain2D& domain) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          return path_length(s.vertices, true);
        } else if constexpr (std::is_same_v<T, Disk>) {
          return 2.0 * kPi * s.radius;
        } else {
          const double eps = s.epsilon;
          if (tube_corners_local(s)) {
            double p = 2.0 * path_length(s.spine, false) + 2.0 * kPi * eps;
            for (double phi : spine_turns(s.spine).angles) p += eps * (phi - 2.0 * std::tan(0.5 * phi));
            return p;
          }
          double kept = 0.0;
          sample_parallel_curve(s.spine, false, eps, 4096, 0.0, &kept);
          return kept;
        }
      },
      domain.shape());
}

Point2 centroid(const Domain2D& domain) {
  return std::visit(
      [&](const auto& s) -> Point2 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          return polygon_centroid(s.vertices);
        } else if constexpr (std::is_same_v<T, Disk>) {
          return s.center;
        } else {
          return polygon_centroid(sample_parallel_curve(s.spine, false, s.epsilon, 8192, 0.0));
        }
      },
      domain.shape());
}

double circumradius(const Domain2D& domain, Point2 about) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return distance(about, s.center) + s.radius;
        } else {
          const auto& pts = [&]() -> const std::vector<Point2>& {
            if constexpr (std::is_same_v<T, Polygon>) return s.vertices;
            else return s.spine;
          }();
          double r = 0.0;
          for (const Point2& p : pts) r = std::max(r, distance(about, p));
          if constexpr (std::is_same_v<T, Tube>) r += s.epsilon;
          return r;
        }
      },
      domain.shape());
}

double diameter(const Domain2D& domain) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return 2.0 * s.radius;
        } else {
          const auto& pts = [&]() -> const std::vector<Point2>& {
            if constexpr (std::is_same_v<T, Polygon>) return s.vertices;
            else return s.spine;
          }();
          double d = 0.0;
          for (const Point2& p : pts) {
            for (const Point2& q : pts) d = std::max(d, distance(p, q));
          }
          if constexpr (std::is_same_v<T, Tube>) d += 2.0 * s.epsilon;
          return d;
        }
      },
      domain.shape());
}

// --- sampling --------------------------------------------------------------

BoundarySampling sample_boundary(const Domain2D& domain, int n) {
  require_count(n, 3, "sample_boundary");
  return std::visit(
      [n](const auto& s) -> BoundarySampling {
        using T = std::decay_t<decltype(s)>;
        std::vector<Point2> pts;
        if constexpr (std::is_same_v<T, Disk>) {
          for (int j = 0; j < n; ++j) {
            const double t = 2.0 * kPi * j / n;
            pts.push_back(s.center + Point2{s.radius * std::cos(t), s.radius * std::sin(t)});
          }
        } else if constexpr (std::is_same_v<T, Polygon>) {
          const std::vector<Point2>& v = s.vertices;
          const std::size_t m = v.size();
          if (static_cast<std::size_t>(n) < m) {
            throw InputError("sample_boundary: polygon sampling needs n >= vertex count");
          }
          std::vector<double> len(m);
          double total = 0.0;
          for (std::size_t i = 0; i < m; ++i) total += len[i] = distance(v[i], v[(i + 1) % m]);
          // Points per edge: proportional to length, at least one, then balanced
          // greedily so that the largest sub-edge gap is as small as possible.
          std::vector<int> count(m);
          int used = 0;
          for (std::size_t i = 0; i < m; ++i) {
            count[i] = std::max(1, static_cast<int>(std::floor(n * len[i] / total)));
            used += count[i];
          }
          while (used < n) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < m; ++i) {
              if (len[i] / count[i] > len[best] / count[best]) best = i;
            }
            ++count[best];
            ++used;
          }
          while (used > n) {
            std::size_t best = m;
            for (std::size_t i = 0; i < m; ++i) {
              if (count[i] > 1 && (best == m || len[i] / (count[i] - 1) < len[best] / (count[best] - 1))) {
                best = i;
              }
            }
            --count[best];
            --used;
          }
          for (std::size_t i = 0; i < m; ++i) {
            const Point2 a = v[i];
            const Point2 b = v[(i + 1) % m];
            for (int j = 0; j < count[i]; ++j) pts.push_back(j == 0 ? a : a + (b - a) * (double(j) / count[i]));
          }
        } else {
          pts = sample_parallel_curve(s.spine, false, s.epsilon, n, 0.0);
        }
        return with_gaps(std::move(pts));
      },
      domain.shape());
}

std::vector<Point2> validation_points(const Domain2D& domain, int n) {
  require_count(n, 3, "validation_points");
  return std::visit(
      [n](const auto& s) -> std::vector<Point2> {
        using T = std::decay_t<decltype(s)>;
        std::vector<Point2> pts;
        if constexpr (std::is_same_v<T, Disk>) {
          for (int j = 0; j < n; ++j) {
            const double t = 2.0 * kPi * (j + 0.5) / n;
            pts.push_back(s.center + Point2{s.radius * std::cos(t), s.radius * std::sin(t)});
          }
        } else if constexpr (std::is_same_v<T, Polygon>) {
          const std::vector<double> cum = cumulative_lengths(s.vertices);
          for (int j = 0; j < n; ++j) pts.push_back(polygon_point_at(s.vertices, cum, cum.back() * (j + 0.5) / n));
        } else {
          pts = sample_parallel_curve(s.spine, false, s.epsilon, n, 0.5);
        }
        return pts;
      },
      domain.shape());
}

std::vector<Point2> collocation_points(const Domain2D& domain, int n) {
  const auto* poly = std::get_if<Polygon>(&domain.shape());
  if (poly == nullptr) return sample_boundary(domain, n).points;
  require_count(n, 3, "collocation_points");

  const std::vector<Point2>& v = poly->vertices;
  const std::vector<double> cum = cumulative_lengths(v);
  const double total = cum.back();
  const double reach = 0.1 * total;
  // Density 2 within `reach` of a vertex (measured along the boundary), else 1.
  std::vector<double> breaks{0.0, total};
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (double b : {cum[i] - reach, cum[i] + reach}) {
      b = std::fmod(b, total);
      if (b < 0.0) b += total;
      breaks.push_back(b);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  auto weight = [&](double s) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      double d = std::abs(s - cum[i]);
      d = std::min(d, total - d);
      if (d < reach) return 2.0;
    }
    return 1.0;
  };
  std::vector<double> wcum{0.0};
  std::vector<double> wts;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    wts.push_back(weight(0.5 * (breaks[i] + breaks[i + 1])));
    wcum.push_back(wcum.back() + wts.back() * (breaks[i + 1] - breaks[i]));
  }
  std::vector<Point2> pts;
  std::size_t k = 0;
  for (int j = 0; j < n; ++j) {
    const double target = wcum.back() * j / n;
    while (k + 1 < wts.size() && wcum[k + 1] <= target) ++k;
    const double s = breaks[k] + (target - wcum[k]) / wts[k];
    pts.push_back(polygon_point_at(v, cum, s));
  }
  return pts;
}

std::vector<Point2> exterior_offset_points(const Domain2D& domain, double offset, int n) {
  require_count(n, 3, "exterior_offset_points");
  if (!(offset > 0.0)) throw InputError("exterior_offset_points: offset must be positive");
  return std::visit(
      [&](const auto& s) -> std::vector<Point2> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return sample_boundary(Domain2D::disk(s.center, s.radius + offset), n).points;
        } else if constexpr (std::is_same_v<T, Polygon>) {
          return sample_parallel_curve(s.vertices, true, offset, n, 0.0);
        } else {
          return sample_parallel_curve(s.spine, false, s.epsilon + offset, n, 0.0);
        }
      },
      domain.shape());
}

// --- containment -----------------------------------------------------------

Location locate(const Domain2D& domain, Point2 p, double tolerance) {
  return std::visit(
      [&](const auto& s) -> Location {
        using T = std::decay_t<decltype(s)>;
        double signed_dist = 0.0;
        if constexpr (std::is_same_v<T, Disk>) {
          signed_dist = distance(p, s.center) - s.radius;
        } else if constexpr (std::is_same_v<T, Tube>) {
          signed_dist = polyline_distance(s.spine, false, p) - s.epsilon;
        } else {
          const double d = polyline_distance(s.vertices, true, p);
          if (d <= tolerance) return Location::boundary;
          return ray_cast_inside(s.vertices, p) ? Location::inside : Location::outside;
        }
        if (std::abs(signed_dist) <= tolerance) return Location::boundary;
        return signed_dist < 0.0 ? Location::inside : Location::outside;
      },
      domain.shape());
}

bool contains(const Domain2D& domain, Point2 p, double tolerance) {
  return locate(domain, p, tolerance) == Location::inside;
}

double boundary_distance(const Domain2D& domain, Point2 p) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return std::abs(distance(p, s.center) - s.radius);
        } else if constexpr (std::is_same_v<T, Tube>) {
          // Exact outside; a lower bound inside.
          return std::abs(polyline_distance(s.spine, false, p) - s.epsilon);
        } else {
          return polyline_distance(s.vertices, true, p);
        }
      },
      domain.shape());
}

// --- offsets ---------------------------------------------------------------

Domain2D shrink(const Domain2D& domain, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InputError("shrink: delta must be positive");
  return std::visit(
      [&](const auto& s) -> Domain2D {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          if (delta >= s.radius) throw GeometryError("shrink: offset collapses the disk");
          return Domain2D::disk(s.center, s.radius - delta);
        } else if constexpr (std::is_same_v<T, Tube>) {
          if (delta >= s.epsilon) throw GeometryError("shrink: offset collapses the tube");
          return Domain2D::tube(s.spine, s.epsilon - delta);
        } else {
          const std::vector<Point2>& v = s.vertices;
          const std::size_t n = v.size();
          std::vector<Point2> out(n);
          for (std::size_t i = 0; i < n; ++i) {
            const Point2 prev = v[(i + n - 1) % n];
            const Point2 t1 = unit(v[i] - prev);
            const Point2 t2 = unit(v[(i + 1) % n] - v[i]);
            const Point2 n1{-t1.y, t1.x};  // inward normals of a CCW polygon
            const Point2 n2{-t2.y, t2.x};
            const double denom = cross(t1, t2);
            if (std::abs(denom) < 1e-12) {
              out[i] = v[i] + delta * n1;
              continue;
            }
            // Intersection of the two offset lines p1 + a t1 and p2 + b t2.
            const Point2 p1 = prev + delta * n1;
            const Point2 p2 = v[i] + delta * n2;
            const double a = cross(p2 - p1, t2) / denom;
            out[i] = p1 + a * t1;
          }
          for (std::size_t i = 0; i < n; ++i) {
            if (dot(out[(i + 1) % n] - out[i], v[(i + 1) % n] - v[i]) <= 0.0) {
              throw GeometryError("shrink: inward offset collapses an edge");
            }
          }
          Domain2D inner = [&] {
            try {
              return Domain2D::polygon(out);
            } catch (const GeometryError&) {
              throw GeometryError("shrink: inward offset is not a simple polygon");
            }
          }();
          const auto& w = std::get<Polygon>(inner.shape()).vertices;
          double gap = std::numeric_limits<double>::infinity();
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < w.size(); ++j) {
              gap = std::min(gap, segment_segment_distance(v[i], v[(i + 1) % n], w[j], w[(j + 1) % w.size()]));
            }
          }
          if (gap < delta * (1.0 - 1e-9) || !contains(domain, w[0])) {
            throw GeometryError("shrink: inward offset leaves the domain");
          }
          return inner;
        }
      },
      domain.shape());
}

std::vector<Point2> interior_samples(const Domain2D& domain, int n, double min_boundary_distance) {
  if (n < 0) throw InputError("interior_samples: n must be nonnegative");
  const Box box = bounding_box(domain);
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(n));
  const std::uint64_t limit = 2000ULL * static_cast<std::uint64_t>(n) + 10000;
  for (std::uint64_t i = 1; static_cast<int>(out.size()) < n; ++i) {
    if (i > limit) throw GeometryError("interior_samples: could not place points inside the domain");
    const Point2 p{box.lo.x + (box.hi.x - box.lo.x) * halton(i, 2),
                   box.lo.y + (box.hi.y - box.lo.y) * halton(i, 3)};
    if (contains(domain, p) && boundary_distance(domain, p) >= min_boundary_distance) out.push_back(p);
  }
  return out;
}

TargetSet densify_polyline(const std::vector<Point2>& polyline, double spacing) {
  if (polyline.empty()) throw InputError("densify_polyline: empty polyline");
  if (!(spacing > 0.0)) throw InputError("densify_polyline: spacing must be positive");
  TargetSet set{{polyline[0]}};
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const Point2 a = polyline[i];
    const Point2 b = polyline[i + 1];
    const int m = std::max(1, static_cast<int>(std::ceil(distance(a, b) / spacing)));
    for (int j = 1; j <= m; ++j) set.points.push_back(a + (b - a) * (double(j) / m));
  }
  return set;
}

}  // namespace positivity::geometry
