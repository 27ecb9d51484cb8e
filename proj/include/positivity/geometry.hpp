#pragma once

// Planar domains (simple polygon, disk, tubular neighbourhood of a polyline),
// boundary sampling, containment and offsets.

#include <cstdint>
#include <variant>
#include <vector>

#include "positivity/point.hpp"

namespace positivity::geometry {

/// Distance below which a point counts as lying on the boundary.
inline constexpr double kBoundaryTolerance = 1e-12;

struct Polygon {
  std::vector<Point2> vertices;  // simple, counterclockwise
};

struct Disk {
  Point2 center;
  double radius = 1.0;
};

struct Tube {
  std::vector<Point2> spine;  // simple polyline with at least two points
  double epsilon = 0.0;
};

using Shape = std::variant<Polygon, Disk, Tube>;

/// A bounded, simply connected planar domain. Instances are validated on
/// construction; factories throw GeometryError on invalid input.
class Domain2D {
 public:
  /// Simple polygon with at least 3 vertices. Clockwise input is reoriented.
  static Domain2D polygon(std::vector<Point2> vertices);
  static Domain2D disk(Point2 center, double radius);
  /// See tube_of.
  static Domain2D tube(std::vector<Point2> spine, double epsilon);

  const Shape& shape() const { return shape_; }
  bool is_polygon() const { return std::holds_alternative<Polygon>(shape_); }
  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
  bool is_tube() const { return std::holds_alternative<Tube>(shape_); }

 private:
  explicit Domain2D(Shape s) : shape_(std::move(s)) {}
  Shape shape_;
};

/// {x : dist(x, spine) < epsilon}. A single-point spine yields a disk.
/// Throws GeometryError when the spine self-intersects, has repeated
/// consecutive points, or when epsilon is at least half the distance between
/// two non-adjacent spine segments (the neighbourhood would overlap itself).
Domain2D tube_of(std::vector<Point2> spine, double epsilon);

struct AreaInfo {
  double value = 0.0;
  /// True when value is the bound 2*eps*length + pi*eps^2 rather than the
  /// exact area (tubes whose corner overlaps reach past a segment).
  bool upper_bound = false;
};

AreaInfo area_info(const Domain2D& domain);
double area(const Domain2D& domain);
double perimeter(const Domain2D& domain);

/// Area centroid. For tubes it is computed from a fine boundary polygon.
Point2 centroid(const Domain2D& domain);
/// max over the closure of |x - about|.
double circumradius(const Domain2D& domain, Point2 about);
double diameter(const Domain2D& domain);

struct BoundarySampling {
  std::vector<Point2> points;
  std::vector<double> gaps;  // gaps[i] = |points[i+1] - points[i]|, wrapping
  double max_gap = 0.0;
};

/// n points on the boundary, approximately equidistributed in arclength.
/// Polygon samplings contain every vertex (n must be at least the vertex
/// count). Disk samplings start at angle 0.
BoundarySampling sample_boundary(const Domain2D& domain, int n);

/// n points equidistributed in arclength, offset by half a step from the
/// start of the boundary parametrisation. Used for a posteriori validation,
/// so that fit collocation points are not reused.
std::vector<Point2> validation_points(const Domain2D& domain, int n);

/// Collocation points for boundary solvers: like sample_boundary, but on
/// polygons the density is doubled within 10% of the perimeter of each vertex.
std::vector<Point2> collocation_points(const Domain2D& domain, int n);

/// n points on the exterior parallel curve {x : dist(x, D) = offset}.
std::vector<Point2> exterior_offset_points(const Domain2D& domain, double offset, int n);

enum class Location { inside, boundary, outside };

/// Three-valued containment: points within `tolerance` of the boundary are
/// reported as Location::boundary. Polygons use even-odd ray casting.
Location locate(const Domain2D& domain, Point2 p, double tolerance = kBoundaryTolerance);

/// True iff p is strictly inside (Location::inside).
bool contains(const Domain2D& domain, Point2 p, double tolerance = kBoundaryTolerance);

/// Unsigned distance from p to the boundary.
double boundary_distance(const Domain2D& domain, Point2 p);

/// A domain D1 with closure inside D and dist(boundary D1, boundary D) >= delta.
/// Disks and tubes shrink their radius; polygons are offset inward with
/// mitred corners. Throws GeometryError when the offset collapses.
Domain2D shrink(const Domain2D& domain, double delta);

/// n quasi-random (Halton) points strictly inside the domain at distance at
/// least min_boundary_distance from the boundary. Deterministic.
std::vector<Point2> interior_samples(const Domain2D& domain, int n,
                                     double min_boundary_distance = 0.0);

/// A compact set E represented by sample points.
struct TargetSet {
  std::vector<Point2> points;
};

/// Points along a polyline with spacing at most `spacing`, including every
/// vertex. A single-point polyline yields that point.
TargetSet densify_polyline(const std::vector<Point2>& polyline, double spacing);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

}  // namespace positivity::geometry
