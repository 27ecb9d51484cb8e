#pragma once

#include <cmath>

namespace positivity {

/// A point (or displacement) in the plane, in length units.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  constexpr Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Point2&) const = default;
};

constexpr Point2 operator*(double s, const Point2& p) { return p * s; }

constexpr double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product.
constexpr double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

inline double norm(const Point2& p) { return std::hypot(p.x, p.y); }

inline double distance(const Point2& a, const Point2& b) { return norm(a - b); }

inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace positivity
