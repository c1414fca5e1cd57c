#pragma once

#include <cmath>
#include <compare>
#include <numbers>

namespace gmt {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) noexcept { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) noexcept = default;
  friend constexpr auto operator<=>(Point a, Point b) noexcept = default;
};

constexpr double dot(Point a, Point b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) noexcept { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) noexcept { return norm(a - b); }
inline bool is_finite(Point p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

inline constexpr double kLineEqualityTolerance = 1e-9;
inline constexpr double kDegeneratePairTolerance = 1e-12;
inline constexpr double kBoundaryTolerance = 1e-12;

// An unoriented line {p : normal · p = offset}, direction angle in [0, pi).
class Line {
 public:
  Line() = default;

  static Line through(Point p, Point q);
  static Line from_point_angle(Point p, double angle);
  static Line from_angle_offset(double angle, double offset);
  static Line from_slope_intercept(double slope, double intercept);

  double angle() const noexcept { return angle_; }
  double offset() const noexcept { return offset_; }
  Point direction() const noexcept { return {normal_.y, -normal_.x}; }
  Point normal() const noexcept { return normal_; }
  // Closest point to the origin.
  Point anchor() const noexcept { return offset_ * normal(); }

  double signed_distance(Point p) const noexcept { return dot(normal_, p) - offset_; }
  bool is_vertical() const noexcept;
  // Only meaningful for non-vertical lines.
  double slope() const noexcept { return std::tan(angle_); }
  double intercept() const noexcept { return offset_ / std::cos(angle_); }

 private:
  Line(double angle, double offset)
      : angle_(angle), offset_(offset), normal_{-std::sin(angle), std::cos(angle)} {}

  double angle_ = 0.0;
  double offset_ = 0.0;
  Point normal_{0.0, 1.0};  // cached: point-line tests sit in inner loops
};

double canonical_angle(double angle) noexcept;

/// Projective angle between directions plus Euclidean distance between anchors.
double line_distance(const Line& a, const Line& b) noexcept;
bool same_line(const Line& a, const Line& b) noexcept;

class Tube {
 public:
  Tube(Line axis, double width);

  const Line& axis() const noexcept { return axis_; }
  double width() const noexcept { return width_; }
  // Closed width/2-neighbourhood of the axis.
  bool contains(Point p) const noexcept {
    return std::abs(axis_.signed_distance(p)) <= 0.5 * width_ + kBoundaryTolerance;
  }
  Tube inflated(double rho) const { return Tube(axis_, width_ + 2.0 * rho); }

 private:
  Line axis_;
  double width_;
};

class Ball {
 public:
  Ball(Point center, double radius);

  Point center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  bool contains(Point p) const noexcept {
    const Point d = p - center_;
    return dot(d, d) <= radius_ * radius_ * (1.0 + 1e-12) + kBoundaryTolerance;
  }

 private:
  Point center_;
  double radius_;
};

// {p : xi < |p - y| <= 2 xi} style shells are the difference of two balls.
struct Annulus {
  Ball outer;
  Ball inner;
  bool contains(Point p) const noexcept { return outer.contains(p) && !inner.contains(p); }
};

bool tube_contains(const Tube& t, Point p) noexcept;
Line line_through(Point p, Point q);

/// D(m, b) = {y = m x + b}.
Line dualize_point(Point p);
/// D*({y = c x + d}) = (-c, d). Throws VerticalLine.
Point dualize_line(const Line& l);

}  // namespace gmt
