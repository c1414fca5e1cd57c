#include "gmtlab/geometry.hpp"

#include "gmtlab/errors.hpp"

namespace gmt {

namespace {
constexpr double kPi = std::numbers::pi;
}

double canonical_angle(double angle) noexcept {
  double a = std::fmod(angle, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

Line Line::through(Point p, Point q) {
  Point d = q - p;
  // Orientation fixed before atan2 so that through(p, q) and through(q, p) agree bit for bit.
  if (d.y < 0.0 || (d.y == 0.0 && d.x < 0.0)) d = -1.0 * d;
  double angle = std::atan2(d.y, d.x);
  if (angle >= kPi) angle = 0.0;
  const Point n{-std::sin(angle), std::cos(angle)};
  const double offset = 0.5 * (dot(n, p) + dot(n, q));
  return Line(angle, offset);
}

Line Line::from_point_angle(Point p, double angle) {
  const double a = canonical_angle(angle);
  const Point n{-std::sin(a), std::cos(a)};
  return Line(a, dot(n, p));
}

Line Line::from_angle_offset(double angle, double offset) {
  const double a = canonical_angle(angle);
  // Reducing the angle mod pi flips the normal when the original was in [pi, 2pi).
  const double turns = std::floor(angle / kPi);
  const bool flipped = static_cast<long long>(turns) % 2 != 0;
  return Line(a, flipped ? -offset : offset);
}

Line Line::from_slope_intercept(double slope, double intercept) {
  const double a = canonical_angle(std::atan(slope));
  return Line(a, std::cos(a) * intercept);
}

bool Line::is_vertical() const noexcept { return std::abs(std::cos(angle_)) < 1e-12; }

double line_distance(const Line& a, const Line& b) noexcept {
  const double d = std::abs(a.angle() - b.angle());
  const double angular = std::min(d, kPi - d);
  return angular + distance(a.anchor(), b.anchor());
}

bool same_line(const Line& a, const Line& b) noexcept {
  return line_distance(a, b) < kLineEqualityTolerance;
}

Tube::Tube(Line axis, double width) : axis_(axis), width_(width) {
  require(std::isfinite(width) && width > 0.0 && width <= 1.0, ErrorKind::PreconditionViolated,
          "tube width must lie in (0, 1]");
}

Ball::Ball(Point center, double radius) : center_(center), radius_(radius) {
  require(std::isfinite(radius) && radius > 0.0, ErrorKind::PreconditionViolated,
          "ball radius must be finite and positive");
}

bool tube_contains(const Tube& t, Point p) noexcept { return t.contains(p); }

Line line_through(Point p, Point q) {
  require(distance(p, q) > kDegeneratePairTolerance, ErrorKind::DegeneratePair,
          "points coincide within tolerance");
  return Line::through(p, q);
}

Line dualize_point(Point p) { return Line::from_slope_intercept(p.x, p.y); }

Point dualize_line(const Line& l) {
  require(!l.is_vertical(), ErrorKind::VerticalLine, "duality is undefined for vertical lines");
  return {-l.slope(), l.intercept()};
}

}  // namespace gmt
