#include "gmtlab/exact.hpp"

#include <cmath>
#include <numeric>

#include "gmtlab/errors.hpp"

namespace gmt {

std::optional<Rational> as_rational(double x, std::int64_t max_den) {
  if (!std::isfinite(x) || std::abs(x) > 0x1.0p31) return std::nullopt;
  if (x == std::floor(x)) return Rational{static_cast<std::int64_t>(x), 1};
  // Continued-fraction convergents h/k of x.
  long double rest = x;
  std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (int step = 0; step < 64; ++step) {
    const long double a_ld = std::floor(rest);
    const auto a = static_cast<std::int64_t>(a_ld);
    const std::int64_t h = a * h0 + h1;
    const std::int64_t k = a * k0 + k1;
    if (k > max_den || k <= 0) return std::nullopt;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    if (static_cast<double>(h) / static_cast<double>(k) == x) return Rational{h, k};
    const long double frac = rest - a_ld;
    if (frac == 0.0L) return std::nullopt;
    rest = 1.0L / frac;
  }
  return std::nullopt;
}

std::optional<RationalGrid> rational_grid(std::span<const Point> points) {
  std::vector<Rational> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  std::int64_t den = 1;
  auto absorb = [&](double v, std::vector<Rational>& out) {
    const auto q = as_rational(v);
    if (!q) return false;
    den = std::lcm(den, q->den);
    out.push_back(*q);
    return den <= kMaxLatticeDenominator;
  };
  for (const Point& p : points) {
    if (!absorb(p.x, xs) || !absorb(p.y, ys)) return std::nullopt;
  }
  RationalGrid grid;
  grid.denominator = den;
  grid.points.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    grid.points.push_back({xs[i].num * (den / xs[i].den), ys[i].num * (den / ys[i].den)});
  }
  return grid;
}

ExactLine exact_line_through(LatticePoint p, LatticePoint q) {
  std::int64_t a = q.y - p.y;
  std::int64_t b = p.x - q.x;
  require(a != 0 || b != 0, ErrorKind::DegeneratePair, "coincident lattice points");
  const std::int64_t g = std::gcd(a, b);
  a /= g;
  b /= g;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
  }
  return {a, b, a * p.x + b * p.y};
}

Line to_line(const ExactLine& l, std::int64_t denominator) {
  const double a = static_cast<double>(l.a);
  const double b = static_cast<double>(l.b);
  const double h = std::hypot(a, b);
  // Normal (a, b)/h, offset c / (h · denominator).
  const double angle = std::atan2(-a, b);
  return Line::from_angle_offset(angle, static_cast<double>(l.c) / (h * static_cast<double>(denominator)));
}

}  // namespace gmt
