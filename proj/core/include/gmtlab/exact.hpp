#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gmtlab/geometry.hpp"

namespace gmt {

inline constexpr std::int64_t kMaxRationalDenominator = std::int64_t{1} << 32;
// Common denominators above this fall back to float mode: lattice coordinates stay below 2^29
// and every cross product and line constant fits in 64 bits.
inline constexpr std::int64_t kMaxLatticeDenominator = std::int64_t{1} << 28;

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// Smallest-denominator p/q with q <= max_den whose double quotient equals x exactly.
std::optional<Rational> as_rational(double x, std::int64_t max_den = kMaxRationalDenominator);

struct LatticePoint {
  std::int64_t x;
  std::int64_t y;
  friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Exact integer image of a point set: p = (X, Y) / denominator for every point.
struct RationalGrid {
  std::int64_t denominator = 1;
  std::vector<LatticePoint> points;
};

std::optional<RationalGrid> rational_grid(std::span<const Point> points);

/// Line a·X + b·Y = c in lattice coordinates, gcd(a, b) = 1, first nonzero of (a, b) positive.
struct ExactLine {
  std::int64_t a;
  std::int64_t b;
  std::int64_t c;
  friend constexpr bool operator==(const ExactLine&, const ExactLine&) = default;
  friend constexpr auto operator<=>(const ExactLine&, const ExactLine&) = default;

  bool contains(LatticePoint p) const noexcept { return a * p.x + b * p.y == c; }
};

ExactLine exact_line_through(LatticePoint p, LatticePoint q);
Line to_line(const ExactLine& l, std::int64_t denominator);

}  // namespace gmt
