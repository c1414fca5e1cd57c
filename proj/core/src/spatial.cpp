#include "gmtlab/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gmt {

BallIndex::BallIndex(std::span<const Point> points, std::span<const double> weights) {
  build(points, weights);
}

BallIndex::BallIndex(std::span<const Point> points) {
  std::vector<double> ones(points.size(), 1.0);
  build(points, ones);
}

void BallIndex::build(std::span<const Point> points, std::span<const double> weights) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].y != points[b].y) return points[a].y < points[b].y;
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    return a < b;
  });
  xs_.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) xs_[k] = points[order[k]].x;
  for (std::size_t k = 0; k < order.size();) {
    const double y = points[order[k]].y;
    const std::size_t begin = k;
    while (k < order.size() && points[order[k]].y == y) ++k;
    rows_.push_back({y, begin, k});
  }
  // Row r owns prefix slots [begin + r, end + r]: one extra slot per row for its total.
  prefix_.assign(order.size() + rows_.size(), 0.0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Row& row = rows_[r];
    double acc = 0.0;
    for (std::size_t s = row.begin; s < row.end; ++s) {
      prefix_[s + r] = acc;
      acc += weights[order[s]];
    }
    prefix_[row.end + r] = acc;
  }
  row_y_.resize(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) row_y_[r] = rows_[r].y;
}

double BallIndex::mass(Point center, double radius) const {
  // Same closed-ball tolerance as Ball::contains.
  const double r2 = radius * radius * (1.0 + 1e-12) + kBoundaryTolerance;
  const double reach = std::sqrt(r2);
  auto first = std::lower_bound(row_y_.begin(), row_y_.end(), center.y - reach);
  double total = 0.0;
  for (auto it = first; it != row_y_.end() && *it <= center.y + reach; ++it) {
    const std::size_t r = static_cast<std::size_t>(it - row_y_.begin());
    const double dy = *it - center.y;
    const double h2 = r2 - dy * dy;
    if (h2 < 0.0) continue;
    const double h = std::sqrt(h2);
    const Row& row = rows_[r];
    const auto xb = xs_.begin();
    const auto lo = std::lower_bound(xb + row.begin, xb + row.end, center.x - h);
    const auto hi = std::upper_bound(lo, xb + row.end, center.x + h);
    const std::size_t a = static_cast<std::size_t>(lo - xb);
    const std::size_t b = static_cast<std::size_t>(hi - xb);
    total += prefix_[b + r] - prefix_[a + r];
  }
  return total;
}

}  // namespace gmt
