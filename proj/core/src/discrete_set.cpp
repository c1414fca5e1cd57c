#include "gmtlab/discrete_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gmtlab/errors.hpp"

namespace gmt {

namespace {

struct Cell {
  std::int64_t ix;
  std::int64_t iy;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Checks separation >= min_gap with a grid of side min_gap: any violating pair falls in
// neighbouring cells.
bool separated(std::span<const Point> points, double min_gap) {
  if (points.size() < 2) return true;
  std::vector<std::pair<Cell, std::size_t>> cells(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    cells[i] = {Cell{static_cast<std::int64_t>(std::floor(points[i].x / min_gap)),
                     static_cast<std::int64_t>(std::floor(points[i].y / min_gap))},
                i};
  }
  std::sort(cells.begin(), cells.end());
  const double gap2 = min_gap * min_gap * (1.0 - 1e-12);
  for (const auto& [cell, i] : cells) {
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const Cell probe{cell.ix + dx, cell.iy + dy};
        auto it = std::lower_bound(cells.begin(), cells.end(), std::pair{probe, std::size_t{0}});
        for (; it != cells.end() && it->first == probe; ++it) {
          if (it->second == i) continue;
          const Point d = points[it->second] - points[i];
          if (dot(d, d) < gap2) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

DiscreteSet::DiscreteSet(std::vector<Point> points, double delta, std::string label,
                         Provenance provenance)
    : points_(std::move(points)),
      delta_(delta),
      label_(std::move(label)),
      provenance_(std::move(provenance)) {
  require(std::isfinite(delta) && delta > 0.0 && delta <= 1.0, ErrorKind::PreconditionViolated,
          "delta must lie in (0, 1]");
  for (const Point& p : points_) {
    require(is_finite(p), ErrorKind::PreconditionViolated, "non-finite coordinate");
    require(norm(p) <= 2.0 + 1e-12, ErrorKind::PreconditionViolated, "point outside B(0, 2)");
  }
  require(separated(points_, 0.5 * delta_), ErrorKind::PreconditionViolated,
          "points closer than delta / 2");
}

DiscreteSet DiscreteSet::subset(std::span<const std::size_t> indices, std::string label) const {
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (std::size_t i : indices) pts.push_back(points_.at(i));
  return DiscreteSet(std::move(pts), delta_, label.empty() ? label_ : std::move(label),
                     provenance_);
}

double min_separation(std::span<const Point> points) {
  if (points.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<Point> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size() && sorted[j].x - sorted[i].x < best; ++j) {
      best = std::min(best, distance(sorted[i], sorted[j]));
    }
  }
  return best;
}

}  // namespace gmt
