#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gmtlab/geometry.hpp"

namespace gmt {

// Where a set came from; echoed into every report that consumes it.
struct Provenance {
  std::string generator = "supplied";
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
};

/// A finite point cloud at resolution delta: finite coordinates inside the closed ball B(0, 2),
/// pairwise distances at least delta / 2. The constructor enforces all three.
class DiscreteSet {
 public:
  DiscreteSet(std::vector<Point> points, double delta, std::string label = {},
              Provenance provenance = {});

  std::span<const Point> points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  double delta() const noexcept { return delta_; }
  const std::string& label() const noexcept { return label_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  DiscreteSet subset(std::span<const std::size_t> indices, std::string label = {}) const;

 private:
  std::vector<Point> points_;
  double delta_;
  std::string label_;
  Provenance provenance_;
};

// Smallest pairwise distance; +inf for fewer than two points.
double min_separation(std::span<const Point> points);

}  // namespace gmt
