#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gmtlab/geometry.hpp"

namespace gmt {

/// Closed-ball weight queries. Points are grouped into rows of equal y and sorted by x with
/// prefix sums, so a query costs one binary search per occupied row crossing the ball. Lattice
/// sets have few rows, which is the case this is tuned for.
class BallIndex {
 public:
  BallIndex(std::span<const Point> points, std::span<const double> weights);
  // Unit weights: mass() counts points.
  explicit BallIndex(std::span<const Point> points);

  double mass(Point center, double radius) const;
  std::size_t size() const noexcept { return xs_.size(); }

 private:
  struct Row {
    double y;
    std::size_t begin;
    std::size_t end;
  };
  void build(std::span<const Point> points, std::span<const double> weights);

  std::vector<Row> rows_;
  std::vector<double> row_y_;
  std::vector<double> xs_;
  std::vector<double> prefix_;
};

}  // namespace gmt
