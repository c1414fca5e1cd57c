#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gmtlab/discrete_set.hpp"

namespace gmt {

inline constexpr int kMaxDyadicLevel = 20;

// Origin-anchored dyadic squares of side 2^-level.
struct DyadicGrid {
  int level = 0;

  explicit DyadicGrid(int level);
  double side() const noexcept;
  std::int64_t index(double v) const noexcept;
  // Packs the square containing p into one sortable key.
  std::uint64_t key(Point p) const noexcept;
  Point center_of(std::uint64_t key) const noexcept;
};

// Smallest level L with 2^-L <= delta (within rounding).
int dyadic_level(double delta);
std::pair<int, int> default_levels(double delta);

std::uint64_t covering_number(std::span<const Point> points, int level);
std::uint64_t covering_number(const DiscreteSet& set, int level);
// Intervals [k 2^-level, (k+1) 2^-level) on the real line.
std::uint64_t covering_number_1d(std::span<const double> values, int level);
// Sorted distinct square keys at this level.
std::vector<std::uint64_t> occupied_cells(std::span<const Point> points, int level);

struct DimensionEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  int level_min = 0;
  int level_max = 0;
  double r_squared = 1.0;
  std::vector<std::pair<int, std::uint64_t>> per_scale_counts;
};

DimensionEstimate box_dimension(const DiscreteSet& set, int level_min, int level_max);
// Regression over default_levels(set.delta()).
DimensionEstimate box_dimension(const DiscreteSet& set);
// Same regression on raw coordinates, without the resolution check.
DimensionEstimate box_dimension_of(std::span<const Point> points, int level_min, int level_max);
DimensionEstimate box_dimension_1d(std::span<const double> values, int level_min, int level_max);

/// Greedy dyadic upper estimate of the s-dimensional Hausdorff content: the cheapest single-level
/// cover among levels 0 .. dyadic_level(delta).
double hausdorff_content(const DiscreteSet& set, double s);

struct DeltaSetCheck {
  bool pass = true;
  double worst_ratio = 0.0;
  Point witness_center;
  int witness_level = 0;
};

/// Checks |P ∩ B(x, r)|_δ <= c r^s |P|_δ over dyadic r in [δ, 1]. Centres are the points of P and
/// the centres of occupied dyadic squares at the level of r. δ defaults to set.delta(); pass a
/// coarser scale to check at that resolution.
DeltaSetCheck verify_delta_s_set(const DiscreteSet& set, double s, double c,
                                 std::optional<double> scale = {});

struct FrostmanExtraction {
  DiscreteSet set;  // subset of the input, one point per kept level-rho square
  double rho = 0.0;
  int level = 0;
  double content = 0.0;  // hausdorff_content(input, s)
  bool meets_cardinality_bound = false;
};

inline constexpr double kFrostmanCardinalityFactor = 1.0 / 64.0;

/// Discrete Frostman extraction: walks the dyadic tree from level 0 down to the level of rho,
/// keeping at most ceil(2^{s·gap}) descendants under every kept square `gap` levels up. Children
/// are ranked by the dyadic net content of their points, ties by square key.
FrostmanExtraction frostman_extract(const DiscreteSet& set, double s, double rho);

}  // namespace gmt
