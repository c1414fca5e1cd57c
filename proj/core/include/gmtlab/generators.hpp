#pragma once

#include <cstdint>
#include <vector>

#include "gmtlab/discrete_set.hpp"

namespace gmt {

// p -> ratio · R(rotation) p + translation
struct SimilarityMap {
  double ratio = 0.5;
  double rotation = 0.0;
  Point translation;

  Point operator()(Point p) const noexcept;
};

struct IfsSystem {
  std::vector<SimilarityMap> maps;
  int depth = 0;  // 0: smallest depth reaching the target resolution
};

// Solves sum r_i^s = 1 by bisection.
double similarity_dimension(const IfsSystem& system);

IfsSystem cantor3();
IfsSystem four_corner();

inline constexpr std::size_t kMaxGeneratedPoints = std::size_t{1} << 24;
inline constexpr double kMinIfsDelta = 0x1.0p-20;
inline constexpr double kMinRandomDelta = 0x1.0p-14;
inline constexpr double kMaxGeneratorDelta = 0.25;

/// Depth-k images of the origin, k minimal with max ratio^k <= target_delta (or system.depth),
/// snapped to the target_delta lattice and deduplicated.
DiscreteSet gen_ifs(const IfsSystem& system, double target_delta);

/// Budgeted dyadic branching in [0, 1)^2 down to level L = ceil(log2(1/delta)). Each occupied
/// square carries a budget of leaf descendants (2^{sL} at the root) and splits into
/// round(budget / 2^{s(L-l-1)}) random subsquares, rounding probabilistically and clamping to
/// [1, 4]; the budget is shared equally. Output resolution is 2^-L.
DiscreteSet gen_random_delta_s_set(double s, double delta, std::uint64_t seed);

/// n - k distinct points on y = (x + 1)/2 and k lattice points off it, all on the 2^-20 lattice.
/// Regenerates until the maximum collinearity is exactly n - k.
DiscreteSet gen_planted_collinear(std::size_t n, std::size_t k, std::uint64_t seed);

// (i, j)/(m - 1) for 0 <= i, j < m; delta = 1/(m - 1).
DiscreteSet gen_grid(std::size_t m);
// (i, j)/2^level for 0 <= i, j < 2^level.
DiscreteSet gen_dyadic_grid(int level);
// n distinct uniform points of the 2^-20 lattice in [0, 1)^2.
DiscreteSet gen_uniform(std::size_t n, std::uint64_t seed);
// (i/n, 0) for 0 <= i < n.
DiscreteSet gen_segment(std::size_t n);
DiscreteSet gen_circle(std::size_t n, Point center, double radius);

// Union of two sets at the finer of their resolutions; throws unless still separated.
DiscreteSet unite(const DiscreteSet& a, const DiscreteSet& b, std::string label = {});

}  // namespace gmt
