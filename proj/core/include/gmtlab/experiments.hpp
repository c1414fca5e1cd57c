#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gmtlab/covering.hpp"
#include "gmtlab/discrete_set.hpp"

namespace gmt {

enum class Target { Kaufman, Falconer, BeckContinuum, ErdosBeck, Furstenberg, OrthoKaufman };
const char* to_string(Target t) noexcept;

inline constexpr std::size_t kDefaultXSample = 32;

struct ExperimentSpec {
  DiscreteSet x_set;
  DiscreteSet y_set;
  std::size_t x_sample = kDefaultXSample;
  // Levels for direction-set box counting; default [2, level(y.delta) - 2].
  std::optional<std::pair<int, int>> scale_levels;
  Target target = Target::Kaufman;
};

struct PerCenter {
  Point x;
  double slope = 0.0;
  double leaked_mass = 0.0;
};

struct ExperimentResult {
  Point best_x;
  DimensionEstimate best_dimension;
  double predicted_lower_bound = 0.0;
  double margin = 0.0;
  double dim_x = 0.0;
  double dim_y = 0.0;
  std::vector<PerCenter> per_x_table;
};

/// Greedy farthest-point order: starts at index 0, lowest index on ties.
std::vector<std::size_t> farthest_point_sample(std::span<const Point> points, std::size_t k);

/// Best direction-set dimension of pi_x(Y \ {x}) over sampled centres x, against
/// min(dim X, dim Y, 1) (Kaufman) or min(dim X + dim Y - 1, 1) (Falconer).
/// Throws CollinearX or LowDimY when the target's precondition fails.
ExperimentResult radial_dimension_profile(const ExperimentSpec& spec);

/// Box dimension of the spanned lines as points (angle, offset) of line space.
DimensionEstimate line_set_dimension(const DiscreteSet& x);
DimensionEstimate line_set_dimension(const DiscreteSet& x, int level_min, int level_max);

struct ErdosBeckProfile {
  double predicted = 0.0;
  double measured = 0.0;
  double t_achieved = 0.0;
  double dim_x = 0.0;
  bool hypothesis_holds = false;  // t_achieved <= t
  std::optional<Line> worst_line;
};

inline constexpr std::size_t kErdosBeckCandidates = 16;

/// t_achieved = max over the richest spanned lines l of dim X - dim(X \ T_l), T_l the delta-tube
/// around l; predicted = min(2 dim X - 2 t_achieved, 2).
ErdosBeckProfile erdos_beck_profile(const DiscreteSet& x, double t);

struct FurstenbergCount {
  std::uint64_t count = 0;
  double wolff_floor = 0.0;
  double ratio = 0.0;
  std::size_t points = 0;
  std::size_t tubes = 0;
  double x_constant = 0.0;        // worst (delta, s) ratio of X
  bool x_hypothesis_met = false;  // x_constant <= delta^-eps0
  double pencil_worst_ratio = 0.0;
  bool pencils_met = false;       // every pencil is a (delta, sigma, 16)-set of tubes
  std::uint64_t dual_line_count = 0;   // |slope| <= 1 subfamily, line-metric cells
  std::uint64_t dual_point_count = 0;  // same subfamily after D*, dyadic squares
  bool duality_consistent = false;     // counts within a factor 4
};

inline constexpr double kFurstenbergEps0 = 0.05;

FurstenbergCount furstenberg_count(double sigma, double s, double delta, std::uint64_t seed);
// Same count for a caller-supplied X.
FurstenbergCount furstenberg_count(const DiscreteSet& x, double sigma, double s, std::uint64_t seed);

// Sorted net indices forming a 1D (2^-level, sigma)-set in [0, 2^level), by budgeted branching.
std::vector<std::uint64_t> random_dyadic_indices(double sigma, int level, std::uint64_t seed);

struct OrthoProfile {
  std::vector<double> exceptional_directions;  // angles in [0, pi)
  double measured_dim = 0.0;
  std::size_t net_size = 0;
  int level_min = 0;
  int level_max = 0;
  double min_projected_dim = 0.0;
};

inline constexpr int kOrthoNetLevel = 10;

/// Projects y onto a 2^-10-net of directions (M even, so pi/2 is a net direction) and flags those
/// whose projection has box dimension below sigma. Projections are measured on levels
/// [11, level(delta) - 1] when that spans at least 4 levels, else [2, level(delta) - 2].
OrthoProfile orthogonal_exceptional_profile(const DiscreteSet& y, double sigma);

}  // namespace gmt
