#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gmtlab/covering.hpp"
#include "gmtlab/discrete_set.hpp"

namespace gmt {

inline constexpr double kMassTolerance = 1e-9;

/// Atomic measure on a DiscreteSet. Probability measures sum to 1; restrictions without
/// renormalisation are sub-probability measures and report their total().
class WeightedMeasure {
 public:
  static WeightedMeasure uniform(DiscreteSet support);
  // Weights must be nonnegative and sum to 1.
  static WeightedMeasure from_weights(DiscreteSet support, std::vector<double> weights);
  // Scales nonnegative weights to total mass 1.
  static WeightedMeasure normalized(DiscreteSet support, std::vector<double> weights);

  const DiscreteSet& support() const noexcept { return support_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double total() const noexcept { return total_; }
  std::size_t size() const noexcept { return weights_.size(); }

  // nu|_K for K = indices. The support keeps every point; weights outside K become 0.
  WeightedMeasure restrict(std::span<const std::size_t> indices, bool renormalize) const;

 private:
  WeightedMeasure(DiscreteSet support, std::vector<double> weights);

  DiscreteSet support_;
  std::vector<double> weights_;
  double total_;
};

double ball_mass(const WeightedMeasure& m, const Ball& b);
double tube_mass(const WeightedMeasure& m, const Tube& t,
                 std::optional<std::span<const std::size_t>> restrict_to = {});

struct FrostmanFit {
  double exponent = 0.0;
  double constant = 1.0;
  Point witness_center;
  double witness_radius = 0.0;
  std::vector<std::pair<int, double>> max_mass_per_level;
};

/// Worst-case ball mass per dyadic radius 2^-l, l in [level_min, level_max], centred at support
/// points. exponent is the slope of log max-mass against log r, clamped to [0, 2];
/// constant = max mass / r^exponent, clamped below at 1.
FrostmanFit frostman_fit(const WeightedMeasure& m, int level_min, int level_max);

/// Sum over ordered pairs i != j of w_i w_j |p_i - p_j|^-sigma.
double energy(const WeightedMeasure& m, double sigma);

struct DirectionAtom {
  double angle;  // in [0, 2 pi)
  double mass;
};

struct DirectionMeasure {
  std::vector<DirectionAtom> atoms;  // sorted by angle, distinct beyond 1e-12
  double leaked_mass = 0.0;
  std::size_t dropped_points = 0;

  double total() const noexcept;
  std::vector<double> angles() const;
};

inline constexpr double kAngleMergeTolerance = 1e-12;

/// Pushforward under y -> (y - x)/|y - x|. Points within 2·delta of x are dropped and their mass
/// is reported as leaked. Throws AllMassAtCenter when nothing with positive weight remains.
DirectionMeasure radial_pushforward(const WeightedMeasure& m, Point x);

// Box dimension of the atoms' angles, counted in arc-length dyadic intervals.
DimensionEstimate direction_set_dimension(const DirectionMeasure& d, int level_min,
                                          int level_max);

/// frostman_fit on the circle: arcs of half-length 2^-l centred at atoms.
FrostmanFit direction_frostman_fit(const DirectionMeasure& d, int level_min, int level_max);

inline constexpr double kShellCutoff = 4.0;

struct MassShells {
  std::map<int, std::vector<std::size_t>> shells;
  std::vector<std::size_t> tail;  // shells with j > kShellCutoff · log2(1/r), merged
  int tail_from = 0;              // first merged index
  double radius = 0.0;
  double constant = 1.0;
  double exponent = 0.0;
};

/// Y_j = {y : 2^{-j-1} C r^t < nu(B(y, r)) <= 2^{-j} C r^t} over support points with positive
/// ball mass. C r^t must dominate every ball mass; shell_constant gives the smallest C >= 1 that does.
MassShells mass_shell_decompose(const WeightedMeasure& m, double r, double t, double c);
double shell_constant(const WeightedMeasure& m, double r, double t);

}  // namespace gmt
