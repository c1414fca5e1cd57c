#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmtlab/discrete_set.hpp"
#include "gmtlab/measures.hpp"

namespace gmt {

struct TubeFamily {
  std::vector<Tube> tubes;
  double width = 0.0;
  double direction_net_step = 0.0;
};

/// Width-2r tubes on staggered lattices in (angle, offset), directions drawn from the net k·pi/M
/// with pi/M just under r/2. Offsets near +-1 use every 2^j-th direction, since short chords
/// tolerate coarser angles. Any r-tube meeting B(0, 1) has its intersection with B(0, 1) inside
/// some member, and nearly tangent probes are not over-covered. About 4 pi r^-2 tubes.
TubeFamily uniform_tube_family(double r);

/// Number of family members containing probe ∩ B(0, 1); exact up to boundary tolerance.
std::size_t containment_multiplicity(const TubeFamily& family, const Tube& probe);
bool contains_within_unit_ball(const Tube& outer, const Tube& probe);

struct TubeMass {
  Tube tube;
  double mass = 0.0;
  std::size_t direction_index = 0;
};

/// Heaviest tube of the given width through `through` among M = ceil(pi/width) net directions,
/// smallest angle on ties. Angular sweep: each point covers an arc of net directions.
TubeMass heaviest_tube(const WeightedMeasure& m, Point through, double width,
                       std::optional<std::span<const std::size_t>> restrict_to = {});

struct ThinTubeOptions {
  bool shrink_witness = false;
  std::size_t max_shrink_steps = 4096;
};

struct ThinTubeAudit {
  double sigma = 0.0;
  double k_constant = 1.0;
  double c_mass = 1.0;  // (mu x nu)(G) of the witness actually used
  bool pass = true;
  std::optional<Tube> worst_tube;
  double worst_ratio = 0.0;
  Point witness_x;
  double worst_width = 0.0;
  // Pairs (mu index, nu index) removed from the full product; empty for the default witness.
  std::vector<std::pair<std::size_t, std::size_t>> excluded_pairs;
};

/// Checks nu(T ∩ G|_x) <= K width^sigma for every weighted x of mu, every dyadic width in
/// [nu.delta, 1] and every net tube through x. G is the full product unless shrinking is on, in
/// which case the heaviest offending slice is removed until the bound holds; pass then also needs
/// the remaining product mass to reach c_mass. Throws SeparationViolated if weighted points of mu
/// and nu come closer than 4·max(delta).
ThinTubeAudit thin_tube_audit(const WeightedMeasure& mu, const WeightedMeasure& nu, double sigma,
                              double k_constant, double c_mass, ThinTubeOptions options = {});

/// Slope of log2 heaviest-tube mass through x against log2 width over widths 2^-l,
/// l in [level_min, level_max], masses made nondecreasing in width; the constant is max mass / width^exponent.
FrostmanFit tube_exponent(const WeightedMeasure& nu, Point x, int level_min, int level_max);

struct TubeSetCheck {
  bool pass = true;
  double worst_ratio = 0.0;
  std::optional<Line> worst_line;
  double worst_rho = 0.0;
};

// Line-space cells of side r in (angle, offset).
std::size_t line_covering_number(std::span<const Line> lines, double r);

/// |L ∩ B(l, rho)|_r <= c rho^sigma |L|_r over dyadic rho in [r, 1], r = family width, centres at
/// the family's axes, balls in the line metric.
TubeSetCheck verify_tube_set(const TubeFamily& family, double sigma, double c);

/// Net tubes of width r through x holding at least `min_count` points of p.
TubeFamily rich_pencil(const DiscreteSet& p, Point x, double r, double min_count);

struct FuRenParams {
  double r = 0.0;
  double s = 0.0;
  double t = 0.0;
  double sigma = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
};

struct FuRenInstance {
  DiscreteSet p_x;
  DiscreteSet p_y;
  std::map<std::size_t, TubeFamily> tube_map;
  FuRenParams params;
};

struct FuRenAudit {
  bool hypotheses_met = false;
  double implied_bound = 0.0;
  double observed_sigma = 0.0;
  bool consistent = true;
  std::vector<std::string> failures;
};

FuRenAudit fu_ren_audit(const FuRenInstance& inst);

/// P_X a column at x = 1/4 and P_Y a column at x = 3/4, both of spacing r; every x gets the rich
/// pencil towards P_Y. Hypotheses hold with s = t = sigma = 1.
FuRenInstance fu_ren_column_instance(double r, double eta, double zeta);

/// Random (r, s)- and (r, t)-sets with rich pencils at threshold r^{sigma+eta}|P_Y|.
FuRenInstance fu_ren_random_instance(const FuRenParams& params, std::uint64_t seed);

}  // namespace gmt
