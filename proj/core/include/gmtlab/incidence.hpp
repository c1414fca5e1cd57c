#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "gmtlab/discrete_set.hpp"
#include "gmtlab/exact.hpp"

namespace gmt {

enum class LineSetOrigin { Spanned, Supplied };

/// Deduplicated lines. Spanned sets record how many points of the spanning set lie on each line,
/// and in exact mode the lattice form of every line over the spanning set's common denominator.
struct LineSet {
  std::vector<Line> lines;
  std::vector<std::uint32_t> multiplicity;  // spanned only
  std::vector<ExactLine> exact;             // exact mode only
  std::int64_t denominator = 0;             // 0 in float mode
  LineSetOrigin origin = LineSetOrigin::Supplied;

  std::size_t size() const noexcept { return lines.size(); }
  bool is_exact() const noexcept { return denominator != 0; }
  static LineSet supplied(std::vector<Line> lines);
};

// Float-mode collinearity: directions within this angle are one line.
inline constexpr double kCollinearAngleTolerance = 1e-9;

/// Pencil counts without materialising lines, usable at n in the thousands.
struct SpannedLineStats {
  std::uint64_t line_count = 0;
  std::uint32_t max_collinear = 0;
  std::map<std::uint32_t, std::uint64_t> points_per_line;  // k -> lines carrying exactly k
  std::vector<std::uint32_t> lines_through;                // per point
  bool exact = false;
};

SpannedLineStats spanned_line_stats(std::span<const Point> points);
SpannedLineStats spanned_line_stats(const DiscreteSet& p);

LineSet spanned_lines(std::span<const Point> points);
LineSet spanned_lines(const DiscreteSet& p);
LineSet rich_lines(const DiscreteSet& p, std::uint32_t r);

struct IncidenceReport {
  std::uint64_t incidence_count = 0;
  std::uint64_t points = 0;
  std::uint64_t lines = 0;
  double cs_bound = 0.0;
  double eps = 0.0;
  double eps_bound = 0.0;
  std::map<std::uint64_t, std::uint64_t> rich_profile;  // dyadic r -> |L_r|
};

double cs_bound(double n, double m);
double eps_bound(double n, double m, double eps);

/// Exact count when both sides share a lattice; otherwise |signed distance| <= 1e-9.
IncidenceReport incidence_count(std::span<const Point> points, const LineSet& lines,
                                double eps = 0.1);
IncidenceReport incidence_count(const DiscreteSet& p, const LineSet& lines, double eps = 0.1);

enum class BeckVerdict { RichLine, ManyLines, Both, Neither };
const char* to_string(BeckVerdict v) noexcept;

inline constexpr double kDefaultBeckThreshold = 64.0;

struct BeckReport {
  std::uint64_t points = 0;
  std::uint32_t max_collinear = 0;
  std::uint64_t spanned_line_count = 0;
  std::map<std::uint64_t, std::uint64_t> connected_pair_profile;  // dyadic r -> |T_r|
  std::map<std::uint64_t, std::uint64_t> rich_profile;            // dyadic r -> |L_r|
  BeckVerdict verdict = BeckVerdict::Neither;
  std::optional<double> erdos_beck_ratio;  // spanned / (N k), k = N - max_collinear >= 1
  double c_threshold = kDefaultBeckThreshold;
  bool exact = false;
};

/// T_r counts unordered pairs whose spanned line carries k points with r <= k < 2r. Checks
/// sum_r |T_r| = C(n, 2), |T_r| <= 2 r^2 |L_r| and r^2 |L_r| <= 2 n^2; a failure throws
/// InvariantViolation.
BeckReport beck_analyze(const DiscreteSet& p, double c_threshold = kDefaultBeckThreshold);
BeckReport beck_analyze(const SpannedLineStats& stats, std::uint64_t n,
                        double c_threshold = kDefaultBeckThreshold);

struct WeakDirac {
  std::size_t index = 0;
  Point best_point;
  std::uint32_t lines_through = 0;
};

WeakDirac weak_dirac_stat(const DiscreteSet& p);

bool in_general_position(std::span<const Point> points);
// Exact on a common lattice; otherwise |cross| <= 1e-9 relative to the spread of the points.
bool all_collinear(std::span<const Point> points);

}  // namespace gmt
