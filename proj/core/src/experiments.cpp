#include "gmtlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "gmtlab/errors.hpp"
#include "gmtlab/generators.hpp"
#include "gmtlab/incidence.hpp"
#include "gmtlab/measures.hpp"
#include "gmtlab/parallel.hpp"
#include "gmtlab/regression.hpp"
#include "gmtlab/rng.hpp"
#include "gmtlab/tubes.hpp"

namespace gmt {

namespace {

constexpr double kPi = std::numbers::pi;

std::pair<int, int> direction_levels(const ExperimentSpec& spec) {
  if (spec.scale_levels) return *spec.scale_levels;
  return default_levels(spec.y_set.delta());
}

// Merges bit pairs: bit k of the result is bit 2k | bit 2k+1 of w.
std::uint32_t halve_word(std::uint64_t w) {
  w = (w | (w >> 1)) & 0x5555555555555555ULL;
  w = (w | (w >> 1)) & 0x3333333333333333ULL;
  w = (w | (w >> 2)) & 0x0f0f0f0f0f0f0f0fULL;
  w = (w | (w >> 4)) & 0x00ff00ff00ff00ffULL;
  w = (w | (w >> 8)) & 0x0000ffff0000ffffULL;
  w = (w | (w >> 16)) & 0x00000000ffffffffULL;
  return static_cast<std::uint32_t>(w);
}

// Occupied dyadic intervals of the values at every level in [lmin, lmax], finest first.
std::vector<std::uint64_t> interval_counts(std::span<const double> values, double shift, int lmin,
                                           int lmax, std::vector<std::uint64_t>& bits) {
  const std::size_t cells = static_cast<std::size_t>(4) << lmax;
  const std::size_t words = (cells + 63) / 64;
  bits.assign(words, 0);
  for (double v : values) {
    const auto idx = static_cast<std::size_t>(std::ldexp(v + shift, lmax));
    bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
  }
  std::vector<std::uint64_t> counts;
  std::size_t live = words;
  for (int level = lmax; level >= lmin; --level) {
    std::uint64_t c = 0;
    for (std::size_t k = 0; k < live; ++k) c += static_cast<std::uint64_t>(std::popcount(bits[k]));
    counts.push_back(c);
    if (level == lmin) break;
    const std::size_t next = (live + 1) / 2;
    for (std::size_t k = 0; k < next; ++k) {
      const std::uint64_t lo = halve_word(bits[2 * k]);
      const std::uint64_t hi = 2 * k + 1 < live ? halve_word(bits[2 * k + 1]) : 0;
      bits[k] = lo | (hi << 32);
    }
    live = next;
  }
  return counts;
}

double slope_of_counts(std::span<const std::uint64_t> finest_first, int lmin, int lmax) {
  std::vector<double> xs, ys;
  for (int level = lmin; level <= lmax; ++level) {
    xs.push_back(level);
    ys.push_back(std::log2(static_cast<double>(finest_first[static_cast<std::size_t>(lmax - level)])));
  }
  return least_squares(xs, ys).slope;
}

std::vector<Point> line_coordinates(const LineSet& lines) {
  std::vector<Point> out;
  out.reserve(lines.size());
  for (const Line& l : lines.lines) out.push_back({l.angle(), l.offset()});
  return out;
}

}  // namespace

const char* to_string(Target t) noexcept {
  switch (t) {
    case Target::Kaufman: return "Kaufman";
    case Target::Falconer: return "Falconer";
    case Target::BeckContinuum: return "BeckContinuum";
    case Target::ErdosBeck: return "ErdosBeck";
    case Target::Furstenberg: return "Furstenberg";
    case Target::OrthoKaufman: return "OrthoKaufman";
  }
  return "?";
}

std::vector<std::size_t> farthest_point_sample(std::span<const Point> points, std::size_t k) {
  std::vector<std::size_t> out;
  if (points.empty() || k == 0) return out;
  k = std::min(k, points.size());
  std::vector<double> d(points.size(), std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  for (std::size_t step = 0; step < k; ++step) {
    out.push_back(next);
    for (std::size_t i = 0; i < points.size(); ++i) d[i] = std::min(d[i], distance(points[i], points[next]));
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (d[i] > d[best]) best = i;
    }
    next = best;
  }
  return out;
}

ExperimentResult radial_dimension_profile(const ExperimentSpec& spec) {
  require(spec.x_sample >= 1, ErrorKind::PreconditionViolated, "x_sample must be at least 1");
  require(!spec.x_set.empty() && !spec.y_set.empty(), ErrorKind::EmptyInput, "empty input set");
  ExperimentResult out;
  out.dim_x = box_dimension(spec.x_set).slope;
  out.dim_y = box_dimension(spec.y_set).slope;
  if (spec.target == Target::Kaufman) {
    require(!all_collinear(spec.x_set.points()), ErrorKind::CollinearX, "X lies on one line");
    out.predicted_lower_bound = std::min({out.dim_x, out.dim_y, 1.0});
  } else if (spec.target == Target::Falconer) {
    require(out.dim_y > 1.05, ErrorKind::LowDimY, "dim Y must exceed 1.05");
    out.predicted_lower_bound = std::min(out.dim_x + out.dim_y - 1.0, 1.0);
  } else {
    fail(ErrorKind::PreconditionViolated, "radial profile targets are Kaufman and Falconer");
  }
  const auto [lmin, lmax] = direction_levels(spec);
  const WeightedMeasure nu = WeightedMeasure::uniform(spec.y_set);
  const std::vector<std::size_t> centers = farthest_point_sample(spec.x_set.points(), spec.x_sample);
  std::vector<std::optional<DimensionEstimate>> dims(centers.size());
  std::vector<double> leaked(centers.size(), 1.0);
  parallel_for(centers.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      try {
        const DirectionMeasure d = radial_pushforward(nu, spec.x_set[centers[k]]);
        leaked[k] = d.leaked_mass;
        dims[k] = direction_set_dimension(d, lmin, lmax);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::AllMassAtCenter) throw;
      }
    }
  });
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (!dims[k]) continue;
    out.per_x_table.push_back({spec.x_set[centers[k]], dims[k]->slope, leaked[k]});
    if (!best || dims[k]->slope > dims[*best]->slope) best = k;
  }
  require(best.has_value(), ErrorKind::AllMassAtCenter, "no sampled centre sees Y");
  out.best_x = spec.x_set[centers[*best]];
  out.best_dimension = *dims[*best];
  out.margin = out.best_dimension.slope - out.predicted_lower_bound;
  return out;
}

DimensionEstimate line_set_dimension(const DiscreteSet& x, int lmin, int lmax) {
  require(x.size() >= 2, ErrorKind::TooFewPoints, "line set needs at least 2 points");
  require(!all_collinear(x.points()), ErrorKind::AllCollinear, "all points are collinear");
  const std::vector<Point> coords = line_coordinates(spanned_lines(x));
  return box_dimension_of(coords, lmin, lmax);
}

DimensionEstimate line_set_dimension(const DiscreteSet& x) {
  const auto [lmin, lmax] = default_levels(x.delta());
  return line_set_dimension(x, lmin, lmax);
}

ErdosBeckProfile erdos_beck_profile(const DiscreteSet& x, double t) {
  ErdosBeckProfile out;
  const auto [lmin, lmax] = default_levels(x.delta());
  out.dim_x = box_dimension(x, lmin, lmax).slope;
  const LineSet lines = spanned_lines(x);
  std::vector<std::size_t> order(lines.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lines.multiplicity[a] > lines.multiplicity[b];
  });
  order.resize(std::min(order.size(), kErdosBeckCandidates));
  out.t_achieved = 0.0;
  for (std::size_t k : order) {
    const Tube tube(lines.lines[k], x.delta());
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!tube.contains(x[i])) rest.push_back(i);
    }
    double dim_rest = 0.0;
    if (!rest.empty()) dim_rest = std::max(0.0, box_dimension(x.subset(rest), lmin, lmax).slope);
    const double drop = out.dim_x - dim_rest;
    if (drop > out.t_achieved || !out.worst_line) {
      out.t_achieved = std::max(0.0, drop);
      out.worst_line = lines.lines[k];
    }
  }
  out.measured = line_set_dimension(x, lmin, lmax).slope;
  out.predicted = std::min(2.0 * out.dim_x - 2.0 * out.t_achieved, 2.0);
  out.hypothesis_holds = out.t_achieved <= t;
  return out;
}

std::vector<std::uint64_t> random_dyadic_indices(double sigma, int level, std::uint64_t seed) {
  require(sigma >= 0.0 && sigma <= 1.0, ErrorKind::PreconditionViolated, "sigma must lie in [0, 1]");
  require(level >= 0 && level <= 30, ErrorKind::PreconditionViolated, "level outside [0, 30]");
  Rng rng(seed);
  struct Node {
    std::uint64_t i;
    double budget;
  };
  std::vector<Node> nodes{{0, std::pow(2.0, sigma * level)}};
  for (int l = 0; l < level; ++l) {
    const double ideal = std::pow(2.0, sigma * (level - l - 1));
    std::vector<Node> next;
    for (const Node& n : nodes) {
      const double x = n.budget / ideal;
      int c = static_cast<int>(std::floor(x)) + (rng.bernoulli(x - std::floor(x)) ? 1 : 0);
      c = std::clamp(c, 1, 2);
      if (c == 2) {
        next.push_back({2 * n.i, n.budget / 2});
        next.push_back({2 * n.i + 1, n.budget / 2});
      } else {
        next.push_back({2 * n.i + rng.below(2), n.budget});
      }
    }
    nodes = std::move(next);
  }
  std::vector<std::uint64_t> out;
  for (const Node& n : nodes) out.push_back(n.i);
  return out;
}

FurstenbergCount furstenberg_count(const DiscreteSet& x, double sigma, double s, std::uint64_t seed) {
  require(sigma > 0.0 && sigma < 1.0, ErrorKind::PreconditionViolated, "sigma must lie in (0, 1)");
  require(s > sigma && s < 2.0, ErrorKind::PreconditionViolated, "s must lie in (sigma, 2)");
  require(!x.empty(), ErrorKind::EmptyInput, "empty base set");
  const double delta = x.delta();
  FurstenbergCount out;
  out.points = x.size();
  const DeltaSetCheck xc = verify_delta_s_set(x, s, 1.0);
  out.x_constant = xc.worst_ratio;
  out.x_hypothesis_met = xc.worst_ratio <= std::pow(delta, -kFurstenbergEps0);

  const int dir_level = static_cast<int>(std::ceil(std::log2(kPi / delta) - 1e-9));
  const double step = kPi / std::ldexp(1.0, dir_level);
  Rng rng(seed);
  std::vector<std::uint64_t> seeds(x.size());
  for (auto& v : seeds) v = rng.next();

  std::vector<std::vector<Line>> pencils(x.size());
  std::vector<double> worst(x.size(), 0.0);
  parallel_for(x.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      TubeFamily fam;
      fam.width = delta;
      fam.direction_net_step = step;
      for (std::uint64_t k : random_dyadic_indices(sigma, dir_level, seeds[i])) {
        const Line l = Line::from_point_angle(x[i], static_cast<double>(k) * step);
        pencils[i].push_back(l);
        fam.tubes.emplace_back(l, delta);
      }
      worst[i] = verify_tube_set(fam, sigma, 16.0).worst_ratio;
    }
  });
  std::vector<Line> all;
  for (const auto& p : pencils) all.insert(all.end(), p.begin(), p.end());
  out.tubes = all.size();
  out.pencil_worst_ratio = *std::max_element(worst.begin(), worst.end());
  out.pencils_met = out.pencil_worst_ratio <= 16.0;
  out.count = line_covering_number(all, delta);
  out.wolff_floor = std::pow(delta, -2.0 * sigma);
  out.ratio = static_cast<double>(out.count) / out.wolff_floor;

  std::vector<Line> flat;
  std::vector<Point> duals;
  for (const Line& l : all) {
    if (l.is_vertical() || std::abs(l.slope()) > 1.0) continue;
    flat.push_back(l);
    duals.push_back(dualize_line(l));
  }
  out.dual_line_count = line_covering_number(flat, delta);
  out.dual_point_count = duals.empty() ? 0 : covering_number(std::span<const Point>(duals), dyadic_level(delta));
  const double lo = static_cast<double>(std::min(out.dual_line_count, out.dual_point_count));
  const double hi = static_cast<double>(std::max(out.dual_line_count, out.dual_point_count));
  out.duality_consistent = hi <= 4.0 * lo;
  return out;
}

FurstenbergCount furstenberg_count(double sigma, double s, double delta, std::uint64_t seed) {
  require(delta >= 0x1.0p-12 * (1.0 - 1e-12) && delta <= 0x1.0p-4 * (1.0 + 1e-12),
          ErrorKind::PreconditionViolated, "delta outside [2^-12, 2^-4]");
  require(s > sigma && s < 2.0, ErrorKind::PreconditionViolated, "s must lie in (sigma, 2)");
  return furstenberg_count(gen_random_delta_s_set(s, delta, seed), sigma, s, seed + 0x9e3779b97f4a7c15ULL);
}

OrthoProfile orthogonal_exceptional_profile(const DiscreteSet& y, double sigma) {
  const double dim_y = box_dimension(y).slope;
  require(sigma < std::min(dim_y, 1.0) - 0.1, ErrorKind::PreconditionViolated,
          "sigma must be below min(dim Y, 1) - 0.1");
  const int ly = dyadic_level(y.delta());
  OrthoProfile out;
  out.level_min = kOrthoNetLevel + 1;
  out.level_max = ly - 1;
  if (out.level_max - out.level_min < 3) {
    out.level_min = 2;
    out.level_max = ly - 2;
  }
  require(out.level_max - out.level_min >= 3, ErrorKind::ScaleRangeTooNarrow,
          "Y is too coarse for projection counting");
  std::size_t m = static_cast<std::size_t>(std::ceil(kPi * std::ldexp(1.0, kOrthoNetLevel) - 1e-9));
  if (m % 2 != 0) ++m;
  out.net_size = m;
  std::vector<double> dims(m);
  parallel_for(m, [&](std::size_t b, std::size_t e) {
    std::vector<double> values(y.size());
    std::vector<std::uint64_t> bits;
    for (std::size_t k = b; k < e; ++k) {
      const double a = kPi * static_cast<double>(k) / static_cast<double>(m);
      const double c = std::cos(a), s = std::sin(a);
      for (std::size_t i = 0; i < y.size(); ++i) values[i] = c * y[i].x + s * y[i].y;
      const auto counts = interval_counts(values, 2.0, out.level_min, out.level_max, bits);
      dims[k] = slope_of_counts(counts, out.level_min, out.level_max);
    }
  });
  out.min_projected_dim = *std::min_element(dims.begin(), dims.end());
  for (std::size_t k = 0; k < m; ++k) {
    if (dims[k] < sigma) out.exceptional_directions.push_back(kPi * static_cast<double>(k) / static_cast<double>(m));
  }
  if (out.exceptional_directions.size() >= 1) {
    out.measured_dim = std::max(0.0, box_dimension_1d(out.exceptional_directions, 2, 8).slope);
  }
  return out;
}

}  // namespace gmt
