#include "gmtlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gmtlab/errors.hpp"
#include "gmtlab/parallel.hpp"
#include "gmtlab/regression.hpp"
#include "gmtlab/spatial.hpp"

namespace gmt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sum_in_order(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

void check_levels(double delta, int lmin, int lmax) {
  require(lmin >= 0 && lmax - lmin >= 3, ErrorKind::ScaleRangeTooNarrow,
          "regression needs level_max - level_min >= 3");
  require(std::ldexp(1.0, -lmax) >= delta * (1.0 - 1e-9), ErrorKind::ScaleRangeTooNarrow,
          "finest level is below the resolution");
}

// Fits log2 of the worst mass against log2 r and derives the constant from the fitted slope.
FrostmanFit finish_fit(std::vector<std::pair<int, double>> per_level,
                       const std::vector<Point>& witness_at) {
  std::vector<double> xs, ys;
  for (const auto& [level, mass] : per_level) {
    xs.push_back(-static_cast<double>(level));
    ys.push_back(std::log2(mass));
  }
  FrostmanFit fit;
  fit.exponent = std::clamp(least_squares(xs, ys).slope, 0.0, 2.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < per_level.size(); ++k) {
    const double r = std::ldexp(1.0, -per_level[k].first);
    const double ratio = per_level[k].second / std::pow(r, fit.exponent);
    if (ratio > worst) {
      worst = ratio;
      fit.witness_center = witness_at[k];
      fit.witness_radius = r;
    }
  }
  fit.constant = std::max(1.0, worst);
  fit.max_mass_per_level = std::move(per_level);
  return fit;
}

}  // namespace

WeightedMeasure::WeightedMeasure(DiscreteSet support, std::vector<double> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  require(weights_.size() == support_.size(), ErrorKind::PreconditionViolated,
          "one weight per support point");
  for (double w : weights_) {
    require(std::isfinite(w) && w >= 0.0, ErrorKind::PreconditionViolated,
            "weights must be finite and nonnegative");
  }
  total_ = sum_in_order(weights_);
}

WeightedMeasure WeightedMeasure::uniform(DiscreteSet support) {
  require(!support.empty(), ErrorKind::EmptyInput, "uniform measure on an empty set");
  const std::size_t n = support.size();
  return WeightedMeasure(std::move(support), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightedMeasure WeightedMeasure::from_weights(DiscreteSet support, std::vector<double> weights) {
  WeightedMeasure m(std::move(support), std::move(weights));
  require(std::abs(m.total_ - 1.0) <= kMassTolerance, ErrorKind::PreconditionViolated,
          "weights must sum to 1");
  return m;
}

WeightedMeasure WeightedMeasure::normalized(DiscreteSet support, std::vector<double> weights) {
  WeightedMeasure m(std::move(support), std::move(weights));
  require(m.total_ > 0.0, ErrorKind::EmptyInput, "measure has no mass");
  for (double& w : m.weights_) w /= m.total_;
  m.total_ = sum_in_order(m.weights_);
  return m;
}

WeightedMeasure WeightedMeasure::restrict(std::span<const std::size_t> indices,
                                          bool renormalize) const {
  std::vector<double> w(weights_.size(), 0.0);
  for (std::size_t i : indices) w.at(i) = weights_[i];
  if (renormalize) return normalized(support_, std::move(w));
  return WeightedMeasure(support_, std::move(w));
}

double ball_mass(const WeightedMeasure& m, const Ball& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (b.contains(m.support()[i])) total += m.weights()[i];
  }
  return total;
}

double tube_mass(const WeightedMeasure& m, const Tube& t,
                 std::optional<std::span<const std::size_t>> restrict_to) {
  double total = 0.0;
  if (restrict_to) {
    for (std::size_t i : *restrict_to) {
      if (t.contains(m.support()[i])) total += m.weights()[i];
    }
    return total;
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (t.contains(m.support()[i])) total += m.weights()[i];
  }
  return total;
}

FrostmanFit frostman_fit(const WeightedMeasure& m, int lmin, int lmax) {
  check_levels(m.support().delta(), lmin, lmax);
  const BallIndex index(m.support().points(), m.weights());
  const auto pts = m.support().points();
  std::vector<std::pair<int, double>> per_level;
  std::vector<Point> witness_at;
  for (int level = lmin; level <= lmax; ++level) {
    const double r = std::ldexp(1.0, -level);
    std::vector<double> mass(pts.size(), 0.0);
    parallel_for(pts.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        if (m.weights()[i] > 0.0) mass[i] = index.mass(pts[i], r);
      }
    });
    const auto best = std::max_element(mass.begin(), mass.end());
    per_level.emplace_back(level, *best);
    witness_at.push_back(pts[static_cast<std::size_t>(best - mass.begin())]);
  }
  return finish_fit(std::move(per_level), witness_at);
}

double energy(const WeightedMeasure& m, double sigma) {
  require(sigma > 0.0 && sigma < 2.0, ErrorKind::PreconditionViolated, "sigma must lie in (0, 2)");
  const auto pts = m.support().points();
  const auto w = m.weights();
  std::vector<double> rows(pts.size(), 0.0);
  parallel_for(pts.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      if (w[i] == 0.0) continue;
      double acc = 0.0;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (j == i || w[j] == 0.0) continue;
        acc += w[j] * std::pow(distance(pts[i], pts[j]), -sigma);
      }
      rows[i] = w[i] * acc;
    }
  });
  return sum_in_order(rows);
}

double DirectionMeasure::total() const noexcept {
  double acc = 0.0;
  for (const auto& a : atoms) acc += a.mass;
  return acc;
}

std::vector<double> DirectionMeasure::angles() const {
  std::vector<double> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back(a.angle);
  return out;
}

DirectionMeasure radial_pushforward(const WeightedMeasure& m, Point x) {
  const double cutoff = 2.0 * m.support().delta();
  DirectionMeasure out;
  std::vector<DirectionAtom> raw;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double w = m.weights()[i];
    if (w == 0.0) continue;
    const Point d = m.support()[i] - x;
    if (norm(d) < cutoff) {
      out.leaked_mass += w;
      ++out.dropped_points;
      continue;
    }
    double a = std::atan2(d.y, d.x);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    raw.push_back({a, w});
  }
  require(!raw.empty(), ErrorKind::AllMassAtCenter, "every weighted point is too close to x");
  std::sort(raw.begin(), raw.end(),
            [](const DirectionAtom& a, const DirectionAtom& b) { return a.angle < b.angle; });
  for (const DirectionAtom& a : raw) {
    if (!out.atoms.empty() && a.angle - out.atoms.back().angle <= kAngleMergeTolerance) {
      out.atoms.back().mass += a.mass;
    } else {
      out.atoms.push_back(a);
    }
  }
  if (out.atoms.size() > 1 &&
      out.atoms.back().angle + kAngleMergeTolerance >= kTwoPi + out.atoms.front().angle) {
    out.atoms.front().mass += out.atoms.back().mass;
    out.atoms.pop_back();
  }
  return out;
}

DimensionEstimate direction_set_dimension(const DirectionMeasure& d, int lmin, int lmax) {
  const std::vector<double> a = d.angles();
  return box_dimension_1d(a, lmin, lmax);
}

FrostmanFit direction_frostman_fit(const DirectionMeasure& d, int lmin, int lmax) {
  require(!d.atoms.empty(), ErrorKind::EmptyInput, "empty direction measure");
  require(lmin >= 0 && lmax - lmin >= 3, ErrorKind::ScaleRangeTooNarrow,
          "regression needs level_max - level_min >= 3");
  const std::size_t n = d.atoms.size();
  // Angles unrolled over three turns so every arc is one contiguous window.
  std::vector<double> ang(3 * n), prefix(3 * n + 1, 0.0);
  for (std::size_t k = 0; k < 3 * n; ++k) {
    ang[k] = d.atoms[k % n].angle + kTwoPi * (static_cast<double>(k / n) - 1.0);
    prefix[k + 1] = prefix[k] + d.atoms[k % n].mass;
  }
  const double whole = d.total();
  std::vector<std::pair<int, double>> per_level;
  std::vector<Point> witness_at;
  for (int level = lmin; level <= lmax; ++level) {
    const double r = std::ldexp(1.0, -level);
    double best = 0.0;
    double best_angle = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = d.atoms[i].angle;
      double mass = whole;
      if (r < std::numbers::pi) {
        const auto lo = std::lower_bound(ang.begin(), ang.end(), c - r - kAngleMergeTolerance);
        const auto hi = std::upper_bound(ang.begin(), ang.end(), c + r + kAngleMergeTolerance);
        mass = prefix[static_cast<std::size_t>(hi - ang.begin())] -
               prefix[static_cast<std::size_t>(lo - ang.begin())];
      }
      if (mass > best) {
        best = mass;
        best_angle = c;
      }
    }
    per_level.emplace_back(level, best);
    witness_at.push_back({std::cos(best_angle), std::sin(best_angle)});
  }
  return finish_fit(std::move(per_level), witness_at);
}

double shell_constant(const WeightedMeasure& m, double r, double t) {
  const BallIndex index(m.support().points(), m.weights());
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    worst = std::max(worst, index.mass(m.support()[i], r));
  }
  return std::max(1.0, worst / std::pow(r, t));
}

MassShells mass_shell_decompose(const WeightedMeasure& m, double r, double t, double c) {
  require(r >= m.support().delta() * (1.0 - 1e-9), ErrorKind::PreconditionViolated,
          "r must be at least the support resolution");
  require(t > 1.0 && t <= 2.0, ErrorKind::PreconditionViolated, "t must lie in (1, 2]");
  require(c >= 1.0, ErrorKind::PreconditionViolated, "c must be at least 1");
  MassShells out;
  out.radius = r;
  out.constant = c;
  out.exponent = t;
  out.tail_from = static_cast<int>(std::floor(kShellCutoff * std::log2(1.0 / r))) + 1;
  const double top = c * std::pow(r, t);
  const BallIndex index(m.support().points(), m.weights());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double mass = index.mass(m.support()[i], r);
    if (mass <= 0.0) continue;
    require(mass <= top * (1.0 + 1e-12), ErrorKind::PreconditionViolated,
            "ball mass exceeds C r^t; raise c (see shell_constant)");
    int j = static_cast<int>(std::floor(std::log2(top / mass)));
    // Repair rounding so the shell inequality holds exactly as evaluated.
    while (j > 0 && mass > std::ldexp(top, -j) * (1.0 + 1e-12)) --j;
    while (mass <= std::ldexp(top, -j - 1)) ++j;
    j = std::max(j, 0);
    if (j >= out.tail_from) {
      out.tail.push_back(i);
    } else {
      out.shells[j].push_back(i);
    }
  }
  return out;
}

}  // namespace gmt
