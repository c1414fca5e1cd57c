#include "gmtlab/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include "gmtlab/errors.hpp"
#include "gmtlab/parallel.hpp"

namespace gmt {

namespace {

// One line of the pencil at point i: `size` other points on it, the first of which (in sorted
// order) is `rep`, the smallest of which is `min_index`.
struct Group {
  std::size_t rep;
  std::size_t min_index;
  std::uint32_t size;
};

struct Dir {
  std::int64_t dx;
  std::int64_t dy;
  std::size_t j;
};

void exact_pencil(const std::vector<LatticePoint>& pts, std::size_t i, std::vector<Dir>& dirs,
                  std::vector<Group>& out) {
  dirs.clear();
  out.clear();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == i) continue;
    std::int64_t dx = pts[j].x - pts[i].x;
    std::int64_t dy = pts[j].y - pts[i].y;
    if (dy < 0 || (dy == 0 && dx < 0)) {
      dx = -dx;
      dy = -dy;
    }
    dirs.push_back({dx, dy, j});
  }
  // Half-open upper half-plane: cross product orders by angle exactly.
  std::sort(dirs.begin(), dirs.end(), [](const Dir& a, const Dir& b) {
    const std::int64_t c = a.dx * b.dy - a.dy * b.dx;
    if (c != 0) return c > 0;
    return a.j < b.j;
  });
  for (std::size_t k = 0; k < dirs.size();) {
    std::size_t e = k + 1;
    std::size_t lo = dirs[k].j;
    while (e < dirs.size() && dirs[k].dx * dirs[e].dy - dirs[k].dy * dirs[e].dx == 0) {
      lo = std::min(lo, dirs[e].j);
      ++e;
    }
    out.push_back({dirs[k].j, lo, static_cast<std::uint32_t>(e - k)});
    k = e;
  }
}

void float_pencil(std::span<const Point> pts, std::size_t i,
                  std::vector<std::pair<double, std::size_t>>& dirs, std::vector<Group>& out) {
  dirs.clear();
  out.clear();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == i) continue;
    const Point d = pts[j] - pts[i];
    dirs.emplace_back(canonical_angle(std::atan2(d.y, d.x)), j);
  }
  std::sort(dirs.begin(), dirs.end());
  for (std::size_t k = 0; k < dirs.size();) {
    std::size_t e = k + 1;
    std::size_t lo = dirs[k].second;
    while (e < dirs.size() && dirs[e].first - dirs[e - 1].first <= kCollinearAngleTolerance) {
      lo = std::min(lo, dirs[e].second);
      ++e;
    }
    out.push_back({dirs[k].second, lo, static_cast<std::uint32_t>(e - k)});
    k = e;
  }
  // Angles near pi and near 0 describe the same line.
  if (out.size() > 1 && dirs.back().first + kCollinearAngleTolerance >=
                            std::numbers::pi + dirs.front().first) {
    out.front().min_index = std::min(out.front().min_index, out.back().min_index);
    out.front().size += out.back().size;
    out.pop_back();
  }
}

// Visits every pencil; `emit(i, group)` fires once per spanned line, from its lowest-index point.
template <class OnPencil>
bool sweep(std::span<const Point> points, OnPencil&& on_pencil) {
  const auto grid = rational_grid(points);
  parallel_for(points.size(), [&](std::size_t b, std::size_t e) {
    std::vector<Group> groups;
    std::vector<Dir> dirs;
    std::vector<std::pair<double, std::size_t>> fdirs;
    for (std::size_t i = b; i < e; ++i) {
      if (grid) {
        exact_pencil(grid->points, i, dirs, groups);
      } else {
        float_pencil(points, i, fdirs, groups);
      }
      on_pencil(i, groups);
    }
  });
  return grid.has_value();
}

std::uint64_t pairs(std::uint64_t k) { return k * (k - 1) / 2; }

std::uint64_t dyadic_floor(std::uint64_t k) {
  std::uint64_t r = 1;
  while (2 * r <= k) r *= 2;
  return r;
}

}  // namespace

LineSet LineSet::supplied(std::vector<Line> lines) {
  LineSet out;
  out.lines = std::move(lines);
  return out;
}

SpannedLineStats spanned_line_stats(std::span<const Point> points) {
  SpannedLineStats stats;
  stats.lines_through.assign(points.size(), 0);
  std::mutex merge;
  stats.exact = sweep(points, [&](std::size_t i, const std::vector<Group>& groups) {
    stats.lines_through[i] = static_cast<std::uint32_t>(groups.size());
    std::map<std::uint32_t, std::uint64_t> local;
    for (const Group& g : groups) {
      if (i < g.min_index) ++local[g.size + 1];
    }
    const std::lock_guard lock(merge);
    for (const auto& [k, count] : local) stats.points_per_line[k] += count;
  });
  for (const auto& [k, count] : stats.points_per_line) {
    stats.line_count += count;
    stats.max_collinear = std::max(stats.max_collinear, k);
  }
  if (points.size() == 1) stats.max_collinear = 1;
  return stats;
}

SpannedLineStats spanned_line_stats(const DiscreteSet& p) { return spanned_line_stats(p.points()); }

LineSet spanned_lines(std::span<const Point> points) {
  require(points.size() >= 2, ErrorKind::TooFewPoints, "spanned lines need at least 2 points");
  const auto grid = rational_grid(points);
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> per_point(points.size());
  sweep(points, [&](std::size_t i, const std::vector<Group>& groups) {
    for (const Group& g : groups) {
      if (i < g.min_index) per_point[i].emplace_back(g.rep, g.size + 1);
    }
  });
  LineSet out;
  out.origin = LineSetOrigin::Spanned;
  if (grid) out.denominator = grid->denominator;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const auto& [j, k] : per_point[i]) {
      if (grid) {
        const ExactLine l = exact_line_through(grid->points[i], grid->points[j]);
        out.exact.push_back(l);
        out.lines.push_back(to_line(l, grid->denominator));
      } else {
        out.lines.push_back(Line::through(points[i], points[j]));
      }
      out.multiplicity.push_back(k);
    }
  }
  return out;
}

LineSet spanned_lines(const DiscreteSet& p) { return spanned_lines(p.points()); }

LineSet rich_lines(const DiscreteSet& p, std::uint32_t r) {
  require(r >= 2, ErrorKind::PreconditionViolated, "r must be at least 2");
  const LineSet all = spanned_lines(p);
  LineSet out;
  out.origin = all.origin;
  out.denominator = all.denominator;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (all.multiplicity[k] < r) continue;
    out.lines.push_back(all.lines[k]);
    out.multiplicity.push_back(all.multiplicity[k]);
    if (all.is_exact()) out.exact.push_back(all.exact[k]);
  }
  const double n = static_cast<double>(p.size());
  require(static_cast<double>(out.size()) <= 2.0 * n * n / (static_cast<double>(r) * r),
          ErrorKind::InvariantViolation, "rich-line count exceeds 2 n^2 / r^2");
  return out;
}

double cs_bound(double n, double m) { return n + m + std::pow(n * m, 0.75); }

double eps_bound(double n, double m, double eps) {
  return m + n + std::pow(m, 0.5 + eps) * std::pow(n, 1.0 - 2.0 * eps);
}

IncidenceReport incidence_count(std::span<const Point> points, const LineSet& lines, double eps) {
  IncidenceReport rep;
  rep.points = points.size();
  rep.lines = lines.size();
  rep.eps = eps;
  rep.cs_bound = cs_bound(static_cast<double>(rep.points), static_cast<double>(rep.lines));
  rep.eps_bound = eps_bound(static_cast<double>(rep.points), static_cast<double>(rep.lines), eps);

  std::vector<std::uint64_t> on_line(lines.size(), 0);
  std::optional<RationalGrid> grid;
  std::int64_t scale_points = 1, scale_lines = 1;
  if (lines.is_exact()) {
    grid = rational_grid(points);
    if (grid) {
      const std::int64_t common = std::lcm(grid->denominator, lines.denominator);
      if (common <= kMaxLatticeDenominator) {
        scale_points = common / grid->denominator;
        scale_lines = common / lines.denominator;
      } else {
        grid.reset();
      }
    }
  }
  if (grid) {
    std::vector<LatticePoint> lp = grid->points;
    for (auto& q : lp) q = {q.x * scale_points, q.y * scale_points};
    parallel_for(lines.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        const ExactLine l = lines.exact[k];
        const std::int64_t c = l.c * scale_lines;
        std::uint64_t count = 0;
        for (const LatticePoint& q : lp) count += (l.a * q.x + l.b * q.y == c);
        on_line[k] = count;
      }
    });
  } else {
    parallel_for(lines.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        std::uint64_t count = 0;
        for (const Point& q : points) {
          count += std::abs(lines.lines[k].signed_distance(q)) <= kLineEqualityTolerance;
        }
        on_line[k] = count;
      }
    });
  }
  for (std::uint64_t c : on_line) rep.incidence_count += c;
  for (std::uint64_t r = 2; r <= std::max<std::uint64_t>(rep.points, 2); r *= 2) {
    rep.rich_profile[r] = static_cast<std::uint64_t>(
        std::count_if(on_line.begin(), on_line.end(), [r](std::uint64_t c) { return c >= r; }));
  }
  require(rep.incidence_count <= rep.points * rep.lines, ErrorKind::InvariantViolation,
          "incidence count exceeds n m");
  return rep;
}

IncidenceReport incidence_count(const DiscreteSet& p, const LineSet& lines, double eps) {
  return incidence_count(p.points(), lines, eps);
}

const char* to_string(BeckVerdict v) noexcept {
  switch (v) {
    case BeckVerdict::RichLine: return "RichLine";
    case BeckVerdict::ManyLines: return "ManyLines";
    case BeckVerdict::Both: return "Both";
    case BeckVerdict::Neither: return "Neither";
  }
  return "?";
}

BeckReport beck_analyze(const SpannedLineStats& stats, std::uint64_t n, double c_threshold) {
  require(n >= 3, ErrorKind::TooFewPoints, "Beck analysis needs at least 3 points");
  require(c_threshold >= 2.0, ErrorKind::PreconditionViolated, "c_threshold must be at least 2");
  BeckReport rep;
  rep.points = n;
  rep.max_collinear = stats.max_collinear;
  rep.spanned_line_count = stats.line_count;
  rep.c_threshold = c_threshold;
  rep.exact = stats.exact;
  for (std::uint64_t r = 2; r <= n; r *= 2) {
    rep.connected_pair_profile[r] = 0;
    rep.rich_profile[r] = 0;
  }
  for (const auto& [k, count] : stats.points_per_line) {
    rep.connected_pair_profile[dyadic_floor(k)] += count * pairs(k);
    for (auto& [r, rich] : rep.rich_profile) {
      if (k >= r) rich += count;
    }
  }
  std::uint64_t total = 0;
  for (const auto& [r, t] : rep.connected_pair_profile) {
    total += t;
    const double lr = static_cast<double>(rep.rich_profile[r]);
    const double rd = static_cast<double>(r);
    require(static_cast<double>(t) <= 2.0 * rd * rd * lr, ErrorKind::InvariantViolation,
            "|T_r| exceeds 2 r^2 |L_r|");
    require(rd * rd * lr <= 2.0 * static_cast<double>(n) * static_cast<double>(n),
            ErrorKind::InvariantViolation, "r^2 |L_r| exceeds 2 n^2");
  }
  // Float mode can merge near-collinear pencils inconsistently; the pair count is only exact
  // on a lattice.
  if (stats.exact) {
    require(total == pairs(n), ErrorKind::InvariantViolation,
            "connected pairs do not partition the point pairs");
  }
  const double nd = static_cast<double>(n);
  const bool rich = static_cast<double>(rep.max_collinear) >= nd / c_threshold;
  const bool many =
      static_cast<double>(rep.spanned_line_count) >= nd * nd / (c_threshold * c_threshold);
  rep.verdict = rich && many ? BeckVerdict::Both
                : rich       ? BeckVerdict::RichLine
                : many       ? BeckVerdict::ManyLines
                             : BeckVerdict::Neither;
  const std::uint64_t k = n - rep.max_collinear;
  if (k >= 1) {
    rep.erdos_beck_ratio = static_cast<double>(rep.spanned_line_count) / (nd * static_cast<double>(k));
  }
  return rep;
}

BeckReport beck_analyze(const DiscreteSet& p, double c_threshold) {
  require(p.size() >= 3, ErrorKind::TooFewPoints, "Beck analysis needs at least 3 points");
  return beck_analyze(spanned_line_stats(p), p.size(), c_threshold);
}

WeakDirac weak_dirac_stat(const DiscreteSet& p) {
  require(p.size() >= 3, ErrorKind::TooFewPoints, "weak Dirac statistic needs at least 3 points");
  const SpannedLineStats stats = spanned_line_stats(p);
  require(stats.max_collinear < p.size(), ErrorKind::AllCollinear, "all points are collinear");
  WeakDirac out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (stats.lines_through[i] > out.lines_through) {
      out.lines_through = stats.lines_through[i];
      out.index = i;
    }
  }
  out.best_point = p[out.index];
  return out;
}

bool in_general_position(std::span<const Point> points) {
  return spanned_line_stats(points).max_collinear <= 2;
}

bool all_collinear(std::span<const Point> points) {
  if (points.size() < 3) return true;
  if (const auto grid = rational_grid(points)) {
    const auto& q = grid->points;
    std::size_t far = 1;
    while (far < q.size() && q[far] == q[0]) ++far;
    if (far == q.size()) return true;
    const std::int64_t dx = q[far].x - q[0].x, dy = q[far].y - q[0].y;
    for (const LatticePoint& p : q) {
      if (dx * (p.y - q[0].y) - dy * (p.x - q[0].x) != 0) return false;
    }
    return true;
  }
  std::size_t far = 1;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (distance(points[i], points[0]) > distance(points[far], points[0])) far = i;
  }
  const Point d = points[far] - points[0];
  const double len = norm(d);
  if (len == 0.0) return true;
  for (const Point& p : points) {
    if (std::abs(cross(d, p - points[0])) > 1e-9 * len) return false;
  }
  return true;
}

}  // namespace gmt
