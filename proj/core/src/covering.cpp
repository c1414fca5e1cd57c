#include "gmtlab/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "gmtlab/errors.hpp"
#include "gmtlab/parallel.hpp"
#include "gmtlab/regression.hpp"
#include "gmtlab/spatial.hpp"

namespace gmt {

namespace {

constexpr std::int64_t kKeyBias = std::int64_t{1} << 31;

std::uint64_t pack(std::int64_t ix, std::int64_t iy) noexcept {
  return (static_cast<std::uint64_t>(ix + kKeyBias) << 32) |
         static_cast<std::uint64_t>(iy + kKeyBias);
}

std::int64_t unpack_x(std::uint64_t key) noexcept {
  return static_cast<std::int64_t>(key >> 32) - kKeyBias;
}
std::int64_t unpack_y(std::uint64_t key) noexcept {
  return static_cast<std::int64_t>(key & 0xffffffffULL) - kKeyBias;
}

std::uint64_t parent_key(std::uint64_t key) noexcept {
  // Arithmetic shift floors negative indices, matching the dyadic parent.
  return pack(unpack_x(key) >> 1, unpack_y(key) >> 1);
}

DimensionEstimate fit_counts(std::vector<std::pair<int, std::uint64_t>> counts, int lmin,
                             int lmax) {
  std::vector<double> xs, ys;
  for (const auto& [level, count] : counts) {
    xs.push_back(level);
    ys.push_back(std::log2(static_cast<double>(std::max<std::uint64_t>(count, 1))));
  }
  const LinearFit fit = least_squares(xs, ys);
  DimensionEstimate est;
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.r_squared = fit.r_squared;
  est.level_min = lmin;
  est.level_max = lmax;
  est.per_scale_counts = std::move(counts);
  require(est.slope >= -0.1 && est.slope <= 2.1, ErrorKind::InvariantViolation,
          "box-dimension slope outside [-0.1, 2.1]");
  return est;
}

void check_range(int lmin, int lmax) {
  require(lmin >= 0 && lmax <= 30, ErrorKind::ScaleRangeTooNarrow, "levels outside [0, 30]");
  require(lmax - lmin >= 3, ErrorKind::ScaleRangeTooNarrow,
          "regression needs level_max - level_min >= 3");
}

}  // namespace

DyadicGrid::DyadicGrid(int lvl) : level(lvl) {
  require(lvl >= 0 && lvl <= 30, ErrorKind::PreconditionViolated, "dyadic level outside [0, 30]");
}

double DyadicGrid::side() const noexcept { return std::ldexp(1.0, -level); }

std::int64_t DyadicGrid::index(double v) const noexcept {
  return static_cast<std::int64_t>(std::floor(std::ldexp(v, level)));
}

std::uint64_t DyadicGrid::key(Point p) const noexcept { return pack(index(p.x), index(p.y)); }

Point DyadicGrid::center_of(std::uint64_t key) const noexcept {
  const double h = side();
  return {(static_cast<double>(unpack_x(key)) + 0.5) * h,
          (static_cast<double>(unpack_y(key)) + 0.5) * h};
}

int dyadic_level(double delta) {
  require(delta > 0.0 && std::isfinite(delta), ErrorKind::PreconditionViolated,
          "delta must be positive");
  const int level = static_cast<int>(std::ceil(-std::log2(delta) - 1e-9));
  return std::clamp(level, 0, 30);
}

std::pair<int, int> default_levels(double delta) { return {2, dyadic_level(delta) - 2}; }

std::vector<std::uint64_t> occupied_cells(std::span<const Point> points, int level) {
  const DyadicGrid grid(level);
  std::vector<std::uint64_t> keys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) keys[i] = grid.key(points[i]);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::uint64_t covering_number(std::span<const Point> points, int level) {
  require(level >= 0 && level <= 30, ErrorKind::PreconditionViolated, "level outside [0, 30]");
  return occupied_cells(points, level).size();
}

std::uint64_t covering_number(const DiscreteSet& set, int level) {
  require(level >= 0 && level <= kMaxDyadicLevel, ErrorKind::PreconditionViolated,
          "level outside [0, 20]");
  return covering_number(set.points(), level);
}

std::uint64_t covering_number_1d(std::span<const double> values, int level) {
  std::vector<std::int64_t> keys(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    keys[i] = static_cast<std::int64_t>(std::floor(std::ldexp(values[i], level)));
  }
  std::sort(keys.begin(), keys.end());
  return static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

DimensionEstimate box_dimension_of(std::span<const Point> points, int lmin, int lmax) {
  check_range(lmin, lmax);
  require(!points.empty(), ErrorKind::EmptyInput, "box dimension of an empty set");
  std::vector<std::pair<int, std::uint64_t>> counts;
  for (int level = lmin; level <= lmax; ++level) {
    counts.emplace_back(level, covering_number(points, level));
  }
  return fit_counts(std::move(counts), lmin, lmax);
}

DimensionEstimate box_dimension(const DiscreteSet& set, int lmin, int lmax) {
  check_range(lmin, lmax);
  require(std::ldexp(1.0, -lmax) >= set.delta() * (1.0 - 1e-9), ErrorKind::ScaleRangeTooNarrow,
          "finest level is below the set's resolution");
  return box_dimension_of(set.points(), lmin, lmax);
}

DimensionEstimate box_dimension(const DiscreteSet& set) {
  const auto [lmin, lmax] = default_levels(set.delta());
  return box_dimension(set, lmin, lmax);
}

DimensionEstimate box_dimension_1d(std::span<const double> values, int lmin, int lmax) {
  check_range(lmin, lmax);
  require(!values.empty(), ErrorKind::EmptyInput, "box dimension of an empty set");
  std::vector<std::pair<int, std::uint64_t>> counts;
  for (int level = lmin; level <= lmax; ++level) {
    counts.emplace_back(level, covering_number_1d(values, level));
  }
  return fit_counts(std::move(counts), lmin, lmax);
}

double hausdorff_content(const DiscreteSet& set, double s) {
  require(s >= 0.0 && s <= 2.0, ErrorKind::PreconditionViolated, "s must lie in [0, 2]");
  if (set.empty()) return 0.0;
  const int top = std::min(dyadic_level(set.delta()), kMaxDyadicLevel);
  double best = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= top; ++level) {
    const double count = static_cast<double>(covering_number(set.points(), level));
    best = std::min(best, count * std::pow(2.0, -level * s));
  }
  return best;
}

DeltaSetCheck verify_delta_s_set(const DiscreteSet& set, double s, double c,
                                 std::optional<double> scale) {
  require(s >= 0.0 && s <= 2.0, ErrorKind::PreconditionViolated, "s must lie in [0, 2]");
  require(c > 0.0, ErrorKind::PreconditionViolated, "c must be positive");
  DeltaSetCheck out;
  if (set.empty()) return out;
  const double delta = scale.value_or(set.delta());
  const int top = std::min(dyadic_level(delta), kMaxDyadicLevel);

  // One representative per delta-square stands in for the delta-covering number.
  const DyadicGrid fine(top);
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) keyed[i] = {fine.key(set[i]), i};
  std::sort(keyed.begin(), keyed.end());
  std::vector<Point> reps;
  for (std::size_t k = 0; k < keyed.size(); ++k) {
    if (k == 0 || keyed[k].first != keyed[k - 1].first) reps.push_back(set[keyed[k].second]);
  }
  const BallIndex index(reps);
  const double total = static_cast<double>(reps.size());

  // A radius r = 2^-j is in range when r >= delta.
  int finest = 0;
  while (finest < top && std::ldexp(1.0, -(finest + 1)) >= delta * (1.0 - 1e-9)) ++finest;

  for (int j = 0; j <= finest; ++j) {
    const double r = std::ldexp(1.0, -j);
    std::vector<Point> centers = reps;
    for (std::uint64_t key : occupied_cells(reps, j)) centers.push_back(DyadicGrid(j).center_of(key));
    std::vector<double> ratio(centers.size());
    const double denom = std::pow(r, s) * total;
    parallel_for(centers.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ratio[i] = index.mass(centers[i], r) / denom;
    });
    for (std::size_t i = 0; i < centers.size(); ++i) {
      if (ratio[i] > out.worst_ratio) {
        out.worst_ratio = ratio[i];
        out.witness_center = centers[i];
        out.witness_level = j;
      }
    }
  }
  out.pass = out.worst_ratio <= c;
  return out;
}

FrostmanExtraction frostman_extract(const DiscreteSet& set, double s, double rho) {
  require(!set.empty(), ErrorKind::EmptyInput, "frostman_extract on an empty set");
  require(s > 0.0 && s <= 2.0, ErrorKind::PreconditionViolated, "s must lie in (0, 2]");
  require(rho >= set.delta() * (1.0 - 1e-9) && rho <= 1.0, ErrorKind::PreconditionViolated,
          "rho must lie in [delta, 1]");
  const int leaf_level = std::min(dyadic_level(set.delta()), kMaxDyadicLevel);
  const int target = std::min(dyadic_level(rho), leaf_level);

  // Dyadic net content, bottom up: content(Q) = min(side(Q)^s, sum over children).
  std::vector<std::unordered_map<std::uint64_t, double>> content(leaf_level + 1);
  for (std::uint64_t key : occupied_cells(set.points(), leaf_level)) {
    content[leaf_level][key] = std::pow(2.0, -leaf_level * s);
  }
  for (int level = leaf_level; level > 0; --level) {
    auto& up = content[level - 1];
    for (const auto& [key, value] : content[level]) up[parent_key(key)] += value;
    const double cap = std::pow(2.0, -(level - 1) * s);
    for (auto& [key, value] : up) value = std::min(value, cap);
  }

  auto budget = [s](int gap) {
    return static_cast<std::size_t>(std::ceil(std::pow(2.0, s * gap) - 1e-9));
  };

  std::vector<std::uint64_t> kept;
  for (const auto& [key, value] : content[0]) kept.push_back(key);
  std::sort(kept.begin(), kept.end());

  for (int level = 0; level < target; ++level) {
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> children;
    for (const auto& [key, value] : content[level + 1]) {
      children[parent_key(key)].push_back(key);
    }
    struct Candidate {
      std::uint64_t key;
      double content;
    };
    auto better = [](const Candidate& a, const Candidate& b) {
      if (a.content != b.content) return a.content > b.content;
      return a.key < b.key;
    };
    std::vector<Candidate> firsts, rest;
    for (std::uint64_t parent : kept) {
      auto it = children.find(parent);
      if (it == children.end()) continue;
      std::vector<Candidate> cands;
      for (std::uint64_t child : it->second) cands.push_back({child, content[level + 1][child]});
      std::sort(cands.begin(), cands.end(), better);
      firsts.push_back(cands.front());
      rest.insert(rest.end(), cands.begin() + 1, cands.end());
    }
    std::sort(rest.begin(), rest.end(), better);

    // used[g] counts accepted children under each ancestor g levels above the child.
    const int depth = level + 1;
    std::vector<std::unordered_map<std::uint64_t, std::size_t>> used(depth + 1);
    auto ancestors = [&](std::uint64_t key) {
      std::vector<std::uint64_t> chain(depth + 1);
      chain[0] = key;
      for (int g = 1; g <= depth; ++g) chain[g] = parent_key(chain[g - 1]);
      return chain;
    };
    // Every kept parent gets its best child first; extras must fit every ancestor's budget.
    std::vector<std::uint64_t> next;
    auto accept = [&](std::uint64_t key, const std::vector<std::uint64_t>& chain) {
      for (int g = 1; g <= depth; ++g) ++used[g][chain[g]];
      next.push_back(key);
    };
    for (const Candidate& c : firsts) accept(c.key, ancestors(c.key));
    for (const Candidate& c : rest) {
      const auto chain = ancestors(c.key);
      bool ok = true;
      for (int g = 1; g <= depth && ok; ++g) ok = used[g][chain[g]] + 1 <= budget(g);
      if (ok) accept(c.key, chain);
    }
    std::sort(next.begin(), next.end());
    kept = std::move(next);
  }

  // Representative: the input point nearest its square's centre, lowest index on ties.
  const DyadicGrid grid(target);
  std::unordered_map<std::uint64_t, std::size_t> pick;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const std::uint64_t key = grid.key(set[i]);
    if (!std::binary_search(kept.begin(), kept.end(), key)) continue;
    auto [it, inserted] = pick.try_emplace(key, i);
    if (!inserted) {
      const Point c = grid.center_of(key);
      if (distance(set[i], c) < distance(set[it->second], c)) it->second = i;
    }
  }
  std::vector<std::size_t> indices;
  for (std::uint64_t key : kept) indices.push_back(pick.at(key));

  FrostmanExtraction out{set.subset(indices, set.label() + "/frostman"), rho, target,
                         hausdorff_content(set, s), false};
  out.meets_cardinality_bound =
      static_cast<double>(out.set.size()) >=
      kFrostmanCardinalityFactor * out.content * std::pow(rho, -s) * (1.0 - 1e-12);
  return out;
}

}  // namespace gmt
