#include "gmtlab/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "gmtlab/covering.hpp"
#include "gmtlab/errors.hpp"
#include "gmtlab/incidence.hpp"
#include "gmtlab/rng.hpp"

namespace gmt {

namespace {

constexpr double kLattice = 0x1.0p-20;
constexpr std::int64_t kLatticeSide = std::int64_t{1} << 20;

Provenance make_provenance(std::string generator, std::uint64_t seed, nlohmann::json params) {
  Provenance p;
  p.generator = std::move(generator);
  p.seed = seed;
  p.params = std::move(params);
  return p;
}

}  // namespace

Point SimilarityMap::operator()(Point p) const noexcept {
  const double c = std::cos(rotation), s = std::sin(rotation);
  return {ratio * (c * p.x - s * p.y) + translation.x, ratio * (s * p.x + c * p.y) + translation.y};
}

double similarity_dimension(const IfsSystem& system) {
  require(!system.maps.empty(), ErrorKind::PreconditionViolated, "IFS needs at least one map");
  auto f = [&](double s) {
    double acc = 0.0;
    for (const auto& m : system.maps) acc += std::pow(m.ratio, s);
    return acc - 1.0;
  };
  double lo = 0.0, hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

IfsSystem cantor3() {
  return {{{1.0 / 3.0, 0.0, {0.0, 0.0}}, {1.0 / 3.0, 0.0, {2.0 / 3.0, 0.0}}}, 0};
}

IfsSystem four_corner() {
  IfsSystem sys;
  for (Point t : {Point{0.0, 0.0}, Point{0.75, 0.0}, Point{0.0, 0.75}, Point{0.75, 0.75}}) {
    sys.maps.push_back({0.25, 0.0, t});
  }
  return sys;
}

DiscreteSet gen_ifs(const IfsSystem& system, double target_delta) {
  require(!system.maps.empty(), ErrorKind::PreconditionViolated, "IFS needs at least one map");
  require(target_delta >= kMinIfsDelta * (1.0 - 1e-12) && target_delta <= kMaxGeneratorDelta,
          ErrorKind::PreconditionViolated, "target_delta outside [2^-20, 2^-2]");
  double max_ratio = 0.0;
  for (const auto& m : system.maps) {
    require(m.ratio > 0.0 && m.ratio < 1.0, ErrorKind::PreconditionViolated,
            "IFS ratios must lie in (0, 1)");
    max_ratio = std::max(max_ratio, m.ratio);
  }
  int depth = system.depth;
  if (depth <= 0) {
    depth = 0;
    while (std::pow(max_ratio, depth) > target_delta * (1.0 + 1e-9)) ++depth;
  }
  const double count = std::pow(static_cast<double>(system.maps.size()), depth);
  require(count <= static_cast<double>(kMaxGeneratedPoints), ErrorKind::TooManyPoints,
          "IFS output would exceed 2^24 points");

  std::vector<Point> pts{Point{0.0, 0.0}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Point> next;
    next.reserve(pts.size() * system.maps.size());
    // Outermost map applied last, so the word order matches f_{i1} o ... o f_{ik}(0).
    for (const auto& m : system.maps) {
      for (const Point& p : pts) next.push_back(m(p));
    }
    pts = std::move(next);
  }
  for (Point& p : pts) {
    p = {std::round(p.x / target_delta) * target_delta, std::round(p.y / target_delta) * target_delta};
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  nlohmann::json params = {{"depth", depth}, {"target_delta", target_delta},
                           {"similarity_dimension", similarity_dimension(system)}};
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& m : system.maps) {
    maps.push_back({{"ratio", m.ratio}, {"rotation", m.rotation},
                    {"translation", {m.translation.x, m.translation.y}}});
  }
  params["maps"] = std::move(maps);
  return DiscreteSet(std::move(pts), target_delta, "ifs", make_provenance("ifs", 0, params));
}

DiscreteSet gen_random_delta_s_set(double s, double delta, std::uint64_t seed) {
  require(s >= 0.0 && s <= 2.0, ErrorKind::PreconditionViolated, "s must lie in [0, 2]");
  require(delta >= kMinRandomDelta * (1.0 - 1e-12) && delta <= kMaxGeneratorDelta,
          ErrorKind::PreconditionViolated, "delta outside [2^-14, 2^-2]");
  const int levels = dyadic_level(delta);
  Rng rng(seed);

  struct Node {
    std::int64_t i, j;
    double budget;
  };
  std::vector<Node> nodes{{0, 0, std::pow(2.0, s * levels)}};
  for (int level = 0; level < levels; ++level) {
    const double child_ideal = std::pow(2.0, s * (levels - level - 1));
    std::vector<Node> next;
    for (const Node& n : nodes) {
      const double x = n.budget / child_ideal;
      const double fl = std::floor(x);
      int c = static_cast<int>(fl) + (rng.bernoulli(x - fl) ? 1 : 0);
      c = std::clamp(c, 1, 4);
      std::array<int, 4> quad{0, 1, 2, 3};
      for (int k = 0; k < c; ++k) {
        const auto pick = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(4 - k)));
        std::swap(quad[k], quad[pick]);
      }
      std::sort(quad.begin(), quad.begin() + c);
      for (int k = 0; k < c; ++k) {
        next.push_back({2 * n.i + (quad[k] & 1), 2 * n.j + (quad[k] >> 1), n.budget / c});
      }
    }
    nodes = std::move(next);
  }
  const double side = std::ldexp(1.0, -levels);
  std::vector<Point> pts;
  pts.reserve(nodes.size());
  for (const Node& n : nodes) pts.push_back({n.i * side, n.j * side});
  std::sort(pts.begin(), pts.end());
  return DiscreteSet(std::move(pts), side, "random_delta_s",
                     make_provenance("random_delta_s", seed, {{"s", s}, {"delta", delta}, {"level", levels}}));
}

DiscreteSet gen_planted_collinear(std::size_t n, std::size_t k, std::uint64_t seed) {
  require(n >= 2 && k + 2 <= n, ErrorKind::PreconditionViolated, "need 0 <= k <= n - 2");
  Rng rng(seed);
  const std::size_t on_line = n - k;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::int64_t> xs;
    while (xs.size() < on_line) {
      xs.push_back(static_cast<std::int64_t>(rng.below(std::uint64_t{1} << 19)));
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    }
    // Lattice coordinates (u, v) over 2^20; the line is 2v = u + 2^20.
    std::vector<std::pair<std::int64_t, std::int64_t>> lattice;
    for (std::int64_t a : xs) lattice.emplace_back(2 * a, a + kLatticeSide / 2);
    while (lattice.size() < n) {
      const auto u = static_cast<std::int64_t>(rng.below(kLatticeSide));
      const auto v = static_cast<std::int64_t>(rng.below(kLatticeSide));
      if (2 * v == u + kLatticeSide) continue;
      if (std::find(lattice.begin(), lattice.end(), std::pair{u, v}) != lattice.end()) continue;
      lattice.emplace_back(u, v);
    }
    std::vector<Point> pts;
    for (const auto& [u, v] : lattice) pts.push_back({u * kLattice, v * kLattice});
    if (spanned_line_stats(std::span<const Point>(pts)).max_collinear != on_line) continue;
    return DiscreteSet(std::move(pts), kLattice, "planted_collinear",
                       make_provenance("planted_collinear", seed,
                                       {{"n", n}, {"k", k}, {"attempts", attempt + 1}}));
  }
  fail(ErrorKind::InvariantViolation, "planted collinear construction kept colliding");
}

DiscreteSet gen_grid(std::size_t m) {
  require(m >= 2 && m <= 1024, ErrorKind::PreconditionViolated, "grid side must lie in [2, 1024]");
  const double step = 1.0 / static_cast<double>(m - 1);
  std::vector<Point> pts;
  pts.reserve(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      pts.push_back({static_cast<double>(i) / static_cast<double>(m - 1),
                     static_cast<double>(j) / static_cast<double>(m - 1)});
    }
  }
  return DiscreteSet(std::move(pts), step, "grid", make_provenance("grid", 0, {{"m", m}}));
}

DiscreteSet gen_dyadic_grid(int level) {
  require(level >= 0 && level <= 12, ErrorKind::PreconditionViolated, "level outside [0, 12]");
  const std::int64_t side = std::int64_t{1} << level;
  const double h = std::ldexp(1.0, -level);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(side * side));
  for (std::int64_t j = 0; j < side; ++j) {
    for (std::int64_t i = 0; i < side; ++i) pts.push_back({i * h, j * h});
  }
  return DiscreteSet(std::move(pts), h, "dyadic_grid",
                     make_provenance("dyadic_grid", 0, {{"level", level}}));
}

DiscreteSet gen_uniform(std::size_t n, std::uint64_t seed) {
  require(n <= (std::size_t{1} << 22), ErrorKind::TooManyPoints, "too many uniform points");
  Rng rng(seed);
  std::vector<std::pair<std::int64_t, std::int64_t>> lattice;
  std::vector<std::pair<std::int64_t, std::int64_t>> sorted;
  while (lattice.size() < n) {
    const auto u = static_cast<std::int64_t>(rng.below(kLatticeSide));
    const auto v = static_cast<std::int64_t>(rng.below(kLatticeSide));
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), std::pair{u, v});
    if (it != sorted.end() && *it == std::pair{u, v}) continue;
    sorted.insert(it, {u, v});
    lattice.emplace_back(u, v);
  }
  std::vector<Point> pts;
  pts.reserve(n);
  for (const auto& [u, v] : lattice) pts.push_back({u * kLattice, v * kLattice});
  return DiscreteSet(std::move(pts), kLattice, "uniform",
                     make_provenance("uniform", seed, {{"n", n}}));
}

DiscreteSet gen_segment(std::size_t n) {
  require(n >= 1 && n <= kMaxGeneratedPoints, ErrorKind::PreconditionViolated,
          "segment needs 1 to 2^24 points");
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({static_cast<double>(i) / static_cast<double>(n), 0.0});
  }
  return DiscreteSet(std::move(pts), std::min(1.0, 1.0 / static_cast<double>(n)), "segment",
                     make_provenance("segment", 0, {{"n", n}}));
}

DiscreteSet gen_circle(std::size_t n, Point center, double radius) {
  require(n >= 1 && radius > 0.0, ErrorKind::PreconditionViolated, "circle needs n >= 1, radius > 0");
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  const double chord = n > 1 ? 2.0 * radius * std::sin(std::numbers::pi / static_cast<double>(n)) : 1.0;
  return DiscreteSet(std::move(pts), std::min(1.0, chord), "circle",
                     make_provenance("circle", 0, {{"n", n}, {"center", {center.x, center.y}}, {"radius", radius}}));
}

DiscreteSet unite(const DiscreteSet& a, const DiscreteSet& b, std::string label) {
  std::vector<Point> pts(a.points().begin(), a.points().end());
  pts.insert(pts.end(), b.points().begin(), b.points().end());
  Provenance prov = make_provenance("union", 0, {{"left", a.label()}, {"right", b.label()}});
  return DiscreteSet(std::move(pts), std::min(a.delta(), b.delta()),
                     label.empty() ? a.label() + "+" + b.label() : std::move(label), std::move(prov));
}

}  // namespace gmt
