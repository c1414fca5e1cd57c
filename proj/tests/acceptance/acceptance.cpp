// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gmtlab/covering.hpp"
#include "gmtlab/errors.hpp"
#include "gmtlab/experiments.hpp"
#include "gmtlab/generators.hpp"
#include "gmtlab/incidence.hpp"
#include "gmtlab/io.hpp"
#include "gmtlab/measures.hpp"
#include "gmtlab/parallel.hpp"
#include "gmtlab/rng.hpp"
#include "gmtlab/tubes.hpp"

using namespace gmt;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Random lattice points plus lines spanned by random pairs of a second random set: both sides
// share the integer grid, so incidences are plentiful and counted exactly.
Outcome incidence_suite() {
  Outcome o;
  Rng rng(101);
  std::size_t worst_instance = 0;
  double worst_slack = 1e300;
  for (std::size_t inst = 0; inst < 1000; ++inst) {
    const std::size_t n = 1 + rng.below(500);
    const std::size_t m = 1 + rng.below(500);
    const std::uint64_t side = 8 + rng.below(57);
    std::vector<Point> pts;
    std::vector<std::uint8_t> used((side) * (side), 0);
    const std::size_t cap = std::min<std::size_t>(n, side * side);
    while (pts.size() < cap) {
      const std::uint64_t c = rng.below(side * side);
      if (used[c]) continue;
      used[c] = 1;
      pts.push_back({static_cast<double>(c % side) / 64.0, static_cast<double>(c / side) / 64.0});
    }
    std::vector<Line> lines;
    for (std::size_t attempt = 0; lines.size() < m && attempt < 100 * m; ++attempt) {
      const Point a{static_cast<double>(rng.below(side)) / 64.0, static_cast<double>(rng.below(side)) / 64.0};
      const Point b{static_cast<double>(rng.below(side)) / 64.0, static_cast<double>(rng.below(side)) / 64.0};
      if (a == b) continue;
      const Line l = Line::through(a, b);
      bool dup = false;
      for (const Line& q : lines) dup = dup || same_line(q, l);
      if (!dup) lines.push_back(l);
    }
    const auto rep = incidence_count(std::span<const Point>(pts), LineSet::supplied(lines));
    const double nn = static_cast<double>(pts.size()), mm = static_cast<double>(lines.size());
    const double bound = nn + mm + std::pow(nn * mm, 0.75);
    const double slack = bound - static_cast<double>(rep.incidence_count);
    if (slack < worst_slack) {
      worst_slack = slack;
      worst_instance = inst;
    }
    o.check(slack >= 0, fmt("random instance %g violates |I| <= n + m + (nm)^{3/4}", double(inst)));
  }
  for (std::size_t g = 3; g <= 32; ++g) {
    const DiscreteSet grid = gen_grid(g);
    const LineSet lines = spanned_lines(grid);
    const auto rep = incidence_count(grid, lines);
    std::uint64_t oracle = 0;
    for (auto k : lines.multiplicity) oracle += k;
    const double nn = static_cast<double>(grid.size()), mm = static_cast<double>(lines.size());
    o.check(static_cast<double>(rep.incidence_count) <= nn + mm + std::pow(nn * mm, 0.75),
            fmt("%gx%g grid violates the incidence bound", double(g), double(g)));
    o.check(rep.incidence_count == oracle, fmt("%gx%g grid: sweep and brute-force counts differ", double(g), double(g)));
    if (g == 3) {
      o.check(lines.size() == 20 && rep.incidence_count == 48,
              fmt("3x3 grid: %g lines, %g incidences", double(lines.size()), double(rep.incidence_count)));
    }
  }
  if (o.pass) o.detail = fmt("0 violations; tightest random slack %g (instance %g)", worst_slack, double(worst_instance));
  return o;
}

Outcome beck_suite() {
  Outcome o;
  std::size_t general = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const DiscreteSet p = gen_uniform(512, seed);
    if (!in_general_position(p.points())) continue;
    ++general;
    const BeckReport r = beck_analyze(p);
    o.check(r.verdict == BeckVerdict::ManyLines, fmt("seed %g: verdict is not ManyLines", double(seed)));
    o.check(r.spanned_line_count == 512ull * 511 / 2, fmt("seed %g: spanned count %g", double(seed), double(r.spanned_line_count)));
  }
  double worst = 1e300;
  for (std::size_t k : {0u, 16u, 256u}) {
    const BeckReport r = beck_analyze(gen_planted_collinear(512, k, 7));
    if (k >= 16) {
      o.check(r.erdos_beck_ratio.has_value() && *r.erdos_beck_ratio >= 0.25,
              fmt("planted k = %g: Erdos-Beck ratio below 1/4", double(k)));
      if (r.erdos_beck_ratio) worst = std::min(worst, *r.erdos_beck_ratio);
    }
  }
  if (o.pass) o.detail = fmt("%g/200 sets in general position, all ManyLines; min planted ratio %.3f", double(general), worst);
  return o;
}

Outcome dimension_calibration() {
  Outcome o;
  const double cantor = box_dimension(gen_ifs(cantor3(), std::pow(3.0, -10))).slope;
  const double corner = box_dimension(gen_ifs(four_corner(), std::pow(4.0, -6))).slope;
  const double grid = box_dimension(gen_dyadic_grid(10)).slope;
  const double segment = box_dimension(gen_segment(1024), 2, 10).slope;
  o.check(std::abs(cantor - std::log(2.0) / std::log(3.0)) <= 0.05, fmt("cantor slope %.4f", cantor));
  o.check(std::abs(corner - 1.0) <= 0.05, fmt("four-corner slope %.4f", corner));
  o.check(std::abs(grid - 2.0) <= 0.03, fmt("grid slope %.4f", grid));
  o.check(std::abs(segment - 1.0) <= 0.02, fmt("segment slope %.4f", segment));
  if (o.pass) {
    o.detail = fmt("cantor %.4f, four-corner %.4f, grid %.4f", cantor, corner, grid) + fmt(", segment %.4f", segment);
  }
  return o;
}

Outcome delta_set_machinery() {
  Outcome o;
  double worst = 0.0, tightest = 1e300;
  for (double s : {0.3, 0.5, 1.0, 1.5}) {
    for (int level : {6, 8, 10}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const double delta = std::ldexp(1.0, -level);
        const DiscreteSet a = gen_random_delta_s_set(s, delta, seed);
        const DeltaSetCheck c = verify_delta_s_set(a, s, 16.0);
        worst = std::max(worst, c.worst_ratio);
        o.check(c.pass, fmt("s = %g, delta = 2^-%g: random set ratio %.2f", s, double(level), c.worst_ratio));
        const double rho = 4.0 * delta;
        const FrostmanExtraction b = frostman_extract(a, s, rho);
        const DeltaSetCheck cb = verify_delta_s_set(b.set, s, 16.0, rho);
        o.check(cb.pass, fmt("s = %g, delta = 2^-%g: extraction fails its (rho, s, 16) check", s, double(level)));
        const double need = std::ldexp(b.content * std::pow(rho, -s), -6);
        tightest = std::min(tightest, static_cast<double>(b.set.size()) / need);
        o.check(static_cast<double>(b.set.size()) >= need,
                fmt("s = %g, delta = 2^-%g: |B| below 2^-6 content rho^-s", s, double(level)));
      }
    }
  }
  if (o.pass) o.detail = fmt("60 sets; worst (delta,s) ratio %.2f; min |B|/bound %.2f", worst, tightest);
  return o;
}

Outcome thin_tubes() {
  Outcome o;
  // Both measures on the x-axis, kept 4 delta apart.
  const double delta = 1.0 / 256;
  std::vector<Point> left, right;
  for (int i = 0; i < 64; ++i) left.push_back({-1.0 + i * delta, 0.0});
  for (int i = 0; i < 64; ++i) right.push_back({0.5 + i * delta, 0.0});
  const auto mu = WeightedMeasure::uniform(DiscreteSet(left, delta, "left"));
  const auto nu = WeightedMeasure::uniform(DiscreteSet(right, delta, "right"));
  for (int sk = 1; sk <= 20; ++sk) {
    const double sigma = 0.1 * sk;
    for (double k : {1.0, 2.0, 16.0, 255.0, 256.0, 2048.0, 65536.0}) {
      const bool expect_fail = k * std::pow(delta, sigma) < 1.0;
      const ThinTubeAudit a = thin_tube_audit(mu, nu, sigma, k, 1.0);
      o.check(a.pass != expect_fail, fmt("collinear pair at sigma %.1f, K %g: audit ", sigma, k) +
                                         (a.pass ? "passes" : "fails"));
    }
  }
  const DiscreteSet circle = gen_circle(1024, {0.0, 0.0}, 1.0);
  const auto ring = WeightedMeasure::uniform(circle);
  const auto atom = WeightedMeasure::uniform(DiscreteSet({{0.0, 0.0}}, circle.delta(), "center"));
  const ThinTubeAudit cc = thin_tube_audit(atom, ring, 1.0, 64.0, 1.0);
  o.check(cc.pass, fmt("center vs circle: worst ratio %.3f", cc.worst_ratio));

  // Exponent of the pushed-forward measure against the exponent of heaviest-tube masses.
  struct Pair {
    DiscreteSet y;
    Point x;
  };
  std::vector<Pair> pairs;
  pairs.push_back({gen_circle(2048, {0, 0}, 1.0), {0.0, 0.0}});
  pairs.push_back({gen_circle(2048, {0, 0}, 1.0), {0.0, 0.5}});
  pairs.push_back({gen_dyadic_grid(8), {-0.5, -0.5}});
  pairs.push_back({gen_dyadic_grid(8), {1.5, 0.5}});
  pairs.push_back({gen_ifs(four_corner(), std::pow(4.0, -5)), {-0.5, 0.5}});
  pairs.push_back({gen_ifs(four_corner(), std::pow(4.0, -5)), {0.5, -1.0}});
  pairs.push_back({gen_random_delta_s_set(1.5, 0x1.0p-9, 3), {-1.0, -1.0}});
  pairs.push_back({gen_random_delta_s_set(0.5, 0x1.0p-9, 4), {-0.5, 1.5}});
  pairs.push_back({gen_ifs(cantor3(), std::pow(3.0, -7)), {0.5, 1.0}});
  pairs.push_back({gen_segment(512), {0.5, 1.0}});
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto nu_i = WeightedMeasure::uniform(pairs[i].y);
    const int lmax = dyadic_level(pairs[i].y.delta()) - 2;
    const FrostmanFit pf = direction_frostman_fit(radial_pushforward(nu_i, pairs[i].x), 2, lmax);
    const FrostmanFit tf = tube_exponent(nu_i, pairs[i].x, 2, lmax);
    const double gap = std::abs(pf.exponent - tf.exponent);
    worst_gap = std::max(worst_gap, gap);
    o.check(gap <= 0.1, fmt("pair %g: pushforward exponent %.3f vs tube exponent %.3f", double(i), pf.exponent, tf.exponent));
  }
  if (o.pass) o.detail = fmt("collinear grid exact; center-vs-circle ratio %.3f; max exponent gap %.3f", cc.worst_ratio, worst_gap);
  return o;
}

Outcome radial_kaufman() {
  const DiscreteSet f = gen_ifs(four_corner(), std::pow(4.0, -5));
  ExperimentSpec spec{f, f, 32, std::nullopt, Target::Kaufman};
  const ExperimentResult r = radial_dimension_profile(spec);
  Outcome o;
  o.check(r.best_dimension.slope >= 0.85, fmt("best direction-set dimension %.3f < 0.85", r.best_dimension.slope));
  if (o.pass) o.detail = fmt("best %.3f (predicted %.3f)", r.best_dimension.slope, r.predicted_lower_bound);
  return o;
}

Outcome radial_falconer() {
  const double delta = 0x1.0p-10;
  ExperimentSpec spec{gen_random_delta_s_set(0.4, delta, 11), gen_random_delta_s_set(1.5, delta, 12), 32,
                      std::nullopt, Target::Falconer};
  const ExperimentResult r = radial_dimension_profile(spec);
  Outcome o;
  o.check(r.best_dimension.slope >= 0.75, fmt("best direction-set dimension %.3f < 0.75", r.best_dimension.slope));
  if (o.pass) o.detail = fmt("best %.3f (predicted %.3f)", r.best_dimension.slope, r.predicted_lower_bound);
  return o;
}

Outcome continuum_beck() {
  // The spanned-line estimate climbs slowly with resolution, so run at the finest supported delta.
  const DiscreteSet x = gen_random_delta_s_set(0.7, kMinRandomDelta, 21);
  const ErdosBeckProfile p = erdos_beck_profile(x, 0.05);
  Outcome o;
  o.check(p.hypothesis_holds, fmt("t_achieved %.3f exceeds 0.05", p.t_achieved));
  o.check(p.measured >= 1.1, fmt("line-set dimension %.3f < 1.1", p.measured));
  if (o.pass) o.detail = fmt("line-set dimension %.3f, t_achieved %.3f, dim X %.3f", p.measured, p.t_achieved, p.dim_x);
  return o;
}

Outcome furstenberg() {
  Outcome o;
  std::string info;
  for (double sigma : {0.3, 0.5}) {
    const FurstenbergCount f = furstenberg_count(sigma, 1.0, 0x1.0p-10, 31);
    o.check(static_cast<double>(f.count) >= std::ldexp(f.wolff_floor, -6),
            fmt("sigma %g: count %g below floor", sigma, double(f.count)));
    info += fmt("sigma %g: count/delta^{-2 sigma} = %.3f; ", sigma, f.ratio);
  }
  if (o.pass) o.detail = info;
  return o;
}

Outcome orthogonal() {
  Outcome o;
  const OrthoProfile fc = orthogonal_exceptional_profile(gen_ifs(four_corner(), std::pow(4.0, -8)), 0.8);
  o.check(fc.measured_dim <= 0.95, fmt("four-corner exceptional dimension %.3f", fc.measured_dim));
  const DiscreteSet seg = gen_segment(std::size_t{1} << 15);
  for (int k = 1; k <= 8; ++k) {
    const double sigma = 0.1 * k;
    const OrthoProfile sp = orthogonal_exceptional_profile(seg, sigma);
    o.check(sp.exceptional_directions.size() == 1,
            fmt("segment at sigma %.1f: %g exceptional directions", sigma, double(sp.exceptional_directions.size())));
  }
  if (o.pass) {
    o.detail = fmt("four-corner: %g exceptional directions, dimension %.3f; segment: one each", double(fc.exceptional_directions.size()), fc.measured_dim);
  }
  return o;
}

Outcome tube_family() {
  Outcome o;
  std::string info;
  Rng rng(41);
  for (int level : {4, 6, 8}) {
    const double r = std::ldexp(1.0, -level);
    const TubeFamily fam = uniform_tube_family(r);
    const double n = static_cast<double>(fam.tubes.size());
    o.check(n >= 0.25 / (r * r) && n <= 16.0 / (r * r), fmt("r = 2^-%g: %g tubes", double(level), n));
    std::size_t lo = 1000, hi = 0;
    for (int i = 0; i < 1000; ++i) {
      const Tube probe(Line::from_angle_offset(rng.uniform(0.0, kPi), rng.uniform(-1.0, 1.0)), r);
      const std::size_t mult = containment_multiplicity(fam, probe);
      lo = std::min(lo, mult);
      hi = std::max(hi, mult);
    }
    o.check(lo >= 1 && hi <= 50, fmt("r = 2^-%g: multiplicity range [%g, %g]", double(level), double(lo), double(hi)));
    info += fmt("r=2^-%g: %g tubes, mult [%g,", double(level), n, double(lo)) + fmt("%g]; ", double(hi));
  }
  if (o.pass) o.detail = info;
  return o;
}

std::string reproducible_payload() {
  std::string out;
  out += per_scale_csv(box_dimension(gen_ifs(four_corner(), std::pow(4.0, -5))));
  const DiscreteSet a = gen_random_delta_s_set(1.0, 0x1.0p-8, 5);
  const DiscreteSet b = gen_random_delta_s_set(0.4, 0x1.0p-8, 6);
  const auto tmp = std::filesystem::temp_directory_path() / "gmtlab_repro.csv";
  save_set(a, tmp);
  const DiscreteSet back = load_set(tmp);
  for (const Point& p : back.points()) out += format_double(p.x) + "," + format_double(p.y) + "\n";
  out += profile_csv(beck_analyze(gen_planted_collinear(256, 16, 9)).connected_pair_profile);
  out += tube_family_csv(uniform_tube_family(0x1.0p-4));
  ExperimentSpec spec{b, a, 8, std::nullopt, Target::Kaufman};
  out += per_x_csv(radial_dimension_profile(spec));
  out += measure_csv(WeightedMeasure::uniform(b));
  return out;
}

Outcome reproducibility() {
  Outcome o;
  // The second run also changes the worker cap: chunked parallelism must not leak into output.
  set_worker_count(1);
  const std::string first = reproducible_payload();
  set_worker_count(3);
  const std::string second = reproducible_payload();
  set_worker_count(0);
  o.check(first == second, "repeated runs produced different CSV bytes");
  if (o.pass) o.detail = fmt("%g CSV bytes identical across runs with 1 and 3 workers", double(first.size()));
  return o;
}

}  // namespace

// Optional arguments select criteria by number; no arguments runs all of them.
int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"incidence bound suite", incidence_suite},
      {"Beck dichotomy", beck_suite},
      {"dimension estimator calibration", dimension_calibration},
      {"(delta,s,C)-set machinery", delta_set_machinery},
      {"thin-tube degeneracy and equivalence", thin_tubes},
      {"radial projections, Kaufman range", radial_kaufman},
      {"radial projections, Falconer range", radial_falconer},
      {"continuum Beck", continuum_beck},
      {"Furstenberg Wolff floor", furstenberg},
      {"orthogonal projections exceptional set", orthogonal},
      {"tube family contract", tube_family},
      {"reproducibility", reproducibility},
  };
  std::vector<bool> selected(criteria.size(), argc < 2);
  for (int a = 1; a < argc; ++a) {
    const long k = std::strtol(argv[a], nullptr, 10);
    if (k >= 1 && k <= static_cast<long>(criteria.size())) selected[static_cast<std::size_t>(k - 1)] = true;
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures;
}
