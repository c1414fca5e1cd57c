#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gmtlab/covering.hpp"
#include "gmtlab/generators.hpp"
#include "gmtlab/rng.hpp"
#include "gmtlab/tubes.hpp"
#include "test_support.hpp"

using namespace gmt;
using gmt::test::kind_of;

namespace {

constexpr double kPi = std::numbers::pi;

WeightedMeasure atom(Point p) { return WeightedMeasure::uniform(DiscreteSet({p}, 0x1.0p-10)); }

WeightedMeasure unit_circle(std::size_t n) {
  return WeightedMeasure::uniform(gen_circle(n, {0, 0}, 1.0));
}

// n points of the x-axis segment starting at x0 with spacing 2^-10.
WeightedMeasure axis_run(double x0, std::size_t n) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({x0 + std::ldexp(static_cast<double>(i), -10), 0});
  return WeightedMeasure::uniform(DiscreteSet(pts, 0x1.0p-10));
}

TubeFamily pencil(Point x, double r) {
  TubeFamily f;
  f.width = r;
  f.direction_net_step = r;
  for (double a = 0; a < kPi; a += r) f.tubes.emplace_back(Line::from_point_angle(x, a), r);
  return f;
}

}  // namespace

TEST(UniformTubeFamily, SizeBounds) {
  for (double r : {0x1.0p-2, 0x1.0p-4, 0x1.0p-6}) {
    const TubeFamily f = uniform_tube_family(r);
    const double size = static_cast<double>(f.tubes.size());
    EXPECT_GE(size, 0.25 / (r * r));
    EXPECT_LE(size, 16.0 / (r * r));
    for (const Tube& t : f.tubes) EXPECT_DOUBLE_EQ(t.width(), 2 * r);
  }
  const TubeFamily f = uniform_tube_family(0x1.0p-4);
  EXPECT_GE(f.tubes.size(), 64u);
  EXPECT_LE(f.tubes.size(), 4096u);
}

TEST(UniformTubeFamily, CoarsestScaleHasSeveralDirectionsAndTubes) {
  const TubeFamily f = uniform_tube_family(0.25);
  std::map<double, int> per_angle;
  for (const Tube& t : f.tubes) ++per_angle[t.axis().angle()];
  EXPECT_GE(per_angle.size(), 2u);
  for (const auto& [a, n] : per_angle) EXPECT_GE(n, 1);
  std::size_t with_four = 0;
  for (const auto& [a, n] : per_angle) with_four += n >= 4;
  EXPECT_GE(with_four, 2u);
  EXPECT_EQ(kind_of([] { uniform_tube_family(0.5); }), ErrorKind::PreconditionViolated);
}

TEST(UniformTubeFamily, DirectionsLieOnTheNet) {
  const TubeFamily f = uniform_tube_family(0x1.0p-5);
  for (const Tube& t : f.tubes) {
    const double k = t.axis().angle() / f.direction_net_step;
    EXPECT_NEAR(k, std::round(k), 1e-6);
  }
}

TEST(UniformTubeFamily, ProbeMultiplicity) {
  for (double r : {0x1.0p-3, 0x1.0p-5}) {
    const TubeFamily f = uniform_tube_family(r);
    Rng rng(static_cast<std::uint64_t>(1 / r));
    for (int i = 0; i < 300; ++i) {
      const Tube probe(Line::from_angle_offset(rng.uniform(0, kPi), rng.uniform(-1, 1)), r);
      const std::size_t m = containment_multiplicity(f, probe);
      EXPECT_GE(m, 1u);
      EXPECT_LE(m, 50u);
    }
  }
}

TEST(ContainsWithinUnitBall, Basics) {
  const Tube wide(Line::from_slope_intercept(0, 0), 0.4);
  EXPECT_TRUE(contains_within_unit_ball(wide, Tube(Line::from_slope_intercept(0, 0.05), 0.2)));
  EXPECT_FALSE(contains_within_unit_ball(wide, Tube(Line::from_slope_intercept(0, 0.5), 0.2)));
  EXPECT_FALSE(contains_within_unit_ball(wide, Tube(Line::from_slope_intercept(1, 0), 0.2)));
}

TEST(HeaviestTube, Examples) {
  const DiscreteSet seg = gen_segment(1024);
  const TubeMass axis = heaviest_tube(WeightedMeasure::uniform(seg), {0, 0}, 2 * seg.delta());
  EXPECT_NEAR(axis.mass, 1.0, 1e-12);
  EXPECT_NEAR(axis.tube.axis().angle(), 0.0, 1e-12);

  // A diametral slab of width w meets the unit circle in two arcs of angle 2 asin(w/2) each.
  const double w = 1.0 / 16;
  const double expect = 2 * asin(w / 2) / kPi;
  EXPECT_NEAR(heaviest_tube(unit_circle(4096), {0, 0}, w).mass, expect, 0.15 * expect);

  const TubeMass far = heaviest_tube(atom({0.7, 0.2}), {-1, -0.5}, 0.01);
  EXPECT_NEAR(far.mass, 1.0, 1e-12);
  EXPECT_TRUE(far.tube.contains({0.7, 0.2}));
}

TEST(ThinTubeAudit, AtomAgainstCircle) {
  const ThinTubeAudit a = thin_tube_audit(atom({0, 2}), unit_circle(1024), 1.0, 64.0, 1.0);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.pass, a.worst_ratio <= 1.0);
  EXPECT_GE(a.c_mass, 0.0);
  EXPECT_LE(a.c_mass, 1.0);
}

TEST(ThinTubeAudit, CollinearMeasuresFail) {
  const WeightedMeasure mu = axis_run(0.0, 64), nu = axis_run(0.5, 256);
  for (double sigma : {0.1, 0.5, 1.0})
    for (double k : {1.0, 4.0}) {
      // 2^-10 is the finest width audited; the axis tube breaks the bound once K 2^{-10 sigma} < 1.
      if (k * std::pow(0x1.0p-10, sigma) >= 1.0) continue;
      const ThinTubeAudit a = thin_tube_audit(mu, nu, sigma, k, 1.0);
      EXPECT_FALSE(a.pass) << sigma << " " << k;
      EXPECT_GT(a.worst_ratio, 1.0);
    }
}

TEST(ThinTubeAudit, ZeroExponentAlwaysPasses) {
  EXPECT_TRUE(thin_tube_audit(axis_run(0.0, 64), axis_run(0.5, 256), 0.0, 1.0, 1.0).pass);
}

TEST(ThinTubeAudit, SeparationIsRequired) {
  EXPECT_EQ(kind_of([] { thin_tube_audit(atom({0, 1}), unit_circle(256), 0.5, 1.0, 1.0); }),
            ErrorKind::SeparationViolated);
}

TEST(ThinTubeAudit, MonotoneInSigmaAndK) {
  const WeightedMeasure mu = WeightedMeasure::uniform(gen_random_delta_s_set(0.6, 0x1.0p-7, 3));
  std::vector<Point> shifted;
  const DiscreteSet base = gen_random_delta_s_set(1.3, 0x1.0p-7, 4);
  for (const Point& p : base.points()) shifted.push_back({p.x, p.y - 1.5});
  const WeightedMeasure nu = WeightedMeasure::uniform(DiscreteSet(shifted, 0x1.0p-7));
  for (double sigma : {0.3, 0.6, 0.9})
    for (double k : {1.0, 4.0, 16.0}) {
      if (!thin_tube_audit(mu, nu, sigma, k, 1.0).pass) continue;
      EXPECT_TRUE(thin_tube_audit(mu, nu, sigma * 0.5, k, 1.0).pass);
      EXPECT_TRUE(thin_tube_audit(mu, nu, sigma, 2 * k, 1.0).pass);
    }
}

TEST(ThinTubeAudit, ShrinkingReportsAchievedMass) {
  const WeightedMeasure mu = axis_run(0.0, 16);
  std::vector<Point> pts;
  const WeightedMeasure circle = unit_circle(512);
  for (const Point& p : circle.support().points()) pts.push_back({0.5 * p.x + 0.5, 0.5 * p.y + 1.2});
  const WeightedMeasure nu = WeightedMeasure::uniform(DiscreteSet(pts, 0x1.0p-10));
  const ThinTubeAudit a = thin_tube_audit(mu, nu, 1.0, 8.0, 0.0, {.shrink_witness = true});
  EXPECT_GE(a.c_mass, 0.0);
  EXPECT_LE(a.c_mass, 1.0);
}

// Lemma direction: a passing audit at (sigma, K, 1) comes with a centre whose direction set has
// dimension at least sigma - 0.15.
TEST(ThinTubeAudit, PassImpliesLargeDirectionSet) {
  const WeightedMeasure nu = unit_circle(4096);
  const ThinTubeAudit a = thin_tube_audit(atom({0, 2}), nu, 1.0, 64.0, 1.0);
  ASSERT_TRUE(a.pass);
  const DirectionMeasure d = radial_pushforward(nu, {0, 2});
  EXPECT_GE(direction_set_dimension(d, 2, 9).slope, 1.0 - 0.15);
}

TEST(TubeExponent, MatchesPushforwardFrostmanExponent) {
  const WeightedMeasure nu = unit_circle(4096);
  for (const Point x : {Point{0, 0}, Point{0, 1.8}}) {
    const FrostmanFit te = tube_exponent(nu, x, 2, 9);
    const FrostmanFit pf = direction_frostman_fit(radial_pushforward(nu, x), 2, 9);
    EXPECT_NEAR(te.exponent, pf.exponent, 0.1);
  }
}

// Each width-r tube meets at most about r^-1 squares of side r, so nu(T) <= 8 C r^{t-1}.
TEST(TubeMass, FalconerSeedBound) {
  const DiscreteSet y = gen_random_delta_s_set(1.5, 0x1.0p-9, 5);
  const WeightedMeasure nu = WeightedMeasure::uniform(y);
  const FrostmanFit fit = frostman_fit(nu, 2, 7);
  ASSERT_GT(fit.exponent, 1.0);
  for (const Point x : {Point{0.5, 0.5}, Point{-0.5, 0.2}, Point{1.2, 1.1}})
    for (int l = 2; l <= 7; ++l) {
      const double r = std::ldexp(1.0, -l);
      EXPECT_LE(heaviest_tube(nu, x, r).mass, 8 * fit.constant * std::pow(r, fit.exponent - 1));
    }
}

TEST(VerifyTubeSet, Examples) {
  TubeFamily single;
  single.width = 0x1.0p-6;
  single.tubes.emplace_back(Line::from_slope_intercept(0.2, 0.1), single.width);
  // One axis: |L ∩ B|_r = |L|_r = 1, so only sigma = 0 passes with C = 1; at sigma > 0 the ratio is r^-sigma.
  EXPECT_TRUE(verify_tube_set(single, 0.0, 1.0).pass);
  const TubeSetCheck one = verify_tube_set(single, 1.5, 1.0);
  EXPECT_FALSE(one.pass);
  EXPECT_NEAR(one.worst_ratio, std::pow(single.width, -1.5), 1e-6);

  const TubeFamily p = pencil({0.3, 0.3}, 0x1.0p-7);
  EXPECT_TRUE(verify_tube_set(p, 1.0, 8.0).pass);
  const TubeSetCheck bad = verify_tube_set(p, 1.5, 1.0);
  EXPECT_FALSE(bad.pass);
  EXPECT_LT(bad.worst_rho, 0.25);
}

TEST(LineCovering, CountsCells) {
  const std::vector<Line> lines{Line::from_angle_offset(0.01, 0.01), Line::from_angle_offset(0.02, 0.02),
                                Line::from_angle_offset(0.5, 0.01)};
  EXPECT_EQ(line_covering_number(lines, 0.1), 2u);
  EXPECT_EQ(line_covering_number(lines, 0.001), 3u);
}

TEST(FuRen, ColumnInstanceIsConsistent) {
  const FuRenInstance inst = fu_ren_column_instance(0x1.0p-6, 0.3, 0.05);
  for (const auto& [i, fam] : inst.tube_map)
    for (const Tube& t : fam.tubes) EXPECT_TRUE(t.contains(inst.p_x[i]));
  const FuRenAudit a = fu_ren_audit(inst);
  EXPECT_TRUE(a.hypotheses_met) << (a.failures.empty() ? "" : a.failures.front());
  EXPECT_TRUE(a.consistent);
  EXPECT_NEAR(a.implied_bound, 1.0 + 1.0 - 1.0 - 0.05, 1e-12);
}

TEST(FuRen, HypothesesFailBelowTheImpliedBound) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const FuRenAudit a = fu_ren_audit(fu_ren_random_instance({0x1.0p-6, 1.0, 1.5, 0.3, 0.05, 0.1}, seed));
    EXPECT_NEAR(a.implied_bound, 1.4, 1e-12);
    EXPECT_FALSE(a.hypotheses_met);
    EXPECT_FALSE(a.failures.empty());
    EXPECT_TRUE(a.consistent);
  }
}

TEST(FuRen, EmptyTubeMapIsRejected) {
  FuRenInstance inst = fu_ren_column_instance(0x1.0p-4, 0.3, 0.05);
  inst.tube_map.clear();
  const FuRenAudit a = fu_ren_audit(inst);
  EXPECT_FALSE(a.hypotheses_met);
  EXPECT_TRUE(a.consistent);
}
