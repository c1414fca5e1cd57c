#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "gmtlab/covering.hpp"
#include "gmtlab/generators.hpp"
#include "gmtlab/incidence.hpp"
#include "gmtlab/measures.hpp"
#include "test_support.hpp"

using namespace gmt;
using gmt::test::kind_of;

namespace {

const double kCantorDim = std::log(2.0) / std::log(3.0);

DiscreteSet single_point() { return DiscreteSet({{0.3, 0.4}}, 0x1.0p-8, "single"); }

}  // namespace

TEST(GenIfs, CardinalityExamples) {
  EXPECT_EQ(gen_ifs(cantor3(), std::pow(3.0, -6)).size(), 64u);
  EXPECT_EQ(gen_ifs(four_corner(), std::pow(4.0, -4)).size(), 256u);
  EXPECT_EQ(kind_of([] { gen_ifs(IfsSystem{}, 0.01); }), ErrorKind::PreconditionViolated);
}

TEST(GenIfs, SimilarityDimension) {
  EXPECT_NEAR(similarity_dimension(cantor3()), kCantorDim, 1e-9);
  EXPECT_NEAR(similarity_dimension(four_corner()), 1.0, 1e-9);
}

TEST(GenRandom, Examples) {
  EXPECT_EQ(gen_random_delta_s_set(2.0, 0x1.0p-5, 1).size(), 1024u);
  EXPECT_EQ(gen_random_delta_s_set(0.0, 0x1.0p-5, 1).size(), 1u);
  const DiscreteSet p = gen_random_delta_s_set(1.0, 0x1.0p-8, 7);
  EXPECT_GE(p.size(), 64u);
  EXPECT_LE(p.size(), 1024u);
  EXPECT_TRUE(verify_delta_s_set(p, 1.0, 16.0).pass);
}

TEST(GenRandom, PassesOwnCheckForSeveralSeeds) {
  for (double s : {0.3, 0.5, 1.0, 1.5})
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
      EXPECT_TRUE(verify_delta_s_set(gen_random_delta_s_set(s, 0x1.0p-8, seed), s, 16.0).pass)
          << "s=" << s << " seed=" << seed;
}

TEST(GenIfs, PassesOwnCheck) {
  EXPECT_TRUE(verify_delta_s_set(gen_ifs(cantor3(), std::pow(3.0, -7)), kCantorDim, 64.0).pass);
  EXPECT_TRUE(verify_delta_s_set(gen_ifs(four_corner(), std::pow(4.0, -5)), 1.0, 64.0).pass);
}

TEST(GenPlanted, Examples) {
  const DiscreteSet line = gen_planted_collinear(10, 0, 1);
  EXPECT_EQ(line.size(), 10u);
  EXPECT_TRUE(all_collinear(line.points()));
  const DiscreteSet two = gen_planted_collinear(10, 8, 1);
  EXPECT_EQ(two.size(), 10u);
  std::size_t on = 0;
  for (const Point& p : two.points()) on += p.y == (p.x + 1.0) / 2.0;
  EXPECT_EQ(on, 2u);
}

TEST(GenPlanted, RichLineMaximumByBruteForce) {
  const DiscreteSet p = gen_planted_collinear(100, 50, 1);
  std::vector<std::pair<std::int64_t, std::int64_t>> ij;
  for (const Point& q : p.points())
    ij.push_back({std::llround(std::ldexp(q.x, 20)), std::llround(std::ldexp(q.y, 20))});
  EXPECT_EQ(gmt::test::brute_max_collinear(ij), 50u);
}

TEST(GenGrid, Examples) {
  EXPECT_EQ(gen_grid(2).size(), 4u);
  EXPECT_EQ(gen_grid(3).size(), 9u);
  EXPECT_EQ(gmt::test::brute_line_count(gmt::test::grid_ij(3)), 20u);
  EXPECT_EQ(kind_of([] { gen_grid(1); }), ErrorKind::PreconditionViolated);
}

TEST(Generators, DeterministicAndSeparated) {
  auto same = [](const DiscreteSet& a, const DiscreteSet& b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
    EXPECT_EQ(a.delta(), b.delta());
  };
  same(gen_random_delta_s_set(0.7, 0x1.0p-9, 11), gen_random_delta_s_set(0.7, 0x1.0p-9, 11));
  same(gen_planted_collinear(64, 16, 3), gen_planted_collinear(64, 16, 3));
  same(gen_uniform(300, 5), gen_uniform(300, 5));
  for (const DiscreteSet& s : {gen_random_delta_s_set(1.2, 0x1.0p-9, 2), gen_uniform(500, 2),
                               gen_ifs(cantor3(), 1e-3), gen_circle(200, {0, 0}, 1.0)}) {
    EXPECT_GE(min_separation(s.points()), s.delta() / 2 * (1 - 1e-12));
    for (const Point& p : s.points()) EXPECT_LE(norm(p), 2.0);
  }
}

TEST(DiscreteSet, RejectsInvalidInput) {
  EXPECT_EQ(kind_of([] { DiscreteSet({{0, 0}, {0.001, 0}}, 0.1); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { DiscreteSet({{3, 0}}, 0.1); }), ErrorKind::PreconditionViolated);
}

TEST(CoveringNumber, Examples) {
  EXPECT_EQ(covering_number(gen_segment(256), 3), 8u);
  for (int level : {0, 5, 20}) EXPECT_EQ(covering_number(single_point(), level), 1u);
}

// Independent enumeration: level-7 Cantor left endpoints a/3^7 with ternary digits in {0, 2},
// assigned to level-6 cells by integer floor division.
TEST(CoveringNumber, CantorAgainstEnumeration) {
  std::set<std::int64_t> cells;
  for (int mask = 0; mask < 128; ++mask) {
    std::int64_t a = 0;
    for (int d = 0; d < 7; ++d) a = 3 * a + ((mask >> (6 - d)) & 1) * 2;
    cells.insert(a * 64 / 2187);
  }
  EXPECT_EQ(cells.size(), 28u);
  EXPECT_EQ(covering_number(gen_ifs(cantor3(), std::pow(3.0, -7)), 6), cells.size());
}

TEST(CoveringNumber, MonotoneAndSubadditive) {
  const DiscreteSet a = gen_random_delta_s_set(1.0, 0x1.0p-10, 4);
  const DiscreteSet b = gen_ifs(four_corner(), std::pow(4.0, -5));
  std::vector<Point> both(a.points().begin(), a.points().end());
  both.insert(both.end(), b.points().begin(), b.points().end());
  for (int level = 0; level < 12; ++level) {
    EXPECT_LE(covering_number(a, level), covering_number(a, level + 1));
    EXPECT_LE(covering_number(both, level), covering_number(a, level) + covering_number(b, level));
  }
}

TEST(BoxDimension, Examples) {
  EXPECT_NEAR(box_dimension(gen_dyadic_grid(8), 2, 7).slope, 2.0, 0.01);
  EXPECT_NEAR(box_dimension(gen_segment(1024), 2, 8).slope, 1.0, 0.02);
  EXPECT_NEAR(box_dimension(gen_ifs(cantor3(), std::pow(3.0, -8)), 2, 10).slope, kCantorDim, 0.05);
  EXPECT_EQ(kind_of([] { box_dimension(gen_segment(64), 2, 4); }), ErrorKind::ScaleRangeTooNarrow);
}

TEST(HausdorffContent, Examples) {
  const double seg = hausdorff_content(gen_segment(1024), 1.0);
  EXPECT_GE(seg, 0.5);
  EXPECT_LE(seg, 1.5);
  EXPECT_LE(hausdorff_content(DiscreteSet({{0.3, 0.4}}, 0x1.0p-20), 1.0), 0x1.0p-18);
  const double sq = hausdorff_content(gen_dyadic_grid(8), 2.0);
  EXPECT_GE(sq, 0.5);
  EXPECT_LE(sq, 2.0);
}

TEST(VerifyDeltaSet, Examples) {
  const DeltaSetCheck one = verify_delta_s_set(single_point(), 0.0, 1.0);
  EXPECT_TRUE(one.pass);
  EXPECT_LE(one.worst_ratio, 1.0);
  const DiscreteSet seg = gen_segment(256);
  EXPECT_TRUE(verify_delta_s_set(seg, 1.0, 4.0).pass);
  const DeltaSetCheck bad = verify_delta_s_set(seg, 2.0, 1.0);
  EXPECT_FALSE(bad.pass);
  EXPECT_EQ(bad.witness_level, dyadic_level(seg.delta()));
}

TEST(FrostmanExtract, Examples) {
  const FrostmanExtraction g = frostman_extract(gen_dyadic_grid(8), 1.0, 0x1.0p-6);
  EXPECT_GE(g.set.size(), 4u);
  EXPECT_GE(static_cast<double>(g.set.size()), kFrostmanCardinalityFactor * g.content * 64.0);

  const FrostmanExtraction one = frostman_extract(single_point(), 1.0, 0x1.0p-4);
  ASSERT_EQ(one.set.size(), 1u);
  EXPECT_EQ(one.set[0], single_point()[0]);

  const FrostmanExtraction seg = frostman_extract(gen_segment(256), 1.0, 0x1.0p-4);
  EXPECT_GE(static_cast<double>(seg.set.size()), kFrostmanCardinalityFactor * 16.0);
  EXPECT_LE(seg.set.size(), 32u);
  EXPECT_TRUE(verify_delta_s_set(seg.set, 1.0, 16.0, 0x1.0p-4).pass);
}

TEST(FrostmanExtract, SubsetWithDistinctSquares) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const DiscreteSet a = gen_random_delta_s_set(1.3, 0x1.0p-10, seed);
    const FrostmanExtraction e = frostman_extract(a, 1.0, 0x1.0p-6);
    std::set<Point> in(a.points().begin(), a.points().end());
    for (const Point& p : e.set.points()) EXPECT_TRUE(in.count(p));
    EXPECT_EQ(covering_number(e.set, e.level), e.set.size());
  }
}

// A cell of side 2^-l lies in the ball of radius 2^{1-l} around any of its points, so
// N_l >= 2^{s l} / (C 2^s) >= 2^{s l} / (4 C) whenever the fit covers radius 2^{1-l}.
TEST(MassDistribution, CoveringDominatesFrostmanBound) {
  const std::vector<DiscreteSet> corpus = {gen_random_delta_s_set(1.0, 0x1.0p-10, 1),
                                           gen_ifs(four_corner(), std::pow(4.0, -5)),
                                           gen_dyadic_grid(8), gen_segment(1024)};
  for (const DiscreteSet& set : corpus) {
    const auto [lo, hi] = default_levels(set.delta());
    const FrostmanFit fit = frostman_fit(WeightedMeasure::uniform(set), lo, hi);
    for (int l = lo + 1; l <= hi + 1; ++l) {
      const double bound = std::exp2(fit.exponent * l) / fit.constant / 4.0;
      EXPECT_GE(static_cast<double>(covering_number(set, l)), bound) << set.label() << " level " << l;
    }
  }
}

TEST(DyadicGrid, LevelsAndKeys) {
  EXPECT_EQ(dyadic_level(0x1.0p-8), 8);
  EXPECT_EQ(dyadic_level(0.3), 2);
  EXPECT_EQ(default_levels(0x1.0p-10), (std::pair<int, int>{2, 8}));
  const DyadicGrid g(3);
  const Point c = g.center_of(g.key({0.3, 0.7}));
  EXPECT_DOUBLE_EQ(c.x, 0.3125);
  EXPECT_DOUBLE_EQ(c.y, 0.6875);
}
