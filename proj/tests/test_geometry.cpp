#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fracdim/geometry.hpp"

using namespace fracdim;

namespace {

// Minimal number of sets of diameter <= r covering the points: DP over
// subsets, each step removing the lowest uncovered point together with a
// feasible group containing it.
std::size_t brute_force_cover(const PointSet& e, double r) {
  const std::size_t n = e.size();
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<char> feasible(full + 1, 1);
  for (std::size_t mask = 1; mask <= full; ++mask)
    for (std::size_t i = 0; i < n && feasible[mask]; ++i)
      for (std::size_t j = i + 1; j < n && feasible[mask]; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && euclidean_distance(e[i], e[j]) > r + kDistanceTol)
          feasible[mask] = 0;
  std::vector<std::size_t> best(full + 1, std::numeric_limits<std::size_t>::max());
  best[0] = 0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    std::size_t low = 0;
    while (!(mask >> low & 1)) ++low;
    for (std::size_t sub = mask; sub; sub = (sub - 1) & mask)
      if ((sub >> low & 1) && feasible[sub] && best[mask ^ sub] != std::numeric_limits<std::size_t>::max())
        best[mask] = std::min(best[mask], best[mask ^ sub] + 1);
  }
  return best[full];
}

PointSet random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::vector<double> c(n * dim);
  for (double& x : c) x = uniform01(rng);
  return PointSet(dim, c);
}

}  // namespace

TEST(PointSet, RejectsEmptyNonFiniteAndRagged) {
  EXPECT_THROW(PointSet(1, {}), Error);
  EXPECT_THROW(PointSet(1, {0.0, std::nan("")}), Error);
  EXPECT_THROW(PointSet(2, {0.0, 1.0, 2.0}), Error);
  EXPECT_THROW(PointSet(1, {std::numeric_limits<double>::infinity()}), Error);
  EXPECT_THROW(PointSet::from_rows({{0.0, 1.0}, {2.0}}), Error);
  try {
    PointSet(1, {});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
}

TEST(PointSet, LexicographicMinIsFirstOnTies) {
  const auto e = PointSet::from_rows({{1.0, 0.0}, {0.0, 2.0}, {0.0, 1.0}, {0.0, 1.0}});
  EXPECT_EQ(e.lexicographic_min(), 2u);
}

TEST(Hausdorff, Examples) {
  const auto a = PointSet::on_line({0.0, 1.0, 2.0});
  EXPECT_EQ(hausdorff_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(hausdorff_distance(PointSet::on_line({0.0}), PointSet::on_line({3.0})), 3.0);
  EXPECT_DOUBLE_EQ(hausdorff_distance(a, PointSet::on_line({0.0, 2.0})), 1.0);
  EXPECT_THROW(hausdorff_distance(a, PointSet(2, {0.0, 0.0})), Error);
}

TEST(Hausdorff, MetricAxiomsOnRandomSets) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = trial % 2 + 1;
    const auto a = random_points(rng, 1 + trial % 7, dim);
    const auto b = random_points(rng, 1 + trial % 5, dim);
    const auto c = random_points(rng, 2 + trial % 3, dim);
    const double ab = hausdorff_distance(a, b);
    EXPECT_NEAR(ab, hausdorff_distance(b, a), 1e-12);
    EXPECT_LE(ab, hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-12);
    // duplicates and reordering leave the set, hence the distance, unchanged
    std::vector<double> dup(a.coords().begin(), a.coords().end());
    dup.insert(dup.end(), a.coords().begin(), a.coords().begin() + static_cast<std::ptrdiff_t>(dim));
    std::reverse(dup.begin(), dup.end());
    if (dim == 1) {
      EXPECT_EQ(hausdorff_distance(a, PointSet(dim, dup)), 0.0);
    }
  }
}

TEST(BallRestrict, Examples) {
  const auto e = PointSet::on_line({0.0, 0.5, 1.0});
  const double x0[] = {0.0};
  const auto ball = ball_restrict(e, x0, 0.6);
  ASSERT_TRUE(ball.has_value());
  EXPECT_EQ(*ball, PointSet::on_line({0.0, 0.5}));
  const double x1[] = {0.5};
  EXPECT_EQ(*ball_restrict(e, x1, 10.0), e);
  const double mid[] = {0.5};
  EXPECT_FALSE(ball_restrict(PointSet::on_line({0.0, 1.0}), mid, 0.4).has_value());
}

TEST(BallRestrict, ClosedAndNested) {
  const auto e = PointSet::on_line({0.0, 0.25, 0.5});
  const double x[] = {0.0};
  EXPECT_EQ(ball_restrict(e, x, 0.25)->size(), 2u);  // boundary point included
  std::mt19937_64 rng(5);
  const auto f = random_points(rng, 30, 2);
  for (double r1 = 0.05; r1 < 1.0; r1 += 0.1) {
    const auto small = ball_restrict(f, f[0], r1);
    const auto big = ball_restrict(f, f[0], r1 + 0.07);
    ASSERT_TRUE(small && big);
    EXPECT_EQ(hausdorff_distance(*small, *small), 0.0);
    for (std::size_t i = 0; i < small->size(); ++i) {
      bool found = false;
      for (std::size_t j = 0; j < big->size() && !found; ++j)
        found = euclidean_distance((*small)[i], (*big)[j]) == 0.0;
      EXPECT_TRUE(found);
    }
  }
}

TEST(CoveringNumber, Examples) {
  EXPECT_EQ(covering_number(PointSet::on_line({0.3}), 1e-6), 1u);
  EXPECT_EQ(covering_number(PointSet(2, {0.3, 0.1}), 1e-6), 1u);
  const auto two = PointSet::on_line({0.0, 1.0});
  EXPECT_EQ(covering_number(two, 0.4), 2u);
  EXPECT_EQ(covering_number(two, 1.5), 1u);
  EXPECT_THROW(covering_number(two, 0.0), Error);
}

TEST(CoveringNumber, LineSweepEqualsExhaustiveMinimum) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const auto e = random_points(rng, 1 + trial % 8, 1);
    for (double r = 0.02; r < 1.2; r *= 1.35) EXPECT_EQ(covering_number(e, r), brute_force_cover(e, r));
  }
}

TEST(CoveringNumber, PlaneNetIsWithinConstantOfMinimum) {
  // net balls of radius r/2 are themselves a cover, so greedy >= optimum; a set
  // of diameter <= r lies in a ball of radius r / sqrt(3) (Jung), which holds
  // at most 10 points that are r/2 apart
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto e = random_points(rng, 2 + trial % 7, 2);
    for (double r = 0.05; r < 1.6; r *= 1.5) {
      const auto greedy = covering_number(e, r);
      const auto optimum = brute_force_cover(e, r);
      EXPECT_GE(greedy, optimum);
      EXPECT_LE(greedy, optimum * 10);
    }
  }
}

TEST(CoveringNumber, MonotoneInRadiusAndInclusion) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto e = random_points(rng, 40, 1);
    std::vector<double> sub(e.coords().begin(), e.coords().begin() + 25);
    const auto f = PointSet::on_line(sub);
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (double r = 0.001; r < 2.0; r *= 1.3) {
      const auto n = covering_number(e, r);
      EXPECT_LE(n, prev);
      EXPECT_LE(covering_number(f, r), n);
      prev = n;
    }
  }
}

TEST(CoveringNumber, IntervalGridCountsScaleLikeRatio) {
  std::vector<double> xs(1024);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i) / 1023.0;
  const auto e = PointSet::on_line(xs);
  for (double r : {1.0 / 64, 1.0 / 16, 1.0 / 4}) {
    const double n = static_cast<double>(covering_number(e, r));
    EXPECT_NEAR(n, 1.0 / r, 1.0 / r * 0.05 + 1);
  }
}

TEST(ScaleGrid, GeometricWithExactEndpoints) {
  const ScaleGrid g{std::pow(3.0, -9), std::pow(3.0, -2), 8, 8.0};
  const auto s = g.scales();
  ASSERT_EQ(s.size(), 8u);
  EXPECT_EQ(s.front(), g.r_min);
  EXPECT_EQ(s.back(), g.r_max);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_NEAR(s[i] / s[i - 1], 3.0, 1e-12);
  for (const auto& [i, j] : g.admissible_pairs(s)) EXPECT_GE(s[j] / s[i], 8.0 * (1 - 1e-12));
  EXPECT_EQ(g.admissible_pairs(s).size(), 21u);  // j - i >= 2 among 8 levels
}

TEST(ScaleGrid, Validation) {
  EXPECT_THROW((ScaleGrid{0.0, 1.0, 3, 8.0}.validate()), Error);
  EXPECT_THROW((ScaleGrid{1.0, 1.0, 3, 8.0}.validate()), Error);
  EXPECT_THROW((ScaleGrid{0.1, 1.0, 1, 8.0}.validate()), Error);
  EXPECT_THROW((ScaleGrid{0.1, 1.0, 3, 1.0}.validate()), Error);
  const auto g = ScaleGrid{0.1, 1.0, 3, 8.0}.scaled(2.0);
  EXPECT_DOUBLE_EQ(g.r_min, 0.2);
  EXPECT_DOUBLE_EQ(g.r_max, 2.0);
}
