#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "fracdim/measure.hpp"
#include "test_support.hpp"

using namespace fracdim;
using fracdim::testing::kind_of;
using fracdim::testing::random_measure;

namespace {

DiscreteMeasure line(std::vector<double> xs, std::vector<double> ws) {
  return DiscreteMeasure(1, std::move(xs), std::move(ws));
}

// Optimal cost between two uniform measures with n atoms each: an extreme point
// of the transport polytope is a permutation, so enumerate them.
double assignment_oracle(const PointSet& a, const PointSet& b) {
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) cost += euclidean_distance(a[i], b[perm[i]]);
    best = std::min(best, cost / static_cast<double>(perm.size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double integrate(const DiscreteMeasure& mu, auto&& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) acc += mu.weight(i) * f(mu[i]);
  return acc;
}

}  // namespace

TEST(DiscreteMeasure, ValidationAndNormalization) {
  EXPECT_EQ(kind_of([] { line({0.0}, {0.0}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { line({0.0}, {-1.0}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { line({0.0, 1.0}, {1.0}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { line({std::nan("")}, {1.0}); }), ErrorKind::invalid_input);
  EXPECT_TRUE(line({0.0, 1.0}, {0.25, 0.75}).is_normalized());
  EXPECT_FALSE(line({0.0, 1.0}, {0.5, 0.75}).is_normalized());
  EXPECT_EQ(kind_of([] { DiracCombination(line({0.0}, {2.0})); }), ErrorKind::invalid_input);
}

TEST(DiscreteMeasure, MergesCoincidentAtomsAndSorts) {
  const auto mu = line({1.0, 0.0, 1.0 + 1e-14, 0.5}, {0.25, 0.25, 0.25, 0.25});
  ASSERT_EQ(mu.size(), 3u);
  EXPECT_EQ(mu[0][0], 0.0);
  EXPECT_EQ(mu[1][0], 0.5);
  EXPECT_DOUBLE_EQ(mu.weight(2), 0.5);
  const DiscreteMeasure plane(2, {0.0, 1.0, 0.0, 1.0 + 1e-13, 0.0, 0.5}, {0.2, 0.3, 0.5});
  ASSERT_EQ(plane.size(), 2u);
  EXPECT_DOUBLE_EQ(plane.weight(1), 0.5);
  EXPECT_FALSE(line({0.0, 1e-9}, {0.5, 0.5}).size() == 1u);
}

TEST(Convolution, Examples) {
  const auto a = line({0.0, 1.0}, {0.5, 0.5});
  const auto aa = convolve(a, a);
  EXPECT_TRUE(aa.approx_equal(line({0.0, 1.0, 2.0}, {0.25, 0.5, 0.25}), 1e-15));
  const auto shifted = convolve(a, DiscreteMeasure::dirac({3.0}));
  EXPECT_TRUE(shifted.approx_equal(line({3.0, 4.0}, {0.5, 0.5}), 1e-15));
  EXPECT_EQ(kind_of([&] { convolve(a, a, 3); }), ErrorKind::resource);
  EXPECT_EQ(kind_of([&] { convolve(a, line({0.0}, {2.0})); }), ErrorKind::invalid_input);
}

TEST(Convolution, CommutativeAndAssociative) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 1 + trial % 2;
    const auto a = random_measure(rng, 1 + trial % 5, dim);
    const auto b = random_measure(rng, 1 + trial % 4, dim);
    const auto c = random_measure(rng, 2, dim);
    EXPECT_TRUE(convolve(a, b).approx_equal(convolve(b, a), 1e-12));
    EXPECT_TRUE(convolve(convolve(a, b), c).approx_equal(convolve(a, convolve(b, c)), 1e-12));
    EXPECT_NEAR(convolve(a, b).total_mass(), 1.0, 1e-12);
  }
}

TEST(Translate, SignConventionMatchesConvolutionWithNegatedDirac) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mu = random_measure(rng, 5, 2);
    const Point x{uniform01(rng) - 0.5, uniform01(rng) - 0.5};
    const auto via_dirac = convolve(mu, DiscreteMeasure::dirac({-x[0], -x[1]}));
    EXPECT_TRUE(translate(mu, x).approx_equal(via_dirac, 1e-12));
  }
  // (mu + x)(E) = mu(E + x): the atom at 1 moves to 1 - 2
  EXPECT_EQ(translate(DiscreteMeasure::dirac({1.0}), Point{2.0})[0][0], -1.0);
}

TEST(ScaleMeasure, AtomsDivideByBeta) {
  const auto mu = line({0.0, 3.0}, {0.5, 0.5});
  EXPECT_TRUE(scale_measure(mu, 3.0).approx_equal(line({0.0, 1.0}, {0.5, 0.5}), 1e-15));
  EXPECT_EQ(kind_of([&] { scale_measure(mu, 0.0); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([&] { scale_measure(mu, -1.0); }), ErrorKind::invalid_input);
}

TEST(Mixture, WeightsCombine) {
  const auto m = mixture({{0.25, DiscreteMeasure::dirac({0.0})}, {0.75, line({0.0, 1.0}, {0.5, 0.5})}});
  EXPECT_TRUE(m.approx_equal(line({0.0, 1.0}, {0.625, 0.375}), 1e-15));
  EXPECT_TRUE(m.is_normalized());
  EXPECT_FALSE(mixture({{1.0, DiscreteMeasure::dirac({0.0})}, {1.0, DiscreteMeasure::dirac({1.0})}})
                   .is_normalized());
  EXPECT_EQ(kind_of([] { mixture({}); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { mixture({{0.0, DiscreteMeasure::dirac({0.0})}}); }), ErrorKind::invalid_input);
}

TEST(Kantorovich, Examples) {
  const auto d0 = DiscreteMeasure::dirac({0.0});
  EXPECT_DOUBLE_EQ(kantorovich_distance(d0, DiscreteMeasure::dirac({0.7})), 0.7);
  EXPECT_DOUBLE_EQ(kantorovich_distance(d0, line({0.0, 1.0}, {0.5, 0.5})), 0.5);
  EXPECT_DOUBLE_EQ(kantorovich_distance(line({0.0, 2.0}, {0.5, 0.5}), DiscreteMeasure::dirac({1.0})), 1.0);
  EXPECT_DOUBLE_EQ(kantorovich_distance(DiscreteMeasure::dirac({0.0, 0.0}), DiscreteMeasure::dirac({3.0, 4.0})),
                   5.0);
  EXPECT_EQ(kind_of([&] { kantorovich_distance(d0, DiscreteMeasure::dirac({0.0, 0.0})); }),
            ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([&] { kantorovich_distance(d0, line({0.0}, {0.5})); }), ErrorKind::invalid_input);
}

TEST(Kantorovich, PlaneSolverMatchesAssignmentOracle) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<double> ca(2 * n), cb(2 * n);
    for (double& c : ca) c = uniform01(rng);
    for (double& c : cb) c = uniform01(rng);
    const PointSet a(2, ca), b(2, cb);
    const double oracle = assignment_oracle(a, b);
    EXPECT_NEAR(kantorovich_distance(DiscreteMeasure::uniform_on(a), DiscreteMeasure::uniform_on(b)), oracle, 1e-12);
  }
}

TEST(Kantorovich, PlaneSolverMatchesLineFormulaOnAxis) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mu = random_measure(rng, 1 + trial % 9, 1);
    const auto nu = random_measure(rng, 1 + trial % 7, 1);
    auto lift = [](const DiscreteMeasure& m) {
      std::vector<double> c;
      for (std::size_t i = 0; i < m.size(); ++i) c.insert(c.end(), {m[i][0], 0.25});
      return DiscreteMeasure(2, c, {m.weights().begin(), m.weights().end()});
    };
    EXPECT_NEAR(kantorovich_distance(lift(mu), lift(nu)), kantorovich_distance(mu, nu), 1e-12);
  }
}

TEST(Kantorovich, MetricAxiomsAndLipschitzDuality) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t dim = 1 + trial % 2;
    const auto a = random_measure(rng, 1 + trial % 6, dim);
    const auto b = random_measure(rng, 1 + trial % 5, dim);
    const auto c = random_measure(rng, 3, dim);
    const double ab = kantorovich_distance(a, b);
    EXPECT_NEAR(kantorovich_distance(a, a), 0.0, 1e-15);
    EXPECT_NEAR(ab, kantorovich_distance(b, a), 1e-12);
    EXPECT_LE(ab, kantorovich_distance(a, c) + kantorovich_distance(c, b) + 1e-12);
    // every 1-Lipschitz test function is a lower bound
    for (int k = 0; k < 5; ++k) {
      Point z(dim);
      for (double& v : z) v = uniform01(rng);
      auto f = [&](std::span<const double> x) { return euclidean_distance(x, z); };
      EXPECT_LE(std::abs(integrate(a, f) - integrate(b, f)), ab + 1e-12);
    }
  }
}

TEST(Kantorovich, TranslationAndScaling) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = 1 + trial % 2;
    const auto mu = random_measure(rng, 4, dim);
    const auto nu = random_measure(rng, 3, dim);
    Point x(dim);
    for (double& v : x) v = uniform01(rng) - 0.5;
    double norm = 0.0;
    for (double v : x) norm += v * v;
    EXPECT_NEAR(kantorovich_distance(mu, translate(mu, x)), std::sqrt(norm), 1e-12);
    const double beta = 0.25 + 4 * uniform01(rng);
    EXPECT_NEAR(kantorovich_distance(scale_measure(mu, beta), scale_measure(nu, beta)),
                kantorovich_distance(mu, nu) / beta, 1e-12);
  }
}

TEST(Kantorovich, PlaneCapRaisesResource) {
  std::mt19937_64 rng(1);
  const auto mu = random_measure(rng, 300, 2);
  const auto nu = random_measure(rng, 300, 2);
  EXPECT_EQ(kind_of([&] { kantorovich_distance(mu, nu); }), ErrorKind::resource);
}

TEST(BallMass, ClosedBall) {
  const auto mu = line({0.0, 0.5, 1.0}, {0.25, 0.25, 0.5});
  const double x[] = {0.0};
  EXPECT_DOUBLE_EQ(ball_mass(mu, x, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(ball_mass(mu, x, 0.49), 0.25);
  EXPECT_DOUBLE_EQ(ball_mass(mu, x, 2.0), 1.0);
}
