#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fracdim/quantization.hpp"
#include "test_support.hpp"

using namespace fracdim;
using fracdim::testing::kind_of;
using fracdim::testing::random_measure;

namespace {

const double kThird = 1.0 / 3.0;
const double kCantor = std::log(2.0) / std::log(3.0);

DiscreteMeasure line(std::vector<double> xs, std::vector<double> ws) {
  return DiscreteMeasure(1, std::move(xs), std::move(ws));
}

// min_c sum w |x - c|^r for one group, by a method unrelated to the engine:
// r = 1 checks every atom (a weighted median is an atom), r = 2 is the mean,
// otherwise bisect the derivative sum w sign(c - x) |c - x|^{r-1}.
double group_cost(const std::vector<double>& xs, const std::vector<double>& ws, double r) {
  auto cost = [&](double c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) acc += ws[i] * std::pow(std::abs(xs[i] - c), r);
    return acc;
  };
  if (r == 1.0) {
    double best = std::numeric_limits<double>::infinity();
    for (double x : xs) best = std::min(best, cost(x));
    return best;
  }
  if (r == 2.0) {
    double sw = 0.0, sx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) sw += ws[i], sx += ws[i] * xs[i];
    return cost(sx / sw);
  }
  double lo = *std::min_element(xs.begin(), xs.end());
  double hi = *std::max_element(xs.begin(), xs.end());
  for (int it = 0; it < 200; ++it) {
    const double c = 0.5 * (lo + hi);
    double slope = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      slope += ws[i] * std::copysign(std::pow(std::abs(c - xs[i]), r - 1), c - xs[i]);
    (slope > 0 ? hi : lo) = c;
  }
  return cost(0.5 * (lo + hi));
}

// V_{n,r} straight from the definition: every assignment of atoms to at most
// n groups, each group served by its optimal center.
double exhaustive_v(const DiscreteMeasure& mu, int n, double r) {
  const std::size_t s = mu.size();
  std::vector<int> label(s, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    double total = 0.0;
    for (int g = 0; g < n; ++g) {
      std::vector<double> xs, ws;
      for (std::size_t i = 0; i < s; ++i)
        if (label[i] == g) xs.push_back(mu[i][0]), ws.push_back(mu.weight(i));
      if (!xs.empty()) total += group_cost(xs, ws, r);
    }
    best = std::min(best, total);
    std::size_t k = 0;
    while (k < s && ++label[k] == n) label[k++] = 0;
    if (k == s) break;
  }
  return best;
}

// Same minimum restricted to contiguous groups of the sorted support.
double contiguous_v(const DiscreteMeasure& mu, int n, double r) {
  const std::size_t s = mu.size();
  double best = std::numeric_limits<double>::infinity();
  // bit i set: a cut between atoms i and i + 1
  for (std::size_t cuts = 0; cuts < (std::size_t{1} << (s - 1)); ++cuts) {
    if (std::popcount(cuts) > n - 1) continue;
    double total = 0.0;
    std::vector<double> xs, ws;
    for (std::size_t i = 0; i < s; ++i) {
      xs.push_back(mu[i][0]);
      ws.push_back(mu.weight(i));
      if (i + 1 == s || (cuts >> i & 1)) {
        total += group_cost(xs, ws, r);
        xs.clear();
        ws.clear();
      }
    }
    best = std::min(best, total);
  }
  return best;
}

DiscreteMeasure random_line(std::mt19937_64& rng, std::size_t n) { return random_measure(rng, n, 1); }

}  // namespace

TEST(QuantExact1d, Examples) {
  const auto two = line({0.0, 1.0}, {0.5, 0.5});
  const auto q = quant_error_exact_1d(two, 1, 2.0);
  EXPECT_DOUBLE_EQ(q.error, 0.25);
  EXPECT_DOUBLE_EQ(q.centers[0][0], 0.5);
  EXPECT_TRUE(q.exact);
  const auto flat = quant_error_exact_1d(two, 1, 1.0);
  EXPECT_DOUBLE_EQ(flat.error, 0.5);
  EXPECT_DOUBLE_EQ(flat.centers[0][0], 0.5);
  const auto three = line({0.0, 0.4, 1.0}, {0.2, 0.3, 0.5});
  for (double r : {1.0, 2.0, 3.7}) {
    for (int n : {3, 4, 10}) {
      const auto full = quant_error_exact_1d(three, n, r);
      EXPECT_EQ(full.error, 0.0);
      EXPECT_EQ(full.centers, three.support());
    }
  }
}

TEST(QuantExact1d, Errors) {
  const auto two = line({0.0, 1.0}, {0.5, 0.5});
  EXPECT_EQ(kind_of([&] { quant_error_exact_1d(two, 1, 0.5); }), ErrorKind::unsupported_order);
  EXPECT_EQ(kind_of([&] { quant_error_exact_1d(two, 0, 2.0); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([&] { quant_error_exact_1d(DiscreteMeasure::dirac({0.0, 0.0}), 1, 2.0); }),
            ErrorKind::unsupported_order);
}

TEST(QuantExact1d, ErrorRecomputesFromCenters) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mu = random_line(rng, 3 + trial % 20);
    const double r = 1.0 + trial % 3;
    const auto q = quant_error_exact_1d(mu, 1 + trial % 5, r);
    EXPECT_NEAR(q.error, quantization_error(mu, q.centers, r), 1e-12);
    EXPECT_LE(q.centers.size(), static_cast<std::size_t>(1 + trial % 5));
  }
}

TEST(QuantExact1d, MatchesDefinitionOnSmallSupports) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 30; ++trial) {
    const auto mu = random_line(rng, 2 + trial % 6);
    for (double r : {1.0, 2.0, 3.0})
      for (int n = 1; n <= 3; ++n)
        EXPECT_NEAR(quant_error_exact_1d(mu, n, r).error, exhaustive_v(mu, n, r), 1e-12)
            << "trial " << trial << " r " << r << " n " << n;
  }
}

TEST(QuantExact1d, MatchesContiguousPartitionOracle) {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mu = random_line(rng, 4 + trial % 9);
    for (double r : {1.0, 2.0, 3.0})
      for (int n = 1; n <= 4; ++n)
        EXPECT_NEAR(quant_error_exact_1d(mu, n, r).error, contiguous_v(mu, n, r), 1e-12);
  }
}

TEST(QuantExact1d, FractionalOrderAgainstOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const auto mu = random_line(rng, 3 + trial % 6);
    for (double r : {1.5, 2.5})
      for (int n = 1; n <= 3; ++n) EXPECT_NEAR(quant_error_exact_1d(mu, n, r).error, contiguous_v(mu, n, r), 1e-12);
  }
}

TEST(QuantExact1d, StructuralProperties) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto mu = random_line(rng, 2 + trial % 10);
    const auto nu = random_line(rng, 2 + trial % 7);
    const double r = 1.0 + trial % 3;
    const int n = 1 + trial % 6;
    const Point x{uniform01(rng) * 10 - 5};
    const double v = quant_error_exact_1d(mu, n, r).error;
    EXPECT_NEAR(quant_error_exact_1d(convolve(mu, DiscreteMeasure::dirac({x[0]})), n, r).error, v, 1e-12);
    EXPECT_NEAR(quant_error_exact_1d(translate(mu, x), n, r).error, v, 1e-12);
    // sums of finite measures
    const auto sum = mixture({{1.0, mu}, {1.0, nu}});
    const double vn = quant_error_exact_1d(nu, n, r).error;
    EXPECT_GE(quant_error_exact_1d(sum, n, r).error, v + vn - 1e-12);
    EXPECT_LE(quant_error_exact_1d(sum, 2 * n, r).error, v + vn + 1e-12);
    // beta^r scaling of the error
    const double beta = 0.5 + uniform01(rng);
    EXPECT_NEAR(quant_error_exact_1d(scale_measure(mu, beta), n, r).error, v / std::pow(beta, r),
                1e-9 * std::max(v, 1e-300));
  }
}

TEST(QuantExact1d, DominationBound) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto nu = random_line(rng, 3 + trial % 8);
    std::vector<double> w(nu.size());
    double total = 0.0;
    for (double& x : w) total += x = uniform01(rng) + 0.05;
    for (double& x : w) x /= total;
    const DiscreteMeasure mu(1, {nu.coords().begin(), nu.coords().end()}, w);
    double c = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) c = std::max(c, mu.weight(i) / nu.weight(i));
    for (int n = 1; n <= 4; ++n) {
      const double r = 1.0 + n % 3;
      EXPECT_LE(quant_error_exact_1d(mu, n, r).error, c * quant_error_exact_1d(nu, n, r).error + 1e-12);
    }
  }
}

TEST(QuantLloyd, NeverBelowExactAndTightForSquaredError) {
  std::mt19937_64 rng(64);
  for (std::size_t s : {8u, 16u, 32u, 64u}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto mu = random_line(rng, s);
      for (int n = 1; n <= 5; ++n) {
        const double exact = quant_error_exact_1d(mu, n, 2.0).error;
        const auto lloyd = quant_error_lloyd(mu, n, 2.0, 16, 0xF12AC7);
        EXPECT_GE(lloyd.error, exact - 1e-12);
        EXPECT_NEAR(lloyd.error, exact, 1e-9) << "s " << s << " n " << n;
        EXPECT_FALSE(lloyd.exact);
        EXPECT_NEAR(lloyd.error, quantization_error(mu, lloyd.centers, 2.0), 1e-12);
      }
    }
  }
}

TEST(QuantLloyd, OtherOrdersAndPlane) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto mu = random_line(rng, 12);
    for (double r : {0.5, 1.0, 3.0}) {
      const auto lloyd = quant_error_lloyd(mu, 3, r, 8, 1);
      if (r >= 1.0) {
        EXPECT_GE(lloyd.error, quant_error_exact_1d(mu, 3, r).error - 1e-12);
      }
      EXPECT_NEAR(lloyd.error, quantization_error(mu, lloyd.centers, r), 1e-12);
    }
    const auto plane = random_measure(rng, 20, 2);
    const auto q = quant_error_lloyd(plane, 4, 2.0, 8, 3);
    EXPECT_NEAR(q.error, quantization_error(plane, q.centers, 2.0), 1e-12);
    EXPECT_LE(quant_error_lloyd(plane, 8, 2.0, 8, 3).error, quant_error_lloyd(plane, 1, 2.0, 8, 3).error);
  }
}

TEST(QuantLloyd, DeterministicAndSaturates) {
  std::mt19937_64 rng(1);
  const auto mu = random_measure(rng, 30, 2);
  const auto a = quant_error_lloyd(mu, 5, 2.0, 4, 42);
  const auto b = quant_error_lloyd(mu, 5, 2.0, 4, 42);
  EXPECT_EQ(a.error, b.error);
  EXPECT_EQ(a.centers, b.centers);
  const auto all = quant_error_lloyd(mu, 30, 2.0, 4, 42);
  EXPECT_EQ(all.error, 0.0);
  EXPECT_EQ(all.centers, mu.support());
}

TEST(ErrorCurve, FiniteSupportReachesZero) {
  const auto mu = line({0.0, 0.3, 0.9, 2.0}, {0.1, 0.2, 0.3, 0.4});
  for (auto engine : {QuantEngine::exact1d, QuantEngine::lloyd}) {
    const auto curve = error_curve(mu, 8, 2.0, engine);
    ASSERT_EQ(curve.entries.size(), 8u);
    for (std::size_t k = 0; k < 8; ++k) {
      EXPECT_EQ(curve.entries[k].n, static_cast<int>(k + 1));
      if (k > 0) {
        EXPECT_LE(curve.entries[k].value, curve.entries[k - 1].value);
      }
      if (k >= 3) {
        EXPECT_EQ(curve.entries[k].value, 0.0);
      }
    }
    EXPECT_EQ(estimate_quant_dim(curve).value, 0.0);
  }
}

TEST(ErrorCurve, UniformGridAgainstCellMoments) {
  const auto mu = uniform_grid_measure(1024);
  const auto curve = error_curve(mu, 32, 2.0, QuantEngine::exact1d);
  for (const auto& e : curve.entries) {
    const double oracle = 1.0 / (12.0 * e.n * e.n);
    EXPECT_GE(e.value, oracle / 2);
    EXPECT_LE(e.value, oracle * 2);
    EXPECT_TRUE(e.exact);
  }
  const auto est = estimate_quant_dim(curve);
  EXPECT_NEAR(est.value, 1.0, 0.1);
  EXPECT_EQ(est.n_min, 16);
  EXPECT_EQ(est.n_max, 32);
  EXPECT_EQ(est.points_used, 17u);
  EXPECT_LE(est.lower_proxy, est.upper_proxy);
  for (const auto& [n, c] : quant_coefficients(curve, est.value)) {
    if (n < 4) continue;
    EXPECT_GE(c, 1.0 / 24);
    EXPECT_LE(c, 1.0);
  }
}

TEST(ErrorCurve, EqualWeightCantorEstimate) {
  const auto ifs = IFSystem::on_line(kThird, {0.0, 2 * kThird}, {0.5, 0.5});
  const auto mu = discretize_depth(ifs, 12).measure;
  const auto curve = error_curve(mu, 32, 2.0, QuantEngine::exact1d);
  EXPECT_NEAR(estimate_quant_dim(curve).value, 0.63, 0.1);
}

TEST(EstimateQuantDim, WindowAndErrors) {
  ErrorCurve curve;
  curve.r = 2.0;
  // V_n = n^{-2/D} exactly, D = 0.7
  for (int n = 1; n <= 20; ++n) curve.entries.push_back({n, std::pow(n, -2.0 / 0.7), true});
  EXPECT_NEAR(estimate_quant_dim(curve).value, 0.7, 1e-12);
  const auto est = estimate_quant_dim(curve, {3, 6});
  EXPECT_NEAR(est.value, 0.7, 1e-12);
  EXPECT_EQ(est.points_used, 4u);
  EXPECT_NEAR(est.lower_proxy, 0.7, 1e-12);
  EXPECT_EQ(kind_of([&] { estimate_quant_dim(curve, {5, 6}); }), ErrorKind::insufficient_data);
  ErrorCurve tiny;
  tiny.r = 2.0;
  tiny.entries = {{1, 0.5, true}, {2, 0.2, true}};
  EXPECT_EQ(kind_of([&] { estimate_quant_dim(tiny); }), ErrorKind::insufficient_data);
}

TEST(QuantCoefficients, EdgeCases) {
  ErrorCurve curve;
  curve.r = 2.0;
  curve.entries = {{1, 0.5, true}, {2, 0.1, true}, {3, 0.0, true}, {4, 0.0, true}};
  const auto zero_tail = quant_coefficients(curve, 1.0);
  EXPECT_EQ(zero_tail[2].second, 0.0);
  EXPECT_EQ(zero_tail[3].second, 0.0);
  const auto big = quant_coefficients(curve, 1e6);
  EXPECT_GE(big[0].second, big[1].second);
  EXPECT_EQ(kind_of([&] { quant_coefficients(curve, 0.0); }), ErrorKind::invalid_input);
}

TEST(GrafLuschgy, Examples) {
  const double p[] = {kThird, 2 * kThird};
  const double c[] = {kThird, kThird};
  const auto ex2 = solve_graf_luschgy(p, c, 2.0);
  EXPECT_NEAR(ex2.value, 0.6183, 5e-4);
  EXPECT_LE(std::abs(ex2.residual), 1e-12);
  EXPECT_LE(ex2.lo, ex2.value);
  EXPECT_GE(ex2.hi, ex2.value);
  double check = 0.0;
  for (int i = 0; i < 2; ++i) check += std::pow(p[i] * c[i] * c[i], ex2.value / (ex2.value + 2.0));
  EXPECT_NEAR(check, 1.0, 1e-12);

  const double half[] = {0.5, 0.5};
  for (double r : {0.5, 1.0, 2.0, 7.0}) {
    // x = log 2 / (log 2 + r log 3), D = r x / (1 - x)
    EXPECT_NEAR(solve_graf_luschgy(half, c, r).value, kCantor, 1e-10);
  }
  EXPECT_NEAR(solve_graf_luschgy(half, half, 1.0).value, 1.0, 1e-10);
}

TEST(GrafLuschgy, InvalidInputs) {
  const double bad_p[] = {0.5, 0.6};
  const double ok_c[] = {0.3, 0.3};
  const double bad_c[] = {0.3, 1.0};
  const double ok_p[] = {0.5, 0.5};
  EXPECT_EQ(kind_of([&] { solve_graf_luschgy(bad_p, ok_c, 2.0); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([&] { solve_graf_luschgy(ok_p, bad_c, 2.0); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([&] { solve_graf_luschgy(ok_p, ok_c, 0.0); }), ErrorKind::invalid_input);
}

TEST(GrafLuschgy, InverseRoundTrip) {
  EXPECT_NEAR(inverse_graf_luschgy(kCantor, 2.0, 1).maps()[0].ratio(), kThird, 1e-15);
  EXPECT_DOUBLE_EQ(inverse_graf_luschgy(0.5, 2.0, 1).maps()[0].ratio(), 0.25);
  for (double alpha : {0.2, 0.5, 0.9})
    for (double r : {1.0, 2.0, 3.0})
      EXPECT_NEAR(solve_graf_luschgy(inverse_graf_luschgy(alpha, r, 1), r).value, alpha, 1e-10);
  EXPECT_NEAR(solve_graf_luschgy(inverse_graf_luschgy(1.3, 2.0, 2), 2.0).value, 1.3, 1e-10);
  EXPECT_EQ(kind_of([] { inverse_graf_luschgy(0.0, 2.0, 1); }), ErrorKind::invalid_input);
  EXPECT_EQ(kind_of([] { inverse_graf_luschgy(1.5, 2.0, 1); }), ErrorKind::invalid_input);
}
