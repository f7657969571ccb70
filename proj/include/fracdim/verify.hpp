#ifndef FRACDIM_VERIFY_HPP
#define FRACDIM_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/error.hpp"
#include "fracdim/ifs.hpp"
#include "fracdim/io.hpp"
#include "fracdim/lowerdim.hpp"
#include "fracdim/measure.hpp"
#include "fracdim/numeric.hpp"
#include "fracdim/quantization.hpp"

namespace fracdim {

/// Outcome of one randomized property. Slack is (allowed side) - (checked
/// side); a trial passes when slack >= -tolerance.
struct PropertyReport {
  std::string suite;
  std::string name;
  double tolerance = 0.0;
  int trials = 0;
  int passed = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::optional<json> counterexample;  // first failing trial

  bool ok() const { return passed == trials; }
};

struct VerifyReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<PropertyReport> properties;

  bool all_passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyReport& p) { return p.ok(); });
  }
};

inline json to_json(const VerifyReport& report) {
  json props = json::array();
  for (const auto& p : report.properties) {
    json j{{"suite", p.suite},   {"property", p.name},     {"trials", p.trials},
           {"passed", p.passed}, {"tolerance", p.tolerance}, {"worst_slack", p.worst_slack}};
    if (p.counterexample) j["counterexample"] = *p.counterexample;
    props.push_back(std::move(j));
  }
  return {{"seed", report.seed},
          {"trials", report.trials},
          {"all_passed", report.all_passed()},
          {"properties", props}};
}

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites{"convolution", "sum", "scaling", "domination", "product"};
  return suites;
}

namespace detail {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform01(rng) * static_cast<double>(hi - lo + 1));
}

inline DiscreteMeasure random_measure(Rng& rng, std::size_t dim, std::size_t size) {
  std::vector<double> coords(dim * size);
  for (double& c : coords) c = uniform01(rng);
  std::vector<double> weights(size);
  for (double& w : weights) w = uniform(rng, 0.05, 1.0);
  const double total = compensated_sum(weights);
  for (double& w : weights) w /= total;
  return DiscreteMeasure(dim, std::move(coords), std::move(weights));
}

inline double random_order(Rng& rng) { return static_cast<double>(uniform_int(rng, 1, 3)); }

// One trial returns its slack and a description of its inputs.
using Trial = std::function<std::pair<double, json>(Rng&)>;

inline PropertyReport run_property(const std::string& suite, const std::string& name, double tolerance,
                                   std::uint64_t seed, int trials, const Trial& trial) {
  PropertyReport report{suite, name, tolerance, trials, 0, std::numeric_limits<double>::infinity(), {}};
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(trial_seed);
    auto [slack, inputs] = trial(rng);
    report.worst_slack = std::min(report.worst_slack, slack);
    if (slack >= -tolerance) {
      ++report.passed;
    } else if (!report.counterexample) {
      inputs["trial"] = t;
      inputs["trial_seed"] = trial_seed;
      inputs["slack"] = slack;
      report.counterexample = std::move(inputs);
    }
  }
  return report;
}

inline json measure_json(const DiscreteMeasure& mu) { return to_json(mu); }

// Random 1D system with common ratio c < 1/N and evenly spaced images.
inline IFSystem random_equal_ratio_system(Rng& rng, std::size_t maps, double c) {
  std::vector<double> offsets;
  for (std::size_t i = 0; i < maps; ++i)
    offsets.push_back(static_cast<double>(i) * (1.0 - c) / static_cast<double>(maps - 1));
  std::vector<double> probs(maps);
  for (double& p : probs) p = uniform(rng, 0.1, 1.0);
  const double total = compensated_sum(probs);
  for (double& p : probs) p /= total;
  return IFSystem::on_line(c, offsets, probs);
}

}  // namespace detail

/// Randomized property suites. Every trial draws its own generator from
/// (seed, suite, property, trial), so a counterexample replays from the report.
inline VerifyReport run_verify(const std::string& suite, std::uint64_t seed, int trials) {
  require(trials >= 1, ErrorKind::invalid_input, "verify: trials must be positive");
  const auto& known = verify_suites();
  require(suite == "all" || std::find(known.begin(), known.end(), suite) != known.end(),
          ErrorKind::invalid_input, "verify: unknown suite \"" + suite + "\"");
  VerifyReport report{seed, trials, {}};
  using detail::Rng;
  std::uint64_t stream = 0;
  auto add = [&](const std::string& s, const std::string& name, double tol, const detail::Trial& trial) {
    const std::uint64_t property_seed = derive_seed(seed, ++stream);
    if (suite == "all" || suite == s)
      report.properties.push_back(detail::run_property(s, name, tol, property_seed, trials, trial));
  };

  add("convolution", "dirac-convolution-invariance", 1e-12, [](Rng& rng) {
    const auto mu = detail::random_measure(rng, 1, static_cast<std::size_t>(detail::uniform_int(rng, 1, 10)));
    const double x = detail::uniform(rng, -5.0, 5.0);
    const int n = detail::uniform_int(rng, 1, 6);
    const double r = detail::random_order(rng);
    const double base = quant_error_exact_1d(mu, n, r).error;
    const double moved = quant_error_exact_1d(convolve(mu, DiscreteMeasure::dirac({x})), n, r).error;
    return std::pair{-std::abs(moved - base),
                     json{{"mu", detail::measure_json(mu)}, {"x", x}, {"n", n}, {"r", r}, {"V", base}, {"V_conv", moved}}};
  });

  add("convolution", "translation-invariance", 1e-12, [](Rng& rng) {
    const auto mu = detail::random_measure(rng, 1, static_cast<std::size_t>(detail::uniform_int(rng, 1, 10)));
    const double x = detail::uniform(rng, -5.0, 5.0);
    const int n = detail::uniform_int(rng, 1, 6);
    const double r = detail::random_order(rng);
    const double base = quant_error_exact_1d(mu, n, r).error;
    const double moved = quant_error_exact_1d(translate(mu, std::vector<double>{x}), n, r).error;
    return std::pair{-std::abs(moved - base),
                     json{{"mu", detail::measure_json(mu)}, {"x", x}, {"n", n}, {"r", r}, {"V", base}, {"V_moved", moved}}};
  });

  add("sum", "superadditivity", 1e-12, [](Rng& rng) {
    const auto mu = detail::random_measure(rng, 1, static_cast<std::size_t>(detail::uniform_int(rng, 1, 10)));
    const auto nu = detail::random_measure(rng, 1, static_cast<std::size_t>(detail::uniform_int(rng, 1, 10)));
    const int n = detail::uniform_int(rng, 1, 5);
    const double r = detail::random_order(rng);
    const auto sum = mixture({{1.0, mu}, {1.0, nu}});
    const double lhs = quant_error_exact_1d(sum, n, r).error;
    const double rhs = quant_error_exact_1d(mu, n, r).error + quant_error_exact_1d(nu, n, r).error;
    return std::pair{lhs - rhs, json{{"mu", detail::measure_json(mu)}, {"nu", detail::measure_json(nu)},
                                     {"n", n}, {"r", r}, {"V_sum", lhs}, {"V_mu_plus_V_nu", rhs}}};
  });

  add("sum", "doubling-upper-bound", 1e-12, [](Rng& rng) {
    const auto mu = detail::random_measure(rng, 1, static_cast<std::size_t>(detail::uniform_int(rng, 1, 10)));
    const auto nu = detail::random_measure(rng, 1, static_cast<std::size_t>(detail::uniform_int(rng, 1, 10)));
    const int n = detail::uniform_int(rng, 1, 5);
    const double r = detail::random_order(rng);
    const auto sum = mixture({{1.0, mu}, {1.0, nu}});
    const double lhs = quant_error_exact_1d(sum, 2 * n, r).error;
    const double rhs = quant_error_exact_1d(mu, n, r).error + quant_error_exact_1d(nu, n, r).error;
    return std::pair{rhs - lhs, json{{"mu", detail::measure_json(mu)}, {"nu", detail::measure_json(nu)},
                                     {"n", n}, {"r", r}, {"V_2n_sum", lhs}, {"V_mu_plus_V_nu", rhs}}};
  });

  add("scaling", "quantization-homogeneity", 1e-9, [](Rng& rng) {
    const auto mu = detail::random_measure(rng, 1, static_cast<std::size_t>(detail::uniform_int(rng, 2, 12)));
    const double beta = std::exp(detail::uniform(rng, std::log(0.1), std::log(10.0)));
    const int n = detail::uniform_int(rng, 1, 6);
    const double r = detail::random_order(rng);
    const double base = quant_error_exact_1d(mu, n, r).error;
    const double scaled = quant_error_exact_1d(scale_measure(mu, beta), n, r).error;
    // relative agreement of V(scale(mu, beta)) with beta^-r V(mu)
    const double expected = base * std::pow(beta, -r);
    const double rel = std::abs(scaled - expected) / std::max(expected, 1e-300);
    return std::pair{expected == 0.0 ? -std::abs(scaled) : -rel,
                     json{{"mu", detail::measure_json(mu)}, {"beta", beta}, {"n", n}, {"r", r},
                          {"V", base}, {"V_scaled", scaled}}};
  });

  add("scaling", "lower-dim-estimator-equivariance", 1e-9, [](Rng& rng) {
    const std::size_t dim = static_cast<std::size_t>(detail::uniform_int(rng, 1, 2));
    const auto mu = detail::random_measure(rng, dim, static_cast<std::size_t>(detail::uniform_int(rng, 8, 40)));
    const double beta = std::exp(detail::uniform(rng, std::log(0.1), std::log(10.0)));
    const double diam = diameter(mu.support());
    const ScaleGrid grid{diam / 256.0, diam / 2.0, 9, 8.0};
    const auto base = estimate_lower_dim_measure(mu, grid);
    const auto scaled = estimate_lower_dim_measure(scale_measure(mu, beta), grid.scaled(1.0 / beta));
    double worst = std::abs(base.value - scaled.value);
    if (base.witnesses.size() != scaled.witnesses.size()) worst = std::numeric_limits<double>::infinity();
    else
      for (std::size_t i = 0; i < base.witnesses.size(); ++i)
        worst = std::max(worst, std::abs(base.witnesses[i].exponent - scaled.witnesses[i].exponent));
    return std::pair{-worst, json{{"mu", detail::measure_json(mu)}, {"beta", beta}, {"grid", to_json(grid)},
                                  {"value", base.value}, {"value_scaled", scaled.value}}};
  });

  add("domination", "dominated-quantization-error", 1e-12, [](Rng& rng) {
    const auto nu = detail::random_measure(rng, 1, static_cast<std::size_t>(detail::uniform_int(rng, 2, 12)));
    // mu = C-dominated reweighting of nu on a subset of its support
    std::vector<double> coords;
    std::vector<double> weights;
    std::vector<double> base;  // nu's weight at each kept atom
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (i > 0 && uniform01(rng) < 0.25) continue;
      coords.push_back(nu[i][0]);
      weights.push_back(nu.weight(i) * detail::uniform(rng, 0.05, 1.0));
      base.push_back(nu.weight(i));
    }
    const double total = compensated_sum(weights);
    double c = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      weights[k] /= total;
      c = std::max(c, weights[k] / base[k]);
    }
    const DiscreteMeasure mu(1, coords, weights);
    const int n = detail::uniform_int(rng, 1, 6);
    const double r = detail::random_order(rng);
    const double lhs = quant_error_exact_1d(mu, n, r).error;
    const double rhs = c * quant_error_exact_1d(nu, n, r).error;
    return std::pair{rhs - lhs, json{{"mu", detail::measure_json(mu)}, {"nu", detail::measure_json(nu)},
                                     {"C", c}, {"n", n}, {"r", r}, {"V_mu", lhs}, {"C_V_nu", rhs}}};
  });

  add("product", "lower-dim-additivity", 1e-12, [](Rng& rng) {
    const auto n1 = static_cast<std::size_t>(detail::uniform_int(rng, 2, 4));
    const auto n2 = static_cast<std::size_t>(detail::uniform_int(rng, 2, 4));
    const double c = detail::uniform(rng, 0.05, 0.95) / static_cast<double>(std::max(n1, n2));
    const auto first = detail::random_equal_ratio_system(rng, n1, c);
    const auto second = detail::random_equal_ratio_system(rng, n2, c);
    const double sum = lower_dim_formula(first) + lower_dim_formula(second);
    const double direct = lower_dim_formula(product_ifs(first, second));
    return std::pair{-std::abs(sum - direct),
                     json{{"first", to_json(first)}, {"second", to_json(second)}, {"s_plus_t", sum},
                          {"product_formula", direct}}};
  });

  return report;
}

}  // namespace fracdim

#endif  // FRACDIM_VERIFY_HPP
