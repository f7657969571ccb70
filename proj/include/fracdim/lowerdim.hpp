#ifndef FRACDIM_LOWERDIM_HPP
#define FRACDIM_LOWERDIM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/error.hpp"
#include "fracdim/geometry.hpp"
#include "fracdim/measure.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

struct Witness {
  Point center;
  double r = 0.0;
  double R = 0.0;
  double exponent = 0.0;
};

struct DimensionEstimate {
  double value = 0.0;  // min of the witness exponents
  std::vector<Witness> witnesses;
  ScaleGrid grid;
  std::string method;
  std::vector<std::string> diagnostics;

  /// Witness attaining `value` (the first one on ties).
  const Witness& argmin() const {
    return *std::min_element(witnesses.begin(), witnesses.end(),
                             [](const Witness& a, const Witness& b) { return a.exponent < b.exponent; });
  }
};

inline constexpr std::size_t kDefaultCenterCap = 512;

namespace detail {

// Grid scales not exceeding the diameter. Comparisons are relative so the
// selection is invariant under rescaling data and grid together.
inline std::vector<double> usable_scales(const ScaleGrid& grid, double diam,
                                         std::vector<std::string>& diagnostics) {
  std::vector<double> kept;
  for (double s : grid.scales())
    if (s <= diam * (1.0 + 1e-9)) kept.push_back(s);
  if (kept.size() < static_cast<std::size_t>(grid.levels))
    diagnostics.push_back("clipped " + std::to_string(grid.levels - static_cast<int>(kept.size())) +
                          " grid scale(s) above the diameter " + std::to_string(diam));
  return kept;
}

inline std::vector<std::size_t> center_indices(std::size_t n, std::size_t cap,
                                               std::vector<std::string>& diagnostics) {
  require(cap >= 1, ErrorKind::invalid_input, "center cap must be positive");
  const std::size_t stride = (n + cap - 1) / cap;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; i += stride) out.push_back(i);
  if (stride > 1)
    diagnostics.push_back("subsampled " + std::to_string(out.size()) + " of " + std::to_string(n) +
                          " centers with stride " + std::to_string(stride));
  return out;
}

inline void finish(DimensionEstimate& est) {
  require(!est.witnesses.empty(), ErrorKind::insufficient_data,
          est.method + ": no admissible scale pair (need R/r >= ratio_floor within the diameter)");
  est.value = est.argmin().exponent;
}

}  // namespace detail

/// Finite-scale lower dimension of a point set: the minimum over centers x and
/// admissible pairs r < R of log N_r(B_R(x) n E) / log(R/r).
inline DimensionEstimate estimate_lower_dim_set(const PointSet& e, const ScaleGrid& grid,
                                                std::size_t center_cap = kDefaultCenterCap) {
  grid.validate();
  DimensionEstimate est;
  est.grid = grid;
  est.method = "lower-set";
  const auto scales = detail::usable_scales(grid, diameter(e), est.diagnostics);
  const auto pairs = grid.admissible_pairs(scales);
  for (std::size_t c : detail::center_indices(e.size(), center_cap, est.diagnostics)) {
    const auto x = e[c];
    std::vector<std::optional<PointSet>> balls(scales.size());
    for (const auto& [i, j] : pairs) {
      if (!balls[j]) balls[j] = ball_restrict(e, x, scales[j]);
      const double count = static_cast<double>(covering_number(*balls[j], scales[i]));
      est.witnesses.push_back(
          {Point(x.begin(), x.end()), scales[i], scales[j], std::log(count) / std::log(scales[j] / scales[i])});
    }
  }
  detail::finish(est);
  return est;
}

/// Finite-scale lower dimension of a probability measure: the minimum over
/// support centers x and admissible pairs r < R of
/// log(mu(B_R(x)) / mu(B_r(x))) / log(R/r). Balls are closed, with a relative
/// boundary tolerance of 1e-9.
inline DimensionEstimate estimate_lower_dim_measure(const DiscreteMeasure& mu, const ScaleGrid& grid,
                                                    std::size_t center_cap = kDefaultCenterCap) {
  grid.validate();
  mu.require_normalized("estimate_lower_dim_measure");
  DimensionEstimate est;
  est.grid = grid;
  est.method = "lower-measure";
  const auto scales = detail::usable_scales(grid, diameter(mu.support()), est.diagnostics);
  const auto pairs = grid.admissible_pairs(scales);
  const std::size_t n = mu.size();
  std::vector<std::pair<double, double>> by_distance(n);
  std::vector<double> mass(scales.size());
  for (std::size_t c : detail::center_indices(n, center_cap, est.diagnostics)) {
    const auto x = mu[c];
    for (std::size_t i = 0; i < n; ++i) by_distance[i] = {euclidean_distance(mu[i], x), mu.weight(i)};
    std::sort(by_distance.begin(), by_distance.end());
    CompensatedSum acc;
    std::size_t t = 0;
    for (std::size_t s = 0; s < scales.size(); ++s) {
      const double limit = scales[s] * (1.0 + 1e-9);
      while (t < n && by_distance[t].first <= limit) acc.add(by_distance[t++].second);
      mass[s] = acc.value();
    }
    for (const auto& [i, j] : pairs)
      est.witnesses.push_back({Point(x.begin(), x.end()), scales[i], scales[j],
                               std::log(mass[j] / mass[i]) / std::log(scales[j] / scales[i])});
  }
  detail::finish(est);
  return est;
}

}  // namespace fracdim

#endif  // FRACDIM_LOWERDIM_HPP
