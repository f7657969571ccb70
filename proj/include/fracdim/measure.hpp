#ifndef FRACDIM_MEASURE_HPP
#define FRACDIM_MEASURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/error.hpp"
#include "fracdim/geometry.hpp"
#include "fracdim/numeric.hpp"
#include "fracdim/transport.hpp"

namespace fracdim {

/// Finite measure with finite support. Support points are pairwise distinct:
/// points closer than kDistanceTol in every coordinate are merged at
/// construction, adding their weights. The support is kept in lexicographic
/// order.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::size_t dim, std::vector<double> coords, std::vector<double> weights)
      : dim_(dim) {
    require(dim > 0, ErrorKind::invalid_input, "DiscreteMeasure: dimension must be positive");
    require(!weights.empty(), ErrorKind::invalid_input, "DiscreteMeasure: empty support");
    require(coords.size() == weights.size() * dim, ErrorKind::invalid_input,
            "DiscreteMeasure: support/weight size mismatch");
    for (double c : coords)
      require(std::isfinite(c), ErrorKind::invalid_input, "DiscreteMeasure: non-finite coordinate");
    for (double w : weights)
      require(w > 0.0 && std::isfinite(w), ErrorKind::invalid_input,
              "DiscreteMeasure: weights must be positive and finite");
    merge(coords, weights);
    total_ = compensated_sum(weights_);
    normalized_ = std::abs(total_ - 1.0) <= kMassTol;
  }

  static DiscreteMeasure dirac(const Point& x) { return DiscreteMeasure(x.size(), x, {1.0}); }

  /// Equal weights on the points of `e`.
  static DiscreteMeasure uniform_on(const PointSet& e) {
    std::vector<double> w(e.size(), 1.0 / static_cast<double>(e.size()));
    return DiscreteMeasure(e.dim(), {e.coords().begin(), e.coords().end()}, std::move(w));
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> coords() const noexcept { return coords_; }
  double total_mass() const noexcept { return total_; }
  bool is_normalized() const noexcept { return normalized_; }
  PointSet support() const { return PointSet(dim_, coords_); }

  void require_normalized(const char* where) const {
    require(normalized_, ErrorKind::invalid_input,
            std::string(where) + ": measure must be a probability measure");
  }

  /// Same support and weights within `tol` (supports are canonically ordered).
  bool approx_equal(const DiscreteMeasure& other, double tol) const {
    if (dim_ != other.dim_ || size() != other.size()) return false;
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (std::abs(coords_[i] - other.coords_[i]) > tol) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (std::abs(weights_[i] - other.weights_[i]) > tol) return false;
    return true;
  }

 private:
  void merge(const std::vector<double>& coords, const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    auto point = [&](std::size_t i) { return std::span<const double>(coords.data() + i * dim_, dim_); };
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      auto pa = point(a);
      auto pb = point(b);
      return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    });

    coords_.reserve(coords.size());
    weights_.reserve(n);
    std::vector<CompensatedSum> mass;
    for (std::size_t idx : order) {
      auto p = point(idx);
      // representatives are ordered by first coordinate, so only a short
      // trailing window can lie within tolerance
      std::size_t hit = weights_.size();
      for (std::size_t k = weights_.size(); k-- > 0;) {
        const double* q = coords_.data() + k * dim_;
        if (p[0] - q[0] > kDistanceTol) break;
        bool same = true;
        for (std::size_t d = 0; d < dim_ && same; ++d) same = std::abs(p[d] - q[d]) <= kDistanceTol;
        if (same) {
          hit = k;
          break;
        }
      }
      if (hit == weights_.size()) {
        coords_.insert(coords_.end(), p.begin(), p.end());
        weights_.push_back(0.0);
        mass.emplace_back();
      }
      mass[hit].add(weights[idx]);
    }
    for (std::size_t k = 0; k < weights_.size(); ++k) weights_[k] = mass[k].value();
  }

  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> weights_;
  double total_ = 0.0;
  bool normalized_ = false;
};

/// A probability measure with finite support: an element of the Dirac
/// combinations sum a_j delta_{x_j}.
class DiracCombination {
 public:
  explicit DiracCombination(DiscreteMeasure m) : measure_(std::move(m)) {
    measure_.require_normalized("DiracCombination");
  }
  const DiscreteMeasure& measure() const noexcept { return measure_; }

 private:
  DiscreteMeasure measure_;
};

inline constexpr std::size_t kDefaultSupportCap = std::size_t{1} << 22;

/// Push-forward of mu x nu under (x, y) -> x + y.
inline DiscreteMeasure convolve(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                std::size_t support_cap = kDefaultSupportCap) {
  require_same_dim(mu.dim(), nu.dim(), "convolve");
  mu.require_normalized("convolve");
  nu.require_normalized("convolve");
  require(mu.size() * nu.size() <= support_cap, ErrorKind::resource,
          "convolve: support size " + std::to_string(mu.size() * nu.size()) + " exceeds cap " +
              std::to_string(support_cap));
  const std::size_t m = mu.dim();
  std::vector<double> coords;
  std::vector<double> weights;
  coords.reserve(mu.size() * nu.size() * m);
  weights.reserve(mu.size() * nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) {
      for (std::size_t d = 0; d < m; ++d) coords.push_back(mu[i][d] + nu[j][d]);
      weights.push_back(mu.weight(i) * nu.weight(j));
    }
  return DiscreteMeasure(m, std::move(coords), std::move(weights));
}

/// (mu + x)(E) = mu(E + x): every atom moves from p to p - x.
inline DiscreteMeasure translate(const DiscreteMeasure& mu, std::span<const double> x) {
  require_same_dim(mu.dim(), x.size(), "translate");
  std::vector<double> coords(mu.coords().begin(), mu.coords().end());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= x[i % mu.dim()];
  return DiscreteMeasure(mu.dim(), std::move(coords), {mu.weights().begin(), mu.weights().end()});
}

/// theta(E) = mu(beta E): every atom moves from p to p / beta.
inline DiscreteMeasure scale_measure(const DiscreteMeasure& mu, double beta) {
  require(beta > 0.0 && std::isfinite(beta), ErrorKind::invalid_input,
          "scale_measure: beta must be positive");
  std::vector<double> coords(mu.coords().begin(), mu.coords().end());
  for (double& c : coords) c /= beta;
  return DiscreteMeasure(mu.dim(), std::move(coords), {mu.weights().begin(), mu.weights().end()});
}

/// sum_k a_k mu_k. The result is a probability measure exactly when the
/// components are and the weights sum to one; otherwise it is a finite measure.
inline DiscreteMeasure mixture(const std::vector<std::pair<double, DiscreteMeasure>>& components) {
  require(!components.empty(), ErrorKind::invalid_input, "mixture: no components");
  const std::size_t m = components.front().second.dim();
  std::vector<double> coords;
  std::vector<double> weights;
  for (const auto& [a, mu] : components) {
    require(a > 0.0 && std::isfinite(a), ErrorKind::invalid_input,
            "mixture: weights must be positive");
    require_same_dim(m, mu.dim(), "mixture");
    coords.insert(coords.end(), mu.coords().begin(), mu.coords().end());
    for (double w : mu.weights()) weights.push_back(a * w);
  }
  return DiscreteMeasure(m, std::move(coords), std::move(weights));
}

inline constexpr std::size_t kExactTransportCap = 512;

/// Kantorovich (Lip_1 dual) distance between probability measures. On the line
/// this is the integral of |F_mu - F_nu|; in higher dimension it is the optimal
/// transport cost with Euclidean ground cost, solved exactly for combined
/// supports up to kExactTransportCap atoms.
inline double kantorovich_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_same_dim(mu.dim(), nu.dim(), "kantorovich_distance");
  mu.require_normalized("kantorovich_distance");
  nu.require_normalized("kantorovich_distance");

  if (mu.dim() == 1) {
    // supports are sorted; sweep the merged breakpoints
    std::size_t i = 0;
    std::size_t j = 0;
    CompensatedSum cdf_mu;
    CompensatedSum cdf_nu;
    CompensatedSum area;
    double prev = std::min(mu[0][0], nu[0][0]);
    while (i < mu.size() || j < nu.size()) {
      const double x_mu = i < mu.size() ? mu[i][0] : std::numeric_limits<double>::infinity();
      const double x_nu = j < nu.size() ? nu[j][0] : std::numeric_limits<double>::infinity();
      const double x = std::min(x_mu, x_nu);
      area.add(std::abs(cdf_mu.value() - cdf_nu.value()) * (x - prev));
      if (x_mu == x) cdf_mu.add(mu.weight(i++));
      if (x_nu == x) cdf_nu.add(nu.weight(j++));
      prev = x;
    }
    return area.value();
  }

  require(mu.size() + nu.size() <= kExactTransportCap, ErrorKind::resource,
          "kantorovich_distance: combined support " + std::to_string(mu.size() + nu.size()) +
              " exceeds the exact solver cap " + std::to_string(kExactTransportCap) +
              "; subsample the measures");
  std::vector<double> cost(mu.size() * nu.size());
  for (std::size_t a = 0; a < mu.size(); ++a)
    for (std::size_t b = 0; b < nu.size(); ++b)
      cost[a * nu.size() + b] = euclidean_distance(mu[a], nu[b]);
  return min_cost_transport(mu.weights(), nu.weights(), cost);
}

/// mu(closed ball of radius `radius` about x).
inline double ball_mass(const DiscreteMeasure& mu, std::span<const double> x, double radius) {
  CompensatedSum mass;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (euclidean_distance(mu[i], x) <= radius + kDistanceTol) mass.add(mu.weight(i));
  return mass.value();
}

}  // namespace fracdim

#endif  // FRACDIM_MEASURE_HPP
