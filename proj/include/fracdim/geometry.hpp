#ifndef FRACDIM_GEOMETRY_HPP
#define FRACDIM_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/error.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

using Point = std::vector<double>;

/// A nonempty finite set of points in R^m, stored row-major. Point order is
/// preserved as given; duplicates are allowed (they do not change any of the
/// set-level quantities computed here).
class PointSet {
 public:
  PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    require(dim_ > 0, ErrorKind::invalid_input, "PointSet: dimension must be positive");
    require(!coords_.empty(), ErrorKind::invalid_input, "PointSet: empty point set");
    require(coords_.size() % dim_ == 0, ErrorKind::invalid_input,
            "PointSet: coordinate count is not a multiple of the dimension");
    for (double c : coords_)
      require(std::isfinite(c), ErrorKind::invalid_input, "PointSet: non-finite coordinate");
  }

  static PointSet from_rows(const std::vector<Point>& rows) {
    require(!rows.empty(), ErrorKind::invalid_input, "PointSet: empty point set");
    const std::size_t dim = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (const auto& row : rows) {
      require(row.size() == dim, ErrorKind::invalid_input, "PointSet: ragged rows");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return PointSet(dim, std::move(flat));
  }

  static PointSet on_line(std::vector<double> values) { return PointSet(1, std::move(values)); }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  Point point(std::size_t i) const {
    auto p = (*this)[i];
    return {p.begin(), p.end()};
  }

  /// Index of the lexicographically smallest point (first one on ties).
  std::size_t lexicographic_min() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < size(); ++i) {
      auto a = (*this)[i];
      auto b = (*this)[best];
      if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) best = i;
    }
    return best;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* where) {
  require(a == b, ErrorKind::invalid_input, std::string(where) + ": dimension mismatch");
}

inline double diameter(const PointSet& e) {
  if (e.dim() == 1) {
    auto [lo, hi] = std::minmax_element(e.coords().begin(), e.coords().end());
    return *hi - *lo;
  }
  double best = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      best = std::max(best, euclidean_distance(e[i], e[j]));
  return best;
}

namespace detail {

// max over a in A of dist(a, B)
inline double directed_hausdorff(const PointSet& a, const PointSet& b) {
  double worst = 0.0;
  if (a.dim() == 1) {
    std::vector<double> sorted(b.coords().begin(), b.coords().end());
    std::sort(sorted.begin(), sorted.end());
    for (double x : a.coords()) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
      double d = std::numeric_limits<double>::infinity();
      if (it != sorted.end()) d = *it - x;
      if (it != sorted.begin()) d = std::min(d, x - *std::prev(it));
      worst = std::max(worst, d);
    }
    return worst;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size() && nearest > worst; ++j)
      nearest = std::min(nearest, euclidean_distance(a[i], b[j]));
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace detail

/// Exact Hausdorff distance between two finite sets.
inline double hausdorff_distance(const PointSet& a, const PointSet& b) {
  require_same_dim(a.dim(), b.dim(), "hausdorff_distance");
  return std::max(detail::directed_hausdorff(a, b), detail::directed_hausdorff(b, a));
}

/// Points of `e` in the closed ball of radius `radius` about `x`; nullopt when
/// the ball misses the set.
inline std::optional<PointSet> ball_restrict(const PointSet& e, std::span<const double> x,
                                             double radius) {
  require_same_dim(e.dim(), x.size(), "ball_restrict");
  std::vector<double> kept;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (euclidean_distance(e[i], x) <= radius + kDistanceTol)
      kept.insert(kept.end(), e[i].begin(), e[i].end());
  }
  if (kept.empty()) return std::nullopt;
  return PointSet(e.dim(), std::move(kept));
}

/// Covering number N_r: the number of sets of diameter at most r needed to
/// cover `e`.
///
/// On the line the left-to-right sweep (start a new piece at the leftmost
/// uncovered point, extend it by r) is optimal, so the count is exact. In
/// higher dimension a greedy farthest-point net with radius r/2 is used,
/// started at the lexicographically smallest point; it over-counts the optimum
/// by at most a dimension-dependent constant.
inline std::size_t covering_number(const PointSet& e, double r) {
  require(r > 0.0, ErrorKind::invalid_input, "covering_number: r must be positive");
  const std::size_t n = e.size();
  if (e.dim() == 1) {
    std::vector<double> xs(e.coords().begin(), e.coords().end());
    std::sort(xs.begin(), xs.end());
    std::size_t count = 0;
    for (std::size_t i = 0; i < n;) {
      const double start = xs[i];
      ++count;
      while (i < n && xs[i] - start <= r + kDistanceTol) ++i;
    }
    return count;
  }

  const double radius = 0.5 * r;
  std::vector<double> nearest(n);
  std::size_t next = e.lexicographic_min();
  std::size_t count = 0;
  std::fill(nearest.begin(), nearest.end(), std::numeric_limits<double>::infinity());
  while (true) {
    ++count;
    std::size_t far = next;
    double far_dist = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], euclidean_distance(e[i], e[next]));
      if (nearest[i] > far_dist) {
        far_dist = nearest[i];
        far = i;
      }
    }
    if (far_dist <= radius + kDistanceTol) break;
    next = far;
  }
  return count;
}

/// Geometric progression of scales r_min = s_0 < ... < s_{levels-1} = r_max,
/// with the minimum ratio R/r an admissible (r, R) pair must reach.
struct ScaleGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  int levels = 2;
  double ratio_floor = 8.0;

  void validate() const {
    require(r_min > 0.0 && std::isfinite(r_min), ErrorKind::invalid_input,
            "ScaleGrid: r_min must be positive");
    require(r_max > r_min && std::isfinite(r_max), ErrorKind::invalid_input,
            "ScaleGrid: need r_min < r_max");
    require(levels >= 2, ErrorKind::invalid_input, "ScaleGrid: need at least two levels");
    require(ratio_floor > 1.0, ErrorKind::invalid_input, "ScaleGrid: ratio_floor must exceed 1");
  }

  std::vector<double> scales() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(levels));
    const double log_span = std::log(r_max / r_min);
    for (int i = 0; i < levels; ++i)
      out[static_cast<std::size_t>(i)] =
          r_min * std::exp(log_span * static_cast<double>(i) / static_cast<double>(levels - 1));
    out.front() = r_min;
    out.back() = r_max;
    return out;
  }

  ScaleGrid scaled(double factor) const {
    ScaleGrid g = *this;
    g.r_min *= factor;
    g.r_max *= factor;
    return g;
  }

  /// Index pairs (i, j), i < j, into `scales` with s_j / s_i >= ratio_floor.
  std::vector<std::pair<std::size_t, std::size_t>> admissible_pairs(
      std::span<const double> scales) const {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < scales.size(); ++i)
      for (std::size_t j = i + 1; j < scales.size(); ++j)
        if (scales[j] / scales[i] >= ratio_floor * (1.0 - 1e-12)) pairs.emplace_back(i, j);
    return pairs;
  }
};

}  // namespace fracdim

#endif  // FRACDIM_GEOMETRY_HPP
