#ifndef FRACDIM_IFS_HPP
#define FRACDIM_IFS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/error.hpp"
#include "fracdim/geometry.hpp"
#include "fracdim/measure.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

/// Axis-aligned box [lo, hi].
struct Box {
  Point lo;
  Point hi;

  std::size_t dim() const { return lo.size(); }

  Point center() const {
    Point c(lo.size());
    for (std::size_t d = 0; d < lo.size(); ++d) c[d] = 0.5 * (lo[d] + hi[d]);
    return c;
  }

  double diameter() const { return euclidean_distance(lo, hi); }

  double volume() const {
    double v = 1.0;
    for (std::size_t d = 0; d < lo.size(); ++d) v *= hi[d] - lo[d];
    return v;
  }

  bool contains(const Box& other, double tol = kDistanceTol) const {
    for (std::size_t d = 0; d < lo.size(); ++d)
      if (other.lo[d] < lo[d] - tol || other.hi[d] > hi[d] + tol) return false;
    return true;
  }

  Box united(const Box& other) const {
    Box out = *this;
    for (std::size_t d = 0; d < lo.size(); ++d) {
      out.lo[d] = std::min(lo[d], other.lo[d]);
      out.hi[d] = std::max(hi[d], other.hi[d]);
    }
    return out;
  }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Upper bound on the Hausdorff distance between two boxes.
inline double box_distance_bound(const Box& a, const Box& b) {
  double acc = 0.0;
  for (std::size_t d = 0; d < a.dim(); ++d) {
    const double shift = std::max(std::abs(a.lo[d] - b.lo[d]), std::abs(a.hi[d] - b.hi[d]));
    acc += shift * shift;
  }
  return std::sqrt(acc);
}

/// Euclidean gap between two boxes when they are disjoint; otherwise minus the
/// smallest per-axis overlap (zero when they only touch).
inline double box_separation(const Box& a, const Box& b) {
  double gap2 = 0.0;
  double best_overlap = -std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < a.dim(); ++d) {
    const double s = std::max(b.lo[d] - a.hi[d], a.lo[d] - b.hi[d]);
    if (s > 0.0) gap2 += s * s;
    best_overlap = std::max(best_overlap, s);
  }
  return gap2 > 0.0 ? std::sqrt(gap2) : best_overlap;
}

namespace detail {

// Solves A x = b for a small dense system (row-major A) by Gaussian
// elimination with partial pivoting.
inline Point solve_dense(std::vector<double> a, Point b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
    require(std::abs(a[pivot * n + col]) > 1e-300, ErrorKind::numerical_failure,
            "solve_dense: singular system");
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[pivot * n + k]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row * n + col] / a[col * n + col];
      for (std::size_t k = col; k < n; ++k) a[row * n + k] -= f * a[col * n + k];
      b[row] -= f * b[col];
    }
  }
  Point x(n);
  for (std::size_t row = n; row-- > 0;) {
    double acc = b[row];
    for (std::size_t k = row + 1; k < n; ++k) acc -= a[row * n + k] * x[k];
    x[row] = acc / a[row * n + row];
  }
  return x;
}

}  // namespace detail

/// x -> ratio * O x + offset, with O orthogonal (row-major, m x m).
class SimilarityMap {
 public:
  SimilarityMap(double ratio, Point offset, std::vector<double> orthogonal = {})
      : ratio_(ratio), offset_(std::move(offset)), orthogonal_(std::move(orthogonal)) {
    const std::size_t m = offset_.size();
    require(m > 0, ErrorKind::invalid_input, "SimilarityMap: empty offset");
    require(ratio_ > 0.0 && ratio_ < 1.0, ErrorKind::invalid_input,
            "SimilarityMap: ratio must lie in (0, 1)");
    for (double b : offset_)
      require(std::isfinite(b), ErrorKind::invalid_input, "SimilarityMap: non-finite offset");
    if (orthogonal_.empty()) {
      orthogonal_.assign(m * m, 0.0);
      for (std::size_t d = 0; d < m; ++d) orthogonal_[d * m + d] = 1.0;
    }
    require(orthogonal_.size() == m * m, ErrorKind::invalid_input,
            "SimilarityMap: orthogonal part has the wrong shape");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < m; ++k) dot += orthogonal_[k * m + i] * orthogonal_[k * m + j];
        require(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-10, ErrorKind::invalid_input,
                "SimilarityMap: linear part is not orthogonal");
      }
  }

  double ratio() const noexcept { return ratio_; }
  const Point& offset() const noexcept { return offset_; }
  const std::vector<double>& orthogonal() const noexcept { return orthogonal_; }
  std::size_t dim() const noexcept { return offset_.size(); }

  bool is_diagonal() const {
    const std::size_t m = dim();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && orthogonal_[i * m + j] != 0.0) return false;
    return true;
  }

  Point apply(std::span<const double> x) const {
    const std::size_t m = dim();
    Point y(offset_);
    for (std::size_t i = 0; i < m; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += orthogonal_[i * m + k] * x[k];
      y[i] += ratio_ * acc;
    }
    return y;
  }

  /// Bounding box of the image of `box`.
  Box image(const Box& box) const {
    const std::size_t m = dim();
    const Point c = apply(box.center());
    Box out{c, c};
    for (std::size_t i = 0; i < m; ++i) {
      double half = 0.0;
      for (std::size_t k = 0; k < m; ++k)
        half += std::abs(orthogonal_[i * m + k]) * 0.5 * (box.hi[k] - box.lo[k]);
      half *= ratio_;
      out.lo[i] = c[i] - half;
      out.hi[i] = c[i] + half;
    }
    return out;
  }

  Point fixed_point() const {
    const std::size_t m = dim();
    std::vector<double> a(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        a[i * m + k] = (i == k ? 1.0 : 0.0) - ratio_ * orthogonal_[i * m + k];
    return detail::solve_dense(std::move(a), offset_);
  }

 private:
  double ratio_;
  Point offset_;
  std::vector<double> orthogonal_;
};

/// Similarity IFS with a probability vector.
class IFSystem {
 public:
  IFSystem(std::vector<SimilarityMap> maps, std::vector<double> probabilities)
      : maps_(std::move(maps)), probabilities_(std::move(probabilities)) {
    require(maps_.size() >= 2, ErrorKind::invalid_input, "IFSystem: need at least two maps");
    require(probabilities_.size() == maps_.size(), ErrorKind::invalid_input,
            "IFSystem: one probability per map required");
    for (const auto& f : maps_)
      require(f.dim() == maps_.front().dim(), ErrorKind::invalid_input,
              "IFSystem: maps differ in ambient dimension");
    for (double p : probabilities_)
      require(p > 0.0 && std::isfinite(p), ErrorKind::invalid_input,
              "IFSystem: probabilities must be strictly positive");
    require(std::abs(compensated_sum(probabilities_) - 1.0) <= kMassTol,
            ErrorKind::invalid_input, "IFSystem: probabilities must sum to 1");
  }

  /// Maps x -> ratio x + offset_i on the line.
  static IFSystem on_line(double ratio, const std::vector<double>& offsets,
                          std::vector<double> probabilities) {
    std::vector<SimilarityMap> maps;
    for (double b : offsets) maps.emplace_back(ratio, Point{b});
    return IFSystem(std::move(maps), std::move(probabilities));
  }

  std::size_t dim() const noexcept { return maps_.front().dim(); }
  std::size_t size() const noexcept { return maps_.size(); }
  const std::vector<SimilarityMap>& maps() const noexcept { return maps_; }
  const std::vector<double>& probabilities() const noexcept { return probabilities_; }

  double max_ratio() const {
    double c = 0.0;
    for (const auto& f : maps_) c = std::max(c, f.ratio());
    return c;
  }

  std::vector<double> ratios() const {
    std::vector<double> out;
    for (const auto& f : maps_) out.push_back(f.ratio());
    return out;
  }

 private:
  std::vector<SimilarityMap> maps_;
  std::vector<double> probabilities_;
};

/// A box containing the attractor.
///
/// Around the centroid x0 of the fixed points, the cube x0 +- R with
/// R = max_{i,d} |f_i(x0) - x0|_d / (1 - c_i rho_{i,d}), rho_{i,d} the row sums
/// of |O_i|, has each bounding box of f_i(cube) inside the cube whenever every
/// c_i rho_{i,d} < 1. The box map B <- bbox(u_i f_i(B)) then keeps that
/// property and shrinks B onto the tightest such box; iteration stops once a
/// step moves less than 1e-12 (1 + diam). Otherwise (strong rotations) the
/// result is the bounding box of the invariant ball of radius
/// max_i |f_i(x0) - x0| / (1 - c_i).
inline Box attractor_hull(const IFSystem& ifs) {
  const std::size_t m = ifs.dim();
  Point x0(m, 0.0);
  for (const auto& f : ifs.maps()) {
    const Point p = f.fixed_point();
    for (std::size_t d = 0; d < m; ++d) x0[d] += p[d] / static_cast<double>(ifs.size());
  }
  double cube = 0.0;
  double ball = 0.0;
  bool cube_ok = true;
  for (const auto& f : ifs.maps()) {
    const Point y = f.apply(x0);
    ball = std::max(ball, euclidean_distance(y, x0) / (1.0 - f.ratio()));
    for (std::size_t d = 0; d < m; ++d) {
      double rho = 0.0;
      for (std::size_t e = 0; e < m; ++e) rho += std::abs(f.orthogonal()[d * m + e]);
      const double gain = f.ratio() * rho;
      if (gain >= 1.0 - 1e-12) {
        cube_ok = false;
        continue;
      }
      cube = std::max(cube, std::abs(y[d] - x0[d]) / (1.0 - gain));
    }
  }
  Box box{x0, x0};
  const double radius = cube_ok ? cube : ball;
  for (std::size_t d = 0; d < m; ++d) {
    box.lo[d] -= radius;
    box.hi[d] += radius;
  }
  if (!cube_ok || radius == 0.0) return box;

  constexpr int kMaxIterations = 100000;
  for (int it = 0;; ++it) {
    require(it < kMaxIterations, ErrorKind::numerical_failure,
            "attractor_hull: box iteration did not converge");
    Box next = ifs.maps().front().image(box);
    for (const auto& f : ifs.maps()) next = next.united(f.image(box));
    // rounding must not let the box grow past the invariant one
    for (std::size_t d = 0; d < m; ++d) {
      next.lo[d] = std::max(next.lo[d], box.lo[d]);
      next.hi[d] = std::min(next.hi[d], box.hi[d]);
    }
    const double change = box_distance_bound(box, next);
    box = std::move(next);
    if (change <= 1e-12 * (1.0 + box.diameter())) break;
  }
  return box;
}

struct SeparationReport {
  bool ssc_holds = false;
  double margin = 0.0;
  Box hull;
};

/// Sufficient certificate for the strong separation condition: the images of
/// an invariant hull are pairwise disjoint.
inline SeparationReport verify_ssc(const IFSystem& ifs) {
  SeparationReport report;
  report.hull = attractor_hull(ifs);
  std::vector<Box> images;
  for (const auto& f : ifs.maps()) images.push_back(f.image(report.hull));
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      margin = std::min(margin, box_separation(images[i], images[j]));
  if (std::abs(margin) <= kDistanceTol) margin = 0.0;
  report.margin = margin;
  report.ssc_holds = margin > 0.0;
  return report;
}

/// True when the images of the hull tile it (diagonal linear parts, disjoint
/// interiors, sum of c_i^m equal to one) and p_i = c_i^m, so that the invariant
/// measure is normalized Lebesgue measure on the hull.
inline bool is_uniform_tiling(const IFSystem& ifs) {
  const std::size_t m = ifs.dim();
  const Box hull = attractor_hull(ifs);
  const double volume = hull.volume();
  if (!(volume > 0.0)) return false;
  CompensatedSum covered;
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    const auto& f = ifs.maps()[i];
    if (!f.is_diagonal()) return false;
    const double share = std::pow(f.ratio(), static_cast<double>(m));
    if (std::abs(share - ifs.probabilities()[i]) > 1e-12) return false;
    covered.add(share);
  }
  if (std::abs(covered.value() - 1.0) > 1e-12) return false;
  std::vector<Box> images;
  for (const auto& f : ifs.maps()) images.push_back(f.image(hull));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      double overlap = 1.0;
      for (std::size_t d = 0; d < m; ++d)
        overlap *= std::max(0.0, std::min(images[i].hi[d], images[j].hi[d]) -
                                     std::max(images[i].lo[d], images[j].lo[d]));
      if (overlap > 1e-12 * volume) return false;
    }
  return true;
}

inline constexpr std::size_t kDefaultWordCap = std::size_t{1} << 20;

struct Discretization {
  DiscreteMeasure measure;
  double error_bound = 0.0;  // bound on the Kantorovich distance to the invariant measure
};

/// Invariant measure realized on the N^k images f_w(x0) of the hull center,
/// weighted by p_w.
inline Discretization discretize_depth(const IFSystem& ifs, int depth,
                                       std::size_t word_cap = kDefaultWordCap) {
  require(depth >= 0, ErrorKind::invalid_input, "discretize_depth: depth must be nonnegative");
  std::size_t words = 1;
  for (int k = 0; k < depth; ++k) {
    require(words <= word_cap / ifs.size(), ErrorKind::resource,
            "discretize_depth: N^k = " + std::to_string(ifs.size()) + "^" + std::to_string(depth) +
                " words exceeds cap " + std::to_string(word_cap));
    words *= ifs.size();
  }
  const Box hull = attractor_hull(ifs);
  const std::size_t m = ifs.dim();
  std::vector<double> coords = hull.center();
  std::vector<double> weights{1.0};
  for (int level = 0; level < depth; ++level) {
    std::vector<double> next_coords;
    std::vector<double> next_weights;
    next_coords.reserve(coords.size() * ifs.size());
    next_weights.reserve(weights.size() * ifs.size());
    for (std::size_t i = 0; i < ifs.size(); ++i) {
      const auto& f = ifs.maps()[i];
      for (std::size_t w = 0; w < weights.size(); ++w) {
        const Point y = f.apply(std::span<const double>(coords.data() + w * m, m));
        next_coords.insert(next_coords.end(), y.begin(), y.end());
        next_weights.push_back(ifs.probabilities()[i] * weights[w]);
      }
    }
    coords = std::move(next_coords);
    weights = std::move(next_weights);
  }
  const double bound = std::pow(ifs.max_ratio(), depth) * hull.diameter();
  return {DiscreteMeasure(m, std::move(coords), std::move(weights)), bound};
}

/// Random-iteration sample of the invariant measure; deterministic in `seed`.
inline PointSet chaos_game(const IFSystem& ifs, std::size_t n, std::size_t burn_in,
                           std::uint64_t seed) {
  require(n >= 1, ErrorKind::invalid_input, "chaos_game: n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> cumulative;
  double acc = 0.0;
  for (double p : ifs.probabilities()) cumulative.push_back(acc += p);
  Point x = attractor_hull(ifs).center();
  std::vector<double> out;
  out.reserve(n * ifs.dim());
  for (std::size_t step = 0; step < burn_in + n; ++step) {
    const double u = uniform01(rng) * acc;
    const auto pick = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                 cumulative.begin()),
        ifs.size() - 1);
    x = ifs.maps()[pick].apply(x);
    if (step >= burn_in) out.insert(out.end(), x.begin(), x.end());
  }
  return PointSet(ifs.dim(), std::move(out));
}

/// Common contraction ratio of every map, or an invalid-input error.
inline double common_ratio(const IFSystem& ifs) {
  const double c = ifs.maps().front().ratio();
  for (const auto& f : ifs.maps())
    require(std::abs(f.ratio() - c) <= 1e-12, ErrorKind::invalid_input,
            "common_ratio: maps do not share one similarity ratio");
  return c;
}

/// Product system (f_i x g_j) on R^{m1+m2} with weights p_i q_j, ordered with
/// i major. Both systems must use one common ratio.
inline IFSystem product_ifs(const IFSystem& first, const IFSystem& second) {
  const double c = common_ratio(first);
  require(std::abs(common_ratio(second) - c) <= 1e-12, ErrorKind::invalid_input,
          "product_ifs: the two systems use different similarity ratios");
  const std::size_t m1 = first.dim();
  const std::size_t m2 = second.dim();
  const std::size_t m = m1 + m2;
  std::vector<SimilarityMap> maps;
  std::vector<double> probs;
  for (std::size_t i = 0; i < first.size(); ++i)
    for (std::size_t j = 0; j < second.size(); ++j) {
      const auto& f = first.maps()[i];
      const auto& g = second.maps()[j];
      Point offset(f.offset());
      offset.insert(offset.end(), g.offset().begin(), g.offset().end());
      std::vector<double> o(m * m, 0.0);
      for (std::size_t a = 0; a < m1; ++a)
        for (std::size_t b = 0; b < m1; ++b) o[a * m + b] = f.orthogonal()[a * m1 + b];
      for (std::size_t a = 0; a < m2; ++a)
        for (std::size_t b = 0; b < m2; ++b) o[(m1 + a) * m + m1 + b] = g.orthogonal()[a * m2 + b];
      maps.emplace_back(c, std::move(offset), std::move(o));
      probs.push_back(first.probabilities()[i] * second.probabilities()[j]);
    }
  return IFSystem(std::move(maps), std::move(probs));
}

inline void require_ssc(const IFSystem& ifs, const char* where) {
  require(verify_ssc(ifs).ssc_holds, ErrorKind::precondition,
          std::string(where) + ": strong separation is not certified for this system");
}

/// Lower dimension of the invariant measure under SSC: min_i log p_i / log c_i.
inline double lower_dim_formula(const IFSystem& ifs) {
  require_ssc(ifs, "lower_dim_formula");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ifs.size(); ++i)
    best = std::min(best, std::log(ifs.probabilities()[i]) / std::log(ifs.maps()[i].ratio()));
  return best;
}

/// Hausdorff dimension of the invariant measure: entropy over Lyapunov exponent.
inline double hausdorff_dim_formula(const IFSystem& ifs) {
  require_ssc(ifs, "hausdorff_dim_formula");
  CompensatedSum entropy;
  CompensatedSum lyapunov;
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    const double p = ifs.probabilities()[i];
    entropy.add(-p * std::log(p));
    lyapunov.add(-p * std::log(ifs.maps()[i].ratio()));
  }
  return entropy.value() / lyapunov.value();
}

/// Lower dimension of the product measure as the sum of the factors' lower
/// dimensions, cross-checked against the formula on the product system.
inline double product_lower_dim(const IFSystem& first, const IFSystem& second) {
  const IFSystem product = product_ifs(first, second);
  const double sum = lower_dim_formula(first) + lower_dim_formula(second);
  const double direct = lower_dim_formula(product);
  require(std::abs(sum - direct) <= 1e-12, ErrorKind::numerical_failure,
          "product_lower_dim: additivity check failed");
  return sum;
}

/// Equal-weight two-map system on [0, 1] with ratio 2^{-1/alpha}; alpha = 1
/// gives the halving system whose invariant measure is Lebesgue on [0, 1].
inline IFSystem equal_weight_line_system(double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, ErrorKind::invalid_input,
          "equal_weight_line_system: alpha must lie in (0, 1]");
  const double c = std::exp2(-1.0 / alpha);
  return IFSystem::on_line(c, {0.0, 1.0 - c}, {0.5, 0.5});
}

/// Product of m equal-weight line systems, each carrying alpha / m. All
/// dimensions of the invariant measure equal alpha.
inline IFSystem equal_weight_system(double alpha, std::size_t m) {
  require(m >= 1, ErrorKind::invalid_input, "equal_weight_system: dimension must be positive");
  require(alpha > 0.0 && alpha <= static_cast<double>(m), ErrorKind::invalid_input,
          "equal_weight_system: alpha must lie in (0, m]");
  const double share = alpha / static_cast<double>(m);
  IFSystem out = equal_weight_line_system(share);
  for (std::size_t axis = 1; axis < m; ++axis) {
    // the last axis absorbs the rounding so the shares sum to alpha
    const double part = axis + 1 == m ? alpha - share * static_cast<double>(m - 1) : share;
    out = product_ifs(out, equal_weight_line_system(std::min(part, 1.0)));
  }
  return out;
}

}  // namespace fracdim

#endif  // FRACDIM_IFS_HPP
