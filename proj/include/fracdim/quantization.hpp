#ifndef FRACDIM_QUANTIZATION_HPP
#define FRACDIM_QUANTIZATION_HPP

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
#include "fracdim/ifs.hpp"
#include "fracdim/measure.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

struct QuantizerResult {
  int n = 0;
  double r = 0.0;
  PointSet centers;
  double error = 0.0;
  bool exact = false;
};

/// sum_x w(x) min_c |x - c|^r over the given centers.
inline double quantization_error(const DiscreteMeasure& mu, const PointSet& centers, double r) {
  require_same_dim(mu.dim(), centers.dim(), "quantization_error");
  CompensatedSum total;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c)
      nearest = std::min(nearest, euclidean_distance(mu[i], centers[c]));
    total.add(mu.weight(i) * std::pow(nearest, r));
  }
  return total.value();
}

namespace detail {

/// Minimizer of a convex function on [lo, hi] by golden-section search.
template <class F>
double golden_section_min(F&& f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200; ++it) {
    if (b - a <= 1e-15 * std::max({1.0, std::abs(a), std::abs(b)})) break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

struct ClusterFit {
  double cost = 0.0;
  double center = 0.0;
};

// Optimal single center for atoms [i, j) of sorted 1D data. r = 1 uses the
// weighted median and returns the midpoint of a flat minimum; r = 2 the
// weighted mean; other orders (r >= 1, convex) a golden-section search.
inline ClusterFit fit_cluster(std::span<const double> xs, std::span<const double> ws,
                              std::size_t i, std::size_t j, double r) {
  ClusterFit fit;
  if (j - i == 1) {
    fit.center = xs[i];
    return fit;
  }
  if (r == 2.0) {
    CompensatedSum mass;
    CompensatedSum moment;
    for (std::size_t t = i; t < j; ++t) {
      mass.add(ws[t]);
      moment.add(ws[t] * xs[t]);
    }
    fit.center = moment.value() / mass.value();
  } else if (r == 1.0) {
    CompensatedSum mass;
    for (std::size_t t = i; t < j; ++t) mass.add(ws[t]);
    const double half = 0.5 * mass.value();
    CompensatedSum left;
    std::size_t m = i;
    for (; m < j; ++m) {
      left.add(ws[m]);
      if (left.value() >= half - 1e-12 * mass.value()) break;
    }
    fit.center = xs[m];
    if (m + 1 < j && std::abs(left.value() - half) <= 1e-12 * mass.value())
      fit.center = 0.5 * (xs[m] + xs[m + 1]);
  } else {
    auto f = [&](double c) {
      CompensatedSum acc;
      for (std::size_t t = i; t < j; ++t) acc.add(ws[t] * std::pow(std::abs(xs[t] - c), r));
      return acc.value();
    };
    fit.center = golden_section_min(f, xs[i], xs[j - 1]);
  }
  CompensatedSum cost;
  for (std::size_t t = i; t < j; ++t) cost.add(ws[t] * std::pow(std::abs(xs[t] - fit.center), r));
  fit.cost = cost.value();
  return fit;
}

/// Suffix dynamic program over contiguous clusters of sorted 1D atoms:
/// best[k][i] = optimal cost of atoms [i, s) split into exactly k clusters.
class Exact1dTable {
 public:
  Exact1dTable(const DiscreteMeasure& mu, std::size_t max_clusters, double r) : r_(r) {
    require(mu.dim() == 1, ErrorKind::unsupported_order,
            "exact quantizer: only one-dimensional measures are supported");
    require(r >= 1.0 && std::isfinite(r), ErrorKind::unsupported_order,
            "exact quantizer: order r must be at least 1");
    require(max_clusters >= 1, ErrorKind::invalid_input, "exact quantizer: n must be positive");
    const std::size_t s = mu.size();
    // shift to the leftmost atom so results are translation invariant to rounding
    const double origin = mu[0][0];
    xs_.resize(s);
    ws_.assign(mu.weights().begin(), mu.weights().end());
    for (std::size_t t = 0; t < s; ++t) xs_[t] = mu[t][0] - origin;
    origin_ = origin;
    k_max_ = std::min(max_clusters, s);
    const double inf = std::numeric_limits<double>::infinity();
    best_.assign((k_max_ + 1) * (s + 1), inf);
    at(0, s) = 0.0;

    std::vector<double> prefix_w(s + 1, 0.0);
    std::vector<double> prefix_wx(s + 1, 0.0);
    {
      CompensatedSum pw;
      CompensatedSum pwx;
      for (std::size_t t = 0; t < s; ++t) {
        pw.add(ws_[t]);
        pwx.add(ws_[t] * xs_[t]);
        prefix_w[t + 1] = pw.value();
        prefix_wx[t + 1] = pwx.value();
      }
    }

    for (std::size_t i = s; i-- > 0;) {
      // running statistics of cluster [i, j)
      double mass = 0.0;
      double mean = 0.0;
      double m2 = 0.0;
      std::size_t median = i;
      for (std::size_t j = i + 1; j <= s; ++j) {
        double cost = 0.0;
        if (r == 2.0) {
          const double w = ws_[j - 1];
          const double x = xs_[j - 1];
          mass += w;
          const double delta = x - mean;
          mean += delta * w / mass;
          m2 += w * delta * (x - mean);
          cost = std::max(0.0, m2);
        } else if (r == 1.0) {
          const double total = prefix_w[j] - prefix_w[i];
          while (prefix_w[median + 1] - prefix_w[i] < 0.5 * total - 1e-12 * total) ++median;
          const double c = xs_[median];
          const double wl = prefix_w[median + 1] - prefix_w[i];
          const double sl = prefix_wx[median + 1] - prefix_wx[i];
          const double wr = total - wl;
          const double sr = (prefix_wx[j] - prefix_wx[i]) - sl;
          cost = std::max(0.0, c * wl - sl + sr - c * wr);
        } else {
          cost = fit_cluster(xs_, ws_, i, j, r).cost;
        }
        const std::size_t rest = s - j;
        for (std::size_t k = 1; k <= k_max_; ++k) {
          if (k - 1 > rest) break;
          if (k == 1 && j != s) continue;
          const double tail = at(k - 1, j);
          if (tail == inf) continue;
          at(k, i) = std::min(at(k, i), cost + tail);
        }
      }
    }
  }

  std::size_t support_size() const { return xs_.size(); }
  std::size_t max_clusters() const { return k_max_; }

  /// Optimal cost with at most n centers.
  double value(std::size_t n) const {
    if (n >= xs_.size()) return 0.0;
    return at(n, 0);
  }

  /// Centers of an optimal n-quantizer; among ties the lexicographically
  /// smallest sequence of cluster boundaries is returned.
  std::vector<double> centers(std::size_t n) const {
    const std::size_t s = xs_.size();
    std::vector<double> out;
    if (n >= s) {
      for (double x : xs_) out.push_back(x + origin_);
      return out;
    }
    std::size_t i = 0;
    for (std::size_t k = n; k >= 1; --k) {
      std::size_t j = s;
      if (k > 1) {
        const double target = at(k, i);
        const double tol = 1e-12 * std::max(1.0, std::abs(target));
        for (j = i + 1; j + (k - 1) <= s; ++j)
          if (fit_cluster(xs_, ws_, i, j, r_).cost + at(k - 1, j) <= target + tol) break;
        require(j + (k - 1) <= s, ErrorKind::numerical_failure,
                "exact quantizer: boundary reconstruction failed");
      }
      out.push_back(fit_cluster(xs_, ws_, i, j, r_).center + origin_);
      i = j;
    }
    return out;
  }

 private:
  double& at(std::size_t k, std::size_t i) { return best_[k * (xs_.size() + 1) + i]; }
  double at(std::size_t k, std::size_t i) const { return best_[k * (xs_.size() + 1) + i]; }

  double r_;
  double origin_ = 0.0;
  std::size_t k_max_ = 0;
  std::vector<double> xs_;
  std::vector<double> ws_;
  std::vector<double> best_;
};

}  // namespace detail

/// Exact n-th quantization error of order r >= 1 for a measure on the line.
/// Optimal cells are intervals of the sorted support, so a dynamic program over
/// contiguous clusterings is exact.
inline QuantizerResult quant_error_exact_1d(const DiscreteMeasure& mu, int n, double r) {
  require(n >= 1, ErrorKind::invalid_input, "quant_error_exact_1d: n must be positive");
  const detail::Exact1dTable table(mu, static_cast<std::size_t>(n), r);
  PointSet centers = PointSet::on_line(table.centers(static_cast<std::size_t>(n)));
  const double error = static_cast<std::size_t>(n) >= mu.size() ? 0.0
                                                                 : quantization_error(mu, centers, r);
  return {n, r, std::move(centers), error, true};
}

namespace detail {

inline std::vector<double> lloyd_recenter(const DiscreteMeasure& mu,
                                          const std::vector<std::size_t>& members,
                                          std::vector<double> start, double r) {
  const std::size_t m = mu.dim();
  if (r == 2.0) {
    CompensatedSum mass;
    std::vector<CompensatedSum> moment(m);
    for (std::size_t i : members) {
      mass.add(mu.weight(i));
      for (std::size_t d = 0; d < m; ++d) moment[d].add(mu.weight(i) * mu[i][d]);
    }
    for (std::size_t d = 0; d < m; ++d) start[d] = moment[d].value() / mass.value();
    return start;
  }
  // coordinate-wise convex search inside the cell's bounding box
  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
  for (std::size_t i : members)
    for (std::size_t d = 0; d < m; ++d) {
      lo[d] = std::min(lo[d], mu[i][d]);
      hi[d] = std::max(hi[d], mu[i][d]);
    }
  const int sweeps = m == 1 ? 1 : 4;
  for (int sweep = 0; sweep < sweeps; ++sweep)
    for (std::size_t d = 0; d < m; ++d) {
      auto f = [&](double value) {
        std::vector<double> c = start;
        c[d] = value;
        CompensatedSum acc;
        for (std::size_t i : members) acc.add(mu.weight(i) * std::pow(euclidean_distance(mu[i], c), r));
        return acc.value();
      };
      if (hi[d] > lo[d]) start[d] = golden_section_min(f, lo[d], hi[d]);
      else start[d] = lo[d];
    }
  return start;
}

/// Lloyd iteration from `centers` (row-major, n x m) until the error stops
/// decreasing; returns the final error and leaves the centers in place.
/// `work` accumulates the number of point-center distances evaluated.
inline double lloyd_descend(const DiscreteMeasure& mu, std::vector<double>& centers, double r,
                            std::size_t& work) {
  const std::size_t s = mu.size();
  const std::size_t m = mu.dim();
  const std::size_t n = centers.size() / m;
  double error = std::numeric_limits<double>::infinity();
  for (int iteration = 0; iteration < 300; ++iteration) {
    std::vector<std::vector<std::size_t>> cells(n);
    CompensatedSum total;
    work += s * n;
    for (std::size_t i = 0; i < s; ++i) {
      std::size_t owner = 0;
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < n; ++c) {
        const double d = euclidean_distance(mu[i], std::span<const double>(centers.data() + c * m, m));
        if (d < nearest) {
          nearest = d;
          owner = c;
        }
      }
      cells[owner].push_back(i);
      total.add(mu.weight(i) * std::pow(nearest, r));
    }
    const double previous = error;
    error = total.value();
    if (iteration > 0 && previous - error <= 1e-15 * previous) break;
    for (std::size_t c = 0; c < n; ++c) {
      if (cells[c].empty()) continue;
      std::vector<double> start(centers.begin() + static_cast<std::ptrdiff_t>(c * m),
                                centers.begin() + static_cast<std::ptrdiff_t>((c + 1) * m));
      const auto moved = lloyd_recenter(mu, cells[c], std::move(start), r);
      std::copy(moved.begin(), moved.end(), centers.begin() + static_cast<std::ptrdiff_t>(c * m));
    }
  }
  return quantization_error(mu, PointSet(m, centers), r);
}

inline constexpr std::size_t kSwapCandidates = 256;
inline constexpr std::size_t kSwapWork = std::size_t{1} << 25;

}  // namespace detail

/// Upper bound on the n-th quantization error. Each of `restarts` runs draws
/// its own stream from `seed`, seeds n distinct support points by weighted
/// sampling without replacement and descends by Lloyd iteration. Codebooks
/// are then polished, best first, by swap search: move one center onto a
/// support point, descend again, keep the result if the error drops, until no
/// single swap helps. Swap candidates are the whole support up to
/// kSwapCandidates atoms and an evenly strided subset beyond that; polishing
/// stops once kSwapWork point-center distances have been spent, so the
/// result depends only on the inputs.
inline QuantizerResult quant_error_lloyd(const DiscreteMeasure& mu, int n, double r, int restarts,
                                         std::uint64_t seed) {
  require(n >= 1, ErrorKind::invalid_input, "quant_error_lloyd: n must be positive");
  require(r > 0.0 && std::isfinite(r), ErrorKind::invalid_input,
          "quant_error_lloyd: r must be positive");
  require(restarts >= 1, ErrorKind::invalid_input, "quant_error_lloyd: restarts must be positive");
  const std::size_t s = mu.size();
  const std::size_t m = mu.dim();
  if (static_cast<std::size_t>(n) >= s) return {n, r, mu.support(), 0.0, false};

  std::vector<std::pair<double, std::vector<double>>> runs;
  for (int restart = 0; restart < restarts; ++restart) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
    std::vector<double> remaining(mu.weights().begin(), mu.weights().end());
    std::vector<double> centers;
    for (int c = 0; c < n; ++c) {
      const double total = compensated_sum(remaining);
      double u = uniform01(rng) * total;
      std::size_t pick = 0;
      for (std::size_t i = 0; i < s; ++i) {
        if (remaining[i] <= 0.0) continue;
        pick = i;
        if (u < remaining[i]) break;
        u -= remaining[i];
      }
      remaining[pick] = 0.0;
      centers.insert(centers.end(), mu[pick].begin(), mu[pick].end());
    }
    std::size_t unused = 0;
    const double error = detail::lloyd_descend(mu, centers, r, unused);
    runs.emplace_back(error, std::move(centers));
  }
  // stable: equal errors keep restart order
  std::stable_sort(runs.begin(), runs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  const std::size_t stride = (s + detail::kSwapCandidates - 1) / detail::kSwapCandidates;
  std::size_t work = 0;
  for (auto& [error, centers] : runs) {
    for (bool improved = true; improved && error > 0.0;) {
      improved = false;
      for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c)
        for (std::size_t i = 0; i < s && work < detail::kSwapWork; i += stride) {
          std::vector<double> trial = centers;
          std::copy(mu[i].begin(), mu[i].end(), trial.begin() + static_cast<std::ptrdiff_t>(c * m));
          const double e = detail::lloyd_descend(mu, trial, r, work);
          if (e < error * (1.0 - 1e-12)) {
            error = e;
            centers = std::move(trial);
            improved = true;
          }
        }
    }
  }
  const auto best = std::min_element(runs.begin(), runs.end(),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> best_centers = std::move(best->second);
  const double best_error = best->first;
  return {n, r, PointSet(m, std::move(best_centers)), best_error, false};
}

enum class QuantEngine { exact1d, lloyd };

struct ErrorCurve {
  struct Entry {
    int n = 0;
    double value = 0.0;
    bool exact = false;
  };
  double r = 0.0;
  std::vector<Entry> entries;
};

struct LloydOptions {
  int restarts = 16;
  std::uint64_t seed = 0xF12AC7;
};

/// V_{n,r} for n = 1..n_max. The exact engine reads every n off one table;
/// Lloyd values are clamped to the running minimum, since an (n-1)-point
/// codebook is also an n-point codebook.
inline ErrorCurve error_curve(const DiscreteMeasure& mu, int n_max, double r, QuantEngine engine,
                              const LloydOptions& lloyd = {}) {
  require(n_max >= 1, ErrorKind::invalid_input, "error_curve: n_max must be positive");
  ErrorCurve curve;
  curve.r = r;
  if (engine == QuantEngine::exact1d) {
    const detail::Exact1dTable table(mu, static_cast<std::size_t>(n_max), r);
    for (int n = 1; n <= n_max; ++n)
      curve.entries.push_back({n, table.value(static_cast<std::size_t>(n)), true});
  } else {
    for (int n = 1; n <= n_max; ++n) {
      const auto result = quant_error_lloyd(mu, n, r, lloyd.restarts,
                                            derive_seed(lloyd.seed, static_cast<std::uint64_t>(n)));
      curve.entries.push_back({n, result.error, false});
    }
  }
  for (std::size_t k = 1; k < curve.entries.size(); ++k) {
    auto& cur = curve.entries[k];
    const double prev = curve.entries[k - 1].value;
    if (cur.value > prev) {
      require(engine == QuantEngine::lloyd || cur.value - prev <= 1e-12 * std::max(1.0, prev),
              ErrorKind::numerical_failure, "error_curve: exact values increased with n");
      cur.value = prev;
    }
  }
  return curve;
}

struct FitWindow {
  int n_min = 0;  // 0: start of the top half of the curve
  int n_max = 0;  // 0: last entry
};

struct QuantDimEstimate {
  double value = 0.0;
  double lower_proxy = 0.0;  // min of r log n / -log V over the window
  double upper_proxy = 0.0;  // max of the same sequence
  int n_min = 0;
  int n_max = 0;
  std::size_t points_used = 0;
  std::vector<std::pair<int, double>> raw;  // (n, r log n / -log V_n)
};

/// Quantization dimension from an error curve: least-squares slope of log n
/// against -log(V_n) / r over the fit window, with the raw ratio sequence as
/// lower/upper proxies. A curve that reaches zero belongs to a finitely
/// supported measure and reports 0.
inline QuantDimEstimate estimate_quant_dim(const ErrorCurve& curve, FitWindow window = {}) {
  require(!curve.entries.empty(), ErrorKind::insufficient_data, "estimate_quant_dim: empty curve");
  QuantDimEstimate est;
  const int last = curve.entries.back().n;
  est.n_max = window.n_max > 0 ? std::min(window.n_max, last) : last;
  est.n_min = window.n_min > 0 ? window.n_min : std::max(2, est.n_max / 2);
  if (curve.entries.back().value == 0.0) {
    est.value = 0.0;
    return est;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  est.lower_proxy = std::numeric_limits<double>::infinity();
  est.upper_proxy = -std::numeric_limits<double>::infinity();
  for (const auto& e : curve.entries) {
    if (e.n < est.n_min || e.n > est.n_max || e.n < 2 || !(e.value > 0.0)) continue;
    xs.push_back(-std::log(e.value) / curve.r);
    ys.push_back(std::log(static_cast<double>(e.n)));
    if (e.value < 1.0) {
      const double ratio = curve.r * std::log(static_cast<double>(e.n)) / -std::log(e.value);
      est.raw.emplace_back(e.n, ratio);
      est.lower_proxy = std::min(est.lower_proxy, ratio);
      est.upper_proxy = std::max(est.upper_proxy, ratio);
    }
  }
  est.points_used = xs.size();
  require(xs.size() >= 3, ErrorKind::insufficient_data,
          "estimate_quant_dim: fewer than 3 usable curve points in the fit window");
  const double k = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  require(sxx > 0.0, ErrorKind::insufficient_data, "estimate_quant_dim: curve is flat in the window");
  est.value = sxy / sxx;
  if (est.raw.empty()) est.lower_proxy = est.upper_proxy = est.value;
  return est;
}

/// (n, n^{r/s} V_n) for every curve entry.
inline std::vector<std::pair<int, double>> quant_coefficients(const ErrorCurve& curve, double s) {
  require(s > 0.0, ErrorKind::invalid_input, "quant_coefficients: s must be positive");
  std::vector<std::pair<int, double>> out;
  for (const auto& e : curve.entries)
    out.emplace_back(e.n, std::pow(static_cast<double>(e.n), curve.r / s) * e.value);
  return out;
}

struct GLSolution {
  double value = 0.0;     // D_r
  double residual = 0.0;  // sum (p_i c_i^r)^{D/(D+r)} - 1
  double x = 0.0;         // D / (D + r)
  double lo = 0.0;        // final bracket, in D
  double hi = 0.0;
};

/// Root of sum_i (p_i c_i^r)^{D/(D+r)} = 1, by bisection on x = D/(D+r) in (0, 1)
/// where the left side is strictly decreasing from N to sum_i p_i c_i^r < 1.
inline GLSolution solve_graf_luschgy(std::span<const double> p, std::span<const double> c, double r) {
  require(p.size() == c.size() && p.size() >= 2, ErrorKind::invalid_input,
          "solve_graf_luschgy: need matching weights and ratios for at least two maps");
  require(r > 0.0 && std::isfinite(r), ErrorKind::invalid_input,
          "solve_graf_luschgy: r must be positive");
  for (double pi : p)
    require(pi > 0.0 && std::isfinite(pi), ErrorKind::invalid_input,
            "solve_graf_luschgy: weights must be positive");
  for (double ci : c)
    require(ci > 0.0 && ci < 1.0, ErrorKind::invalid_input,
            "solve_graf_luschgy: ratios must lie in (0, 1)");
  require(std::abs(compensated_sum(p) - 1.0) <= kMassTol, ErrorKind::invalid_input,
          "solve_graf_luschgy: weights must sum to 1");

  std::vector<double> log_terms;
  for (std::size_t i = 0; i < p.size(); ++i) log_terms.push_back(std::log(p[i]) + r * std::log(c[i]));
  auto phi = [&](double x) {
    CompensatedSum acc;
    for (double lt : log_terms) acc.add(std::exp(x * lt));
    return acc.value();
  };

  double lo = 0.0;
  double hi = 1.0;
  double x = 0.5;
  for (int it = 0; it < 200; ++it) {
    x = 0.5 * (lo + hi);
    const double f = phi(x) - 1.0;
    if (std::abs(f) <= 1e-13 || x == lo || x == hi) break;
    if (f > 0.0) lo = x;
    else hi = x;
  }
  GLSolution sol;
  sol.x = x;
  sol.value = r * x / (1.0 - x);
  sol.lo = r * lo / (1.0 - lo);
  sol.hi = r * hi / (1.0 - hi);
  sol.residual = phi(sol.value / (sol.value + r)) - 1.0;
  require(std::abs(sol.residual) <= 1e-12, ErrorKind::numerical_failure,
          "solve_graf_luschgy: residual above 1e-12");
  return sol;
}

inline GLSolution solve_graf_luschgy(const IFSystem& ifs, double r) {
  const auto ratios = ifs.ratios();
  return solve_graf_luschgy(ifs.probabilities(), ratios, r);
}

/// A system whose invariant measure has quantization dimension alpha for every
/// order r: equal weights, ratio 2^{-alpha_axis} per axis. alpha = m gives the
/// uniform (Lebesgue) system on the unit cube.
inline IFSystem inverse_graf_luschgy(double alpha, double r, std::size_t m) {
  require(r > 0.0, ErrorKind::invalid_input, "inverse_graf_luschgy: r must be positive");
  require(alpha > 0.0 && alpha <= static_cast<double>(m), ErrorKind::invalid_input,
          "inverse_graf_luschgy: alpha must lie in (0, m]");
  return equal_weight_system(alpha, m);
}

/// n equally spaced atoms of equal weight on [lo, hi]; the discrete stand-in
/// for the uniform measure.
inline DiscreteMeasure uniform_grid_measure(std::size_t n, double lo = 0.0, double hi = 1.0) {
  require(n >= 2, ErrorKind::invalid_input, "uniform_grid_measure: need at least two atoms");
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return DiscreteMeasure(1, std::move(xs), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

}  // namespace fracdim

#endif  // FRACDIM_QUANTIZATION_HPP
