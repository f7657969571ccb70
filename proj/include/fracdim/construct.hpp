#ifndef FRACDIM_CONSTRUCT_HPP
#define FRACDIM_CONSTRUCT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/error.hpp"
#include "fracdim/geometry.hpp"
#include "fracdim/ifs.hpp"
#include "fracdim/measure.hpp"
#include "fracdim/numeric.hpp"
#include "fracdim/quantization.hpp"
#include "fracdim/symbolic.hpp"

namespace fracdim {

/// Greedy eps-net in lexicographic order: a point joins the net unless an
/// existing anchor lies strictly closer than eps. Anchors are therefore at
/// least eps apart and every point is within distance < eps of an anchor.
inline PointSet epsilon_net(const PointSet& a, double eps) {
  require(eps > 0.0 && std::isfinite(eps), ErrorKind::invalid_input,
          "epsilon_net: eps must be positive");
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    auto p = a[i];
    auto q = a[j];
    return std::lexicographical_compare(p.begin(), p.end(), q.begin(), q.end());
  });
  std::vector<std::size_t> anchors;
  for (std::size_t i : order) {
    bool covered = false;
    for (std::size_t k : anchors)
      if (euclidean_distance(a[i], a[k]) < eps) {
        covered = true;
        break;
      }
    if (!covered) anchors.push_back(i);
  }
  std::vector<double> coords;
  for (std::size_t k : anchors) coords.insert(coords.end(), a[k].begin(), a[k].end());
  return PointSet(a.dim(), std::move(coords));
}

struct Block {
  enum class Kind { point, cantor, interval };
  Kind kind = Kind::point;
  double ratio = 0.0;     // cantor contraction ratio
  int depth = 0;
  double diameter = 0.0;  // eps / 4 for cantor and interval blocks
};

inline const char* to_string(Block::Kind kind) {
  switch (kind) {
    case Block::Kind::point: return "point";
    case Block::Kind::cantor: return "cantor";
    case Block::Kind::interval: return "interval";
  }
  return "unknown";
}

struct SetApproximation {
  PointSet anchors;
  Block block;
  PointSet realized;
  double certified_lower_dim = 0.0;
  std::optional<double> certified_hausdorff_dim;
  std::vector<std::string> certificate;
  double hausdorff_check = 0.0;  // hausdorff_distance(input, realized), < eps
  double block_gap = std::numeric_limits<double>::infinity();  // min gap between distinct blocks
};

namespace detail {

inline void require_line(const PointSet& a, const char* where) {
  require(a.dim() == 1, ErrorKind::unsupported_order,
          std::string(where) + ": set constructions are one-dimensional");
}

inline void require_eps_depth(double eps, int depth, const char* where) {
  require(eps > 0.0 && std::isfinite(eps), ErrorKind::invalid_input,
          std::string(where) + ": eps must be positive");
  require(depth >= 1 && depth <= 24, ErrorKind::invalid_input,
          std::string(where) + ": depth must lie in [1, 24]");
}

// Endpoints of the 2^k level-k intervals of the central Cantor set of ratio
// lambda in [0, 1].
inline std::vector<double> cantor_endpoints(double lambda, int depth) {
  std::vector<double> left{0.0};
  double length = 1.0;
  for (int k = 0; k < depth; ++k) {
    std::vector<double> next;
    next.reserve(left.size() * 2);
    for (double l : left) {
      next.push_back(l);
      next.push_back(l + (1.0 - lambda) * length);
    }
    left = std::move(next);
    length *= lambda;
  }
  std::vector<double> out;
  out.reserve(left.size() * 2);
  for (double l : left) {
    out.push_back(l);
    out.push_back(l + length);
  }
  return out;
}

inline std::vector<double> dyadic_sample(double lo, double hi, int depth) {
  const std::size_t n = std::size_t{1} << depth;
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  out.back() = hi;
  return out;
}

inline double min_gap_between_blocks(const std::vector<std::pair<double, double>>& blocks) {
  std::vector<std::pair<double, double>> sorted = blocks;
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i].first - sorted[i - 1].second);
  return gap;
}

inline SetApproximation build_blocks(const PointSet& a, double eps, double gamma, int depth,
                                     const char* where) {
  require_line(a, where);
  require_eps_depth(eps, depth, where);
  require(gamma >= 0.0 && gamma <= 1.0, ErrorKind::invalid_input,
          std::string(where) + ": gamma must lie in [0, 1]");
  const PointSet anchors = epsilon_net(a, eps);
  Block block;
  block.depth = depth;
  std::vector<double> unit;  // block shape on [0, 1]
  double certified = 0.0;
  if (gamma == 0.0) {
    block.kind = Block::Kind::point;
    unit = {0.0};
  } else if (gamma < 1.0) {
    block.kind = Block::Kind::cantor;
    block.ratio = std::exp2(-1.0 / gamma);
    block.diameter = eps / 4.0;
    unit = cantor_endpoints(block.ratio, depth);
    certified = std::log(2.0) / -std::log(block.ratio);
  } else {
    block.kind = Block::Kind::interval;
    block.diameter = eps / 4.0;
    unit = dyadic_sample(0.0, 1.0, depth);
    certified = 1.0;
  }
  std::vector<double> realized;
  std::vector<std::pair<double, double>> extents;
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    const double anchor = anchors[k][0];
    for (double u : unit) realized.push_back(anchor + block.diameter * u);
    extents.emplace_back(anchor, anchor + block.diameter);
  }
  SetApproximation out{anchors, block, PointSet::on_line(std::move(realized)), certified,
                       std::nullopt, {}, 0.0, min_gap_between_blocks(extents)};
  out.hausdorff_check = hausdorff_distance(a, out.realized);
  require(out.hausdorff_check < eps, ErrorKind::numerical_failure,
          std::string(where) + ": realized set is not within eps of the input");
  require(out.block_gap > 0.0, ErrorKind::numerical_failure,
          std::string(where) + ": blocks are not separated");
  return out;
}

}  // namespace detail

/// Union over an eps-net of copies of one block with lower dimension gamma:
/// the anchors themselves for gamma = 0, central Cantor sets of ratio
/// 2^{-1/gamma} for 0 < gamma < 1, intervals for gamma = 1. Blocks have
/// diameter eps/4 and start at their anchor, so distinct blocks are at least
/// 3 eps / 4 apart and the union has the block's dimension.
inline SetApproximation approximate_set_lower_dim(const PointSet& a, double eps, double gamma, int depth) {
  auto out = detail::build_blocks(a, eps, gamma, depth, "approximate_set_lower_dim");
  switch (out.block.kind) {
    case Block::Kind::point: out.certificate = {"finite-set-lower-dim-zero"}; break;
    case Block::Kind::cantor: out.certificate = {"central-cantor-lower-dim"}; break;
    case Block::Kind::interval: out.certificate = {"interval-lower-dim-one"}; break;
  }
  out.certificate.push_back("separated-finite-union");
  return out;
}

/// Same construction, certifying Hausdorff and lower dimension both equal to
/// gamma: every block is Ahlfors regular.
inline SetApproximation approximate_set_equal_dims(const PointSet& a, double eps, double gamma, int depth) {
  auto out = detail::build_blocks(a, eps, gamma, depth, "approximate_set_equal_dims");
  out.certified_hausdorff_dim = out.certified_lower_dim;
  out.certificate = {"ahlfors-regular-blocks", "separated-finite-union"};
  return out;
}

/// An interval around the first anchor plus the remaining anchors as isolated
/// points: lower dimension 0 (isolated points), Hausdorff dimension 1. A net
/// with one anchor gets a synthetic isolated point at distance 3 eps / 4.
inline SetApproximation approximate_set_split_dims(const PointSet& a, double eps, int depth) {
  detail::require_line(a, "approximate_set_split_dims");
  detail::require_eps_depth(eps, depth, "approximate_set_split_dims");
  const PointSet anchors = epsilon_net(a, eps);
  const double first = anchors[0][0];
  std::vector<double> realized = detail::dyadic_sample(first - eps / 2.0, first + eps / 2.0, depth);
  std::vector<std::pair<double, double>> extents{{first - eps / 2.0, first + eps / 2.0}};
  std::vector<double> isolated;
  for (std::size_t k = 1; k < anchors.size(); ++k) isolated.push_back(anchors[k][0]);
  if (isolated.empty()) isolated.push_back(first + 0.75 * eps);
  for (double p : isolated) {
    realized.push_back(p);
    extents.emplace_back(p, p);
  }
  Block block{Block::Kind::interval, 0.0, depth, eps};
  SetApproximation out{anchors, block, PointSet::on_line(std::move(realized)), 0.0, 1.0,
                       {"isolated-point-lower-dim-zero", "interval-hausdorff-dim-one"}, 0.0,
                       detail::min_gap_between_blocks(extents)};
  out.hausdorff_check = hausdorff_distance(a, out.realized);
  require(out.hausdorff_check < eps, ErrorKind::numerical_failure,
          "approximate_set_split_dims: realized set is not within eps of the input");
  require(out.block_gap > 0.0, ErrorKind::numerical_failure,
          "approximate_set_split_dims: isolated points touch the interval");
  return out;
}

struct EpsilonBudget {
  double net = 0.0;    // transport cost of pushing atoms onto the eps/2-net
  double scale = 0.0;  // mean norm of the scaled, discretized invariant measure
  double depth = 0.0;  // Kantorovich bound between the discretization and its limit
  double total() const { return net + scale + depth; }
};

struct MeasureApproximation {
  DiscreteMeasure theta;  // the input pushed onto an eps/2-net
  SymbolicMeasure symbolic;
  DiscreteMeasure realized;
  CertifiedDims certified;
  EpsilonBudget budget;
  int depth = 0;
  double factor = 0.0;                        // scale factor 2|K| / eps, 0 when no block is used
  std::optional<double> kantorovich_check;    // d_L(input, realized), computed when exact is available
};

struct MeasureConstructOptions {
  int max_depth = 24;
  std::size_t support_cap = kDefaultSupportCap;
};

namespace detail {

// Conjugate by the translation taking the hull center to the origin. The
// invariant measure is translated accordingly; its dimensions are unchanged.
inline IFSystem centered_system(const IFSystem& ifs) {
  const Point h = attractor_hull(ifs).center();
  std::vector<SimilarityMap> maps;
  for (const auto& f : ifs.maps()) {
    // f(y + h) - h = c O y + (f(h) - h)
    Point offset = f.apply(h);
    for (std::size_t d = 0; d < h.size(); ++d) offset[d] -= h[d];
    maps.emplace_back(f.ratio(), std::move(offset), f.orthogonal());
  }
  return IFSystem(std::move(maps), ifs.probabilities());
}

// Atoms moved to their nearest eps/2-net anchor, first anchor on ties.
inline std::pair<DiscreteMeasure, double> push_to_net(const DiscreteMeasure& mu, double eps) {
  const PointSet net = epsilon_net(mu.support(), eps / 2.0);
  std::vector<double> coords;
  std::vector<double> weights;
  CompensatedSum cost;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < net.size(); ++k) {
      const double d = euclidean_distance(mu[i], net[k]);
      if (d < dist) {
        dist = d;
        best = k;
      }
    }
    coords.insert(coords.end(), net[best].begin(), net[best].end());
    weights.push_back(mu.weight(i));
    cost.add(mu.weight(i) * dist);
  }
  return {DiscreteMeasure(mu.dim(), std::move(coords), std::move(weights)), cost.value()};
}

inline MeasureApproximation build_measure(const DiscreteMeasure& target, double eps,
                                          std::optional<IFSystem> system, double r, int depth,
                                          const MeasureConstructOptions& options, const char* where) {
  target.require_normalized(where);
  require(eps > 0.0 && std::isfinite(eps), ErrorKind::invalid_input,
          std::string(where) + ": eps must be positive");
  require(depth >= 1, ErrorKind::invalid_input, std::string(where) + ": depth must be positive");
  auto [theta, net_cost] = push_to_net(target, eps);
  DiracCombination combo(theta);
  const SymbolicMeasure discrete = SymbolicMeasure::dirac(combo);

  if (!system) {
    MeasureApproximation out{theta, discrete, theta, certified_dims(discrete, r), {net_cost, 0.0, 0.0},
                             0, 0.0, std::nullopt};
    if (target.dim() == 1 || target.size() + theta.size() <= kExactTransportCap)
      out.kantorovich_check = kantorovich_distance(target, theta);
    return out;
  }

  const IFSystem ifs = centered_system(*system);
  const Box hull = attractor_hull(ifs);
  const double factor = 2.0 * hull.diameter() / eps;
  const SymbolicMeasure symbolic =
      SymbolicMeasure::convolve(discrete, SymbolicMeasure::scale(SymbolicMeasure::invariant(ifs), factor));
  const CertifiedDims certified = certified_dims(symbolic, r);
  require(certified.lower_dim.has_value() && certified.quant_dim.has_value(),
          ErrorKind::numerical_failure, std::string(where) + ": block system is not certified");

  const double c = ifs.max_ratio();
  std::optional<EpsilonBudget> last;
  for (int k = depth; k <= options.max_depth; ++k) {
    std::size_t words = 1;
    bool fits = true;
    for (int level = 0; level < k && fits; ++level) {
      fits = words <= options.support_cap / ifs.size();
      words *= ifs.size();
    }
    if (!fits || words > options.support_cap / theta.size()) break;
    const DiscreteMeasure block = scale_measure(discretize_depth(ifs, k, options.support_cap).measure, factor);
    CompensatedSum mean_norm;
    const Point origin(target.dim(), 0.0);
    for (std::size_t i = 0; i < block.size(); ++i)
      mean_norm.add(block.weight(i) * euclidean_distance(block[i], origin));
    const EpsilonBudget budget{net_cost, mean_norm.value(), std::pow(c, k) * eps / 2.0};
    last = budget;
    if (!(budget.total() < eps)) continue;
    MeasureApproximation out{theta, symbolic, convolve(theta, block, options.support_cap), certified,
                             budget, k, factor, std::nullopt};
    if (target.dim() == 1 || target.size() + out.realized.size() <= kExactTransportCap) {
      out.kantorovich_check = kantorovich_distance(target, out.realized);
      require(*out.kantorovich_check < eps, ErrorKind::numerical_failure,
              std::string(where) + ": realized measure is not within eps of the input");
    }
    return out;
  }
  std::string parts = "net " + std::to_string(net_cost);
  if (last)
    parts += ", scale " + std::to_string(last->scale) + ", depth " + std::to_string(last->depth) + ", total " +
             std::to_string(last->total());
  fail(ErrorKind::budget, std::string(where) + ": eps budget not met within depth " +
                              std::to_string(options.max_depth) + " and the support cap (" + parts + ")");
}

}  // namespace detail

/// theta * lambda_1 with theta the input pushed onto an eps/2-net and
/// lambda_1 an equal-weight self-similar measure of lower dimension beta,
/// shrunk to diameter eps/2 about the origin. beta = 0 returns theta.
inline MeasureApproximation approximate_measure_lower_dim(const DiscreteMeasure& target, double eps,
                                                          double beta, int depth,
                                                          const MeasureConstructOptions& options = {}) {
  const auto m = static_cast<double>(target.dim());
  require(beta >= 0.0 && beta <= m, ErrorKind::invalid_input,
          "approximate_measure_lower_dim: beta must lie in [0, m]");
  std::optional<IFSystem> system;
  if (beta > 0.0) system.emplace(equal_weight_system(beta, target.dim()));
  return detail::build_measure(target, eps, std::move(system), 2.0, depth, options,
                               "approximate_measure_lower_dim");
}

/// As approximate_measure_lower_dim with the block chosen to have
/// quantization dimension alpha of order r.
inline MeasureApproximation approximate_measure_quant_dim(const DiscreteMeasure& target, double eps,
                                                          double alpha, double r, int depth,
                                                          const MeasureConstructOptions& options = {}) {
  const auto m = static_cast<double>(target.dim());
  require(alpha >= 0.0 && alpha <= m, ErrorKind::invalid_input,
          "approximate_measure_quant_dim: alpha must lie in [0, m]");
  std::optional<IFSystem> system;
  if (alpha > 0.0) system.emplace(inverse_graf_luschgy(alpha, r, target.dim()));
  return detail::build_measure(target, eps, std::move(system), r, depth, options,
                               "approximate_measure_quant_dim");
}

}  // namespace fracdim

#endif  // FRACDIM_CONSTRUCT_HPP
