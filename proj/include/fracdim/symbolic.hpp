#ifndef FRACDIM_SYMBOLIC_HPP
#define FRACDIM_SYMBOLIC_HPP

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracdim/error.hpp"
#include "fracdim/ifs.hpp"
#include "fracdim/measure.hpp"
#include "fracdim/quantization.hpp"

namespace fracdim {

/// Expression tree over measures. Nodes are immutable and shared.
class SymbolicMeasure {
 public:
  enum class Op { dirac, invariant, convolve, scale, translate, mixture };

  static SymbolicMeasure dirac(DiracCombination combo) {
    auto node = std::make_shared<Node>(Op::dirac);
    node->dim = combo.measure().dim();
    node->combo.emplace(std::move(combo));
    return SymbolicMeasure(std::move(node));
  }

  static SymbolicMeasure invariant(IFSystem ifs) {
    auto node = std::make_shared<Node>(Op::invariant);
    node->dim = ifs.dim();
    node->system.emplace(std::move(ifs));
    return SymbolicMeasure(std::move(node));
  }

  static SymbolicMeasure convolve(SymbolicMeasure a, SymbolicMeasure b) {
    require_same_dim(a.dim(), b.dim(), "SymbolicMeasure::convolve");
    auto node = std::make_shared<Node>(Op::convolve);
    node->dim = a.dim();
    node->children = {std::move(a), std::move(b)};
    return SymbolicMeasure(std::move(node));
  }

  static SymbolicMeasure scale(SymbolicMeasure a, double beta) {
    require(beta > 0.0 && std::isfinite(beta), ErrorKind::invalid_input,
            "SymbolicMeasure::scale: beta must be positive");
    auto node = std::make_shared<Node>(Op::scale);
    node->dim = a.dim();
    node->beta = beta;
    node->children = {std::move(a)};
    return SymbolicMeasure(std::move(node));
  }

  static SymbolicMeasure translate(SymbolicMeasure a, Point x) {
    require_same_dim(a.dim(), x.size(), "SymbolicMeasure::translate");
    auto node = std::make_shared<Node>(Op::translate);
    node->dim = a.dim();
    node->shift = std::move(x);
    node->children = {std::move(a)};
    return SymbolicMeasure(std::move(node));
  }

  static SymbolicMeasure mixture(std::vector<std::pair<double, SymbolicMeasure>> parts) {
    require(!parts.empty(), ErrorKind::invalid_input, "SymbolicMeasure::mixture: no components");
    auto node = std::make_shared<Node>(Op::mixture);
    node->dim = parts.front().second.dim();
    CompensatedSum total;
    for (auto& [w, part] : parts) {
      require(w > 0.0 && std::isfinite(w), ErrorKind::invalid_input,
              "SymbolicMeasure::mixture: weights must be positive");
      require_same_dim(node->dim, part.dim(), "SymbolicMeasure::mixture");
      total.add(w);
      node->weights.push_back(w);
      node->children.push_back(std::move(part));
    }
    require(std::abs(total.value() - 1.0) <= kMassTol, ErrorKind::invalid_input,
            "SymbolicMeasure::mixture: weights must sum to 1");
    return SymbolicMeasure(std::move(node));
  }

  Op op() const noexcept { return node_->op; }
  std::size_t dim() const noexcept { return node_->dim; }
  const DiracCombination& combination() const { return *node_->combo; }
  const IFSystem& system() const { return *node_->system; }
  const std::vector<SymbolicMeasure>& children() const noexcept { return node_->children; }
  const std::vector<double>& weights() const noexcept { return node_->weights; }
  double beta() const noexcept { return node_->beta; }
  const Point& shift() const noexcept { return node_->shift; }

 private:
  struct Node {
    explicit Node(Op o) : op(o) {}
    Op op;
    std::size_t dim = 0;
    std::optional<DiracCombination> combo;
    std::optional<IFSystem> system;
    std::vector<SymbolicMeasure> children;
    std::vector<double> weights;
    double beta = 1.0;
    Point shift;
  };

  explicit SymbolicMeasure(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline const char* to_string(SymbolicMeasure::Op op) {
  switch (op) {
    case SymbolicMeasure::Op::dirac: return "dirac";
    case SymbolicMeasure::Op::invariant: return "invariant";
    case SymbolicMeasure::Op::convolve: return "convolve";
    case SymbolicMeasure::Op::scale: return "scale";
    case SymbolicMeasure::Op::translate: return "translate";
    case SymbolicMeasure::Op::mixture: return "mixture";
  }
  return "unknown";
}

/// True when the expression denotes a finitely supported measure.
inline bool is_discrete(const SymbolicMeasure& s) {
  using Op = SymbolicMeasure::Op;
  switch (s.op()) {
    case Op::dirac: return true;
    case Op::invariant: return false;
    default:
      return std::all_of(s.children().begin(), s.children().end(),
                         [](const SymbolicMeasure& c) { return is_discrete(c); });
  }
}

/// Certificate names, one per rewrite rule.
namespace certificate {
inline constexpr const char* discrete_lower = "discrete-lower-dim-zero";
inline constexpr const char* discrete_quant = "discrete-quant-dim-zero";
inline constexpr const char* ssc_lower = "ssc-lower-dim-formula";
inline constexpr const char* graf_luschgy = "graf-luschgy-equation";
inline constexpr const char* uniform = "uniform-tiling";
inline constexpr const char* dirac_conv_lower = "dirac-convolution-lower-dim";
inline constexpr const char* dirac_conv_quant = "dirac-convolution-quant-dim";
inline constexpr const char* scaling = "scaling-invariance";
inline constexpr const char* translation = "translation-invariance";
inline constexpr const char* sum_max = "finite-sum-quant-max";
}  // namespace certificate

struct CertifiedDims {
  std::optional<double> lower_dim;
  std::optional<double> quant_dim;
  double r = 2.0;
  std::vector<std::string> lower_certificate;  // rules behind lower_dim, root first
  std::vector<std::string> quant_certificate;

  /// All rules applied, in order of first use.
  std::vector<std::string> certificate() const {
    std::vector<std::string> out;
    for (const auto* list : {&lower_certificate, &quant_certificate})
      for (const auto& name : *list)
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    return out;
  }
};

namespace detail {

inline void prepend(std::vector<std::string>& list, const char* name) {
  list.insert(list.begin(), name);
}

inline void forward_lower(CertifiedDims& out, const CertifiedDims& in, const char* rule) {
  if (!in.lower_dim) return;
  out.lower_dim = in.lower_dim;
  out.lower_certificate = in.lower_certificate;
  prepend(out.lower_certificate, rule);
}

inline void forward_quant(CertifiedDims& out, const CertifiedDims& in, const char* rule) {
  if (!in.quant_dim) return;
  out.quant_dim = in.quant_dim;
  out.quant_certificate = in.quant_certificate;
  prepend(out.quant_certificate, rule);
}

}  // namespace detail

/// Dimensions that follow from the structure of `s` by the rewrite rules:
/// finitely supported measures have both dimensions 0; an invariant measure
/// under strong separation has the closed-form lower dimension and the
/// Graf-Luschgy quantization dimension; convolving with a finitely supported
/// measure, rescaling and translating preserve both; a mixture's quantization
/// dimension is the maximum over its parts. Anything else stays unknown.
inline CertifiedDims certified_dims(const SymbolicMeasure& s, double r) {
  using Op = SymbolicMeasure::Op;
  require(r > 0.0, ErrorKind::invalid_input, "certified_dims: r must be positive");
  CertifiedDims out;
  out.r = r;
  if (is_discrete(s)) {
    out.lower_dim = 0.0;
    out.quant_dim = 0.0;
    out.lower_certificate = {certificate::discrete_lower};
    out.quant_certificate = {certificate::discrete_quant};
    return out;
  }
  switch (s.op()) {
    case Op::dirac: break;
    case Op::invariant: {
      const IFSystem& ifs = s.system();
      if (is_uniform_tiling(ifs)) {
        const auto m = static_cast<double>(ifs.dim());
        out.lower_dim = m;
        out.quant_dim = m;
        out.lower_certificate = {certificate::uniform};
        out.quant_certificate = {certificate::uniform};
      } else if (verify_ssc(ifs).ssc_holds) {
        out.lower_dim = lower_dim_formula(ifs);
        out.quant_dim = solve_graf_luschgy(ifs, r).value;
        out.lower_certificate = {certificate::ssc_lower};
        out.quant_certificate = {certificate::graf_luschgy};
      }
      break;
    }
    case Op::convolve: {
      const auto& a = s.children()[0];
      const auto& b = s.children()[1];
      // at most one side is discrete here
      const SymbolicMeasure* rest = is_discrete(b) ? &a : is_discrete(a) ? &b : nullptr;
      if (rest == nullptr) break;
      const CertifiedDims inner = certified_dims(*rest, r);
      detail::forward_lower(out, inner, certificate::dirac_conv_lower);
      detail::forward_quant(out, inner, certificate::dirac_conv_quant);
      break;
    }
    case Op::scale: {
      const CertifiedDims inner = certified_dims(s.children()[0], r);
      detail::forward_lower(out, inner, certificate::scaling);
      detail::forward_quant(out, inner, certificate::scaling);
      break;
    }
    case Op::translate: {
      const CertifiedDims inner = certified_dims(s.children()[0], r);
      detail::forward_lower(out, inner, certificate::translation);
      detail::forward_quant(out, inner, certificate::translation);
      break;
    }
    case Op::mixture: {
      double best = 0.0;
      std::vector<std::string> rules;
      bool known = true;
      for (const auto& part : s.children()) {
        const CertifiedDims inner = certified_dims(part, r);
        if (!inner.quant_dim) {
          known = false;
          break;
        }
        best = std::max(best, *inner.quant_dim);
        for (const auto& name : inner.quant_certificate)
          if (std::find(rules.begin(), rules.end(), name) == rules.end()) rules.push_back(name);
      }
      if (known) {
        out.quant_dim = best;
        out.quant_certificate = std::move(rules);
        detail::prepend(out.quant_certificate, certificate::sum_max);
      }
      break;
    }
  }
  return out;
}

/// Finite realization: invariant measures are replaced by their depth-k
/// discretization, every other node is evaluated exactly.
inline DiscreteMeasure realize(const SymbolicMeasure& s, int depth,
                               std::size_t support_cap = kDefaultSupportCap) {
  using Op = SymbolicMeasure::Op;
  switch (s.op()) {
    case Op::dirac: return s.combination().measure();
    case Op::invariant: return discretize_depth(s.system(), depth).measure;
    case Op::convolve:
      return convolve(realize(s.children()[0], depth, support_cap),
                      realize(s.children()[1], depth, support_cap), support_cap);
    case Op::scale: return scale_measure(realize(s.children()[0], depth, support_cap), s.beta());
    case Op::translate: return translate(realize(s.children()[0], depth, support_cap), s.shift());
    case Op::mixture: {
      std::vector<std::pair<double, DiscreteMeasure>> parts;
      for (std::size_t i = 0; i < s.children().size(); ++i)
        parts.emplace_back(s.weights()[i], realize(s.children()[i], depth, support_cap));
      return mixture(parts);
    }
  }
  fail(ErrorKind::invalid_input, "realize: unknown node");
}

}  // namespace fracdim

#endif  // FRACDIM_SYMBOLIC_HPP
