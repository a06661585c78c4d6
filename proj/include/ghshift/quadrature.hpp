#pragma once

// Composite Gauss-Legendre rules with mandatory panel boundaries at branch
// points. Panels that touch a branch point are refined geometrically towards
// it, which keeps exponential convergence for square-root and x log x type
// endpoint behaviour.

#include <span>
#include <vector>

namespace ghshift::quad {

struct Panel {
  double lo;
  double hi;
};

struct RuleOptions {
  int panels = 24;
  int nodes = 32;               ///< Gauss-Legendre points per panel
  int grading_levels = 16;      ///< geometric sub-panels next to a branch point
  double grading_ratio = 0.15;  ///< width ratio between successive sub-panels
};

/// Gauss-Legendre nodes and weights on [-1, 1] (cached; thread-safe).
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussLegendre& gauss_legendre(int n);

class QuadratureRule {
 public:
  /// Rule on [lo, hi] with uniform base panels; every split point inside
  /// [lo, hi] becomes a panel boundary with graded refinement on both sides.
  static QuadratureRule composite(double lo, double hi, const RuleOptions& opt,
                                  std::span<const double> split_points = {});

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<Panel>& panels() const noexcept { return panels_; }
  const std::vector<double>& split_points() const noexcept { return splits_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  double lo() const noexcept { return panels_.front().lo; }
  double hi() const noexcept { return panels_.back().hi; }

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0));
    R acc{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
    return acc;
  }

 private:
  void add_panel(double lo, double hi, int n);
  void add_graded(double lo, double hi, bool toward_lo, const RuleOptions& opt);

  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<Panel> panels_;
  std::vector<double> splits_;
};

/// Composite Simpson weights for n >= 3 uniformly spaced samples. An odd
/// number of intervals closes with the 3/8 rule on the last three.
std::vector<double> simpson_weights(int n, double spacing);

/// Same rule with the per-panel node count doubled.
RuleOptions refined(RuleOptions opt);

}  // namespace ghshift::quad
