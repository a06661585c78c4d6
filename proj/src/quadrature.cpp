#include "ghshift/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "ghshift/errors.hpp"

namespace ghshift::quad {

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");

  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    std::unique_ptr<gsl_integration_glfixed_table,
                    decltype(&gsl_integration_glfixed_table_free)>
        table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)),
              &gsl_integration_glfixed_table_free);
    if (!table) throw NumericError("gauss_legendre: GSL table allocation failed");
    auto gl = std::make_unique<GaussLegendre>();
    gl->x.resize(n);
    gl->w.resize(n);
    for (int i = 0; i < n; ++i)
      gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i),
                                    &gl->x[i], &gl->w[i], table.get());
    slot = std::move(gl);
  }
  return *slot;
}

RuleOptions refined(RuleOptions opt) {
  opt.nodes *= 2;
  return opt;
}

void QuadratureRule::add_panel(double lo, double hi, int n) {
  const GaussLegendre& gl = gauss_legendre(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (int i = 0; i < n; ++i) {
    nodes_.push_back(mid + half * gl.x[i]);
    weights_.push_back(half * gl.w[i]);
  }
  panels_.push_back({lo, hi});
}

void QuadratureRule::add_graded(double lo, double hi, bool toward_lo,
                                const RuleOptions& opt) {
  const double width = hi - lo;
  // Fractions of the width measured from the singular end:
  // 0, r^L, r^(L-1), ..., r, 1.
  std::vector<double> cuts{0.0};
  for (int j = opt.grading_levels; j >= 1; --j)
    cuts.push_back(std::pow(opt.grading_ratio, j));
  cuts.push_back(1.0);

  // Map a fraction measured from the singular end onto [lo, hi]; the ends map
  // exactly so the sub-panels tile the panel.
  auto at = [&](double c) {
    if (c == 0.0) return toward_lo ? lo : hi;
    if (c == 1.0) return toward_lo ? hi : lo;
    return toward_lo ? lo + width * c : hi - width * c;
  };
  std::vector<Panel> parts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (toward_lo)
      parts.push_back({at(cuts[i]), at(cuts[i + 1])});
    else
      parts.push_back({at(cuts[i + 1]), at(cuts[i])});
  }
  if (!toward_lo) std::reverse(parts.begin(), parts.end());
  for (const Panel& p : parts)
    if (p.hi > p.lo) add_panel(p.lo, p.hi, opt.nodes);
}

QuadratureRule QuadratureRule::composite(double lo, double hi,
                                         const RuleOptions& opt,
                                         std::span<const double> split_points) {
  if (!(hi > lo)) throw DomainError("quadrature: empty interval");
  if (opt.panels < 1 || opt.nodes < 1 || opt.grading_levels < 0 ||
      !(opt.grading_ratio > 0.0 && opt.grading_ratio < 1.0))
    throw DomainError("quadrature: invalid rule options");

  QuadratureRule rule;
  const double snap = 1e-12 * (hi - lo);

  std::vector<double> bounds;
  for (int i = 0; i <= opt.panels; ++i)
    bounds.push_back(i == opt.panels ? hi : lo + (hi - lo) * i / opt.panels);

  for (double s : split_points) {
    if (!(s >= lo && s <= hi)) continue;
    auto nearest = std::min_element(bounds.begin(), bounds.end(), [s](double a, double b) {
      return std::abs(a - s) < std::abs(b - s);
    });
    if (std::abs(*nearest - s) <= snap) {
      // Keep the outer interval fixed; interior boundaries move onto s.
      if (nearest != bounds.begin() && nearest != bounds.end() - 1) *nearest = s;
      rule.splits_.push_back(*nearest);
    } else {
      bounds.insert(std::upper_bound(bounds.begin(), bounds.end(), s), s);
      rule.splits_.push_back(s);
    }
  }
  std::sort(rule.splits_.begin(), rule.splits_.end());
  rule.splits_.erase(std::unique(rule.splits_.begin(), rule.splits_.end()),
                     rule.splits_.end());

  auto is_split = [&](double b) {
    return std::binary_search(rule.splits_.begin(), rule.splits_.end(), b);
  };
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double a = bounds[i];
    const double b = bounds[i + 1];
    const bool sa = is_split(a);
    const bool sb = is_split(b);
    if (sa && sb) {
      const double m = 0.5 * (a + b);
      rule.add_graded(a, m, true, opt);
      rule.add_graded(m, b, false, opt);
    } else if (sa) {
      rule.add_graded(a, b, true, opt);
    } else if (sb) {
      rule.add_graded(a, b, false, opt);
    } else {
      rule.add_panel(a, b, opt.nodes);
    }
  }
  return rule;
}

std::vector<double> simpson_weights(int n, double spacing) {
  if (n < 3) throw DomainError("simpson_weights: need at least three samples");
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  const int intervals = n - 1;
  const int simpson_end = intervals % 2 == 0 ? n - 1 : n - 4;  // last index of 1/3 part
  for (int i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += spacing / 3.0;
    w[i + 1] += 4.0 * spacing / 3.0;
    w[i + 2] += spacing / 3.0;
  }
  if (intervals % 2 != 0) {
    const int s = n - 4;
    w[s] += 3.0 * spacing / 8.0;
    w[s + 1] += 9.0 * spacing / 8.0;
    w[s + 2] += 9.0 * spacing / 8.0;
    w[s + 3] += 3.0 * spacing / 8.0;
  }
  return w;
}

}  // namespace ghshift::quad
