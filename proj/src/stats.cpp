#include "ghshift/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ghshift/errors.hpp"
#include "ghshift/quadrature.hpp"

namespace ghshift::stats {

namespace {

constexpr double kTruncationLevel = 1e-8;

void check_profile(const BeamProfile& p) {
  if (p.grid.size() < 16 || p.intensity.size() != static_cast<std::size_t>(p.grid.size()))
    throw DegenerateError("profile needs at least 16 samples");
}

struct Moments {
  double m0 = 0.0, mean = 0.0, var = 0.0, third = 0.0;
};

// Central moments about the mean, with offsets from the grid origin so that a
// packet far from x = 0 keeps full precision.
Moments moments(const BeamProfile& p) {
  check_profile(p);
  const auto& g = p.grid;
  const std::vector<double> w = quad::simpson_weights(g.size(), g.spacing());
  Moments m;
  double s1 = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    m.m0 += w[i] * p.intensity[i];
    s1 += w[i] * p.intensity[i] * g.offset(i);
  }
  if (!(m.m0 > 0.0)) throw DegenerateError("profile has zero norm");
  const double c = s1 / m.m0;
  for (int i = 0; i < g.size(); ++i) {
    const double d = g.offset(i) - c;
    m.var += w[i] * p.intensity[i] * d * d;
    m.third += w[i] * p.intensity[i] * d * d * d;
  }
  m.var /= m.m0;
  m.third /= m.m0;
  m.mean = g.origin() + c;
  return m;
}

}  // namespace

double peak_position(const BeamProfile& p) {
  check_profile(p);
  const auto& I = p.intensity;
  const auto it = std::max_element(I.begin(), I.end());
  const double top = *it;
  const double bottom = *std::min_element(I.begin(), I.end());
  if (!(top > 0.0) || top == bottom) throw DegenerateError("profile is flat");
  const auto i = static_cast<int>(it - I.begin());
  if (i == 0 || i == p.grid.size() - 1)
    throw WindowError("profile maximum lies on the grid boundary; recentre the window");
  const double a = I[i - 1], b = I[i], c = I[i + 1];
  const double den = a - 2.0 * b + c;
  const double frac = den < 0.0 ? 0.5 * (a - c) / den : 0.0;
  return p.grid.origin() + (p.grid.offset(i) + frac * p.grid.spacing());
}

MeanEstimate mean_position(const BeamProfile& p) {
  const Moments m = moments(p);
  const double top = *std::max_element(p.intensity.begin(), p.intensity.end());
  const bool truncated = std::max(p.intensity.front(), p.intensity.back()) > kTruncationLevel * top;
  return {m.mean, truncated};
}

double symmetry_defect(const BeamProfile& p) {
  const Moments m = moments(p);
  if (!(m.var > 0.0)) throw DegenerateError("profile has zero width");
  return m.third / (m.var * std::sqrt(m.var));
}

BeamStatistics analyse(const BeamProfile& p) {
  const MeanEstimate mean = mean_position(p);
  return {peak_position(p), mean.mean, p.norm, symmetry_defect(p), mean.truncated};
}

}  // namespace ghshift::stats
