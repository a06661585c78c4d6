#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ghshift/errors.hpp"
#include "ghshift/stats.hpp"
#include "ghshift/synth.hpp"

using namespace ghshift;
using namespace ghshift::stats;
using synth::BeamProfile;
using synth::Grid1D;

namespace {

template <class F>
BeamProfile sampled(const Grid1D& grid, F&& f) {
  BeamProfile p{grid, {}, 0.0, make_packet_spec(500.0, 0.0, 0.0)};
  p.intensity.resize(grid.size());
  for (int i = 0; i < grid.size(); ++i) p.intensity[i] = f(grid.x(i));
  return p;
}

BeamProfile gaussian(const Grid1D& grid, double centre, double width) {
  return sampled(grid, [=](double x) {
    const double d = (x - centre) / width;
    return std::exp(-2.0 * d * d);
  });
}

}  // namespace

TEST(Peak, GaussianBetweenSamples) {
  const Grid1D grid = Grid1D::centered(0.0, 8.0, 4096);
  const double h = grid.spacing();
  const double centre = 0.3 * h;
  const BeamProfile p = gaussian(grid, centre, 1.0);
  EXPECT_NEAR(peak_position(p), centre, 1e-3 * h);
  EXPECT_NEAR(mean_position(p).mean, centre, 1e-12);
}

TEST(Peak, FarFromOriginKeepsPrecision) {
  const Grid1D grid = Grid1D::centered(-1000.0, 8.0, 4096);
  const double centre = -1000.0 + 0.013;
  const BeamProfile p = gaussian(grid, centre, 1.0);
  EXPECT_NEAR(peak_position(p), centre, 1e-3 * grid.spacing());
  EXPECT_NEAR(mean_position(p).mean, centre, 1e-11);
}

TEST(Mean, GammaDistributionCentroid) {
  // x^(a-1) e^(-x/b) has mean a b and skewness 2/sqrt(a).
  const double a = 5.0, b = 0.7;
  const Grid1D grid = Grid1D::from_offsets(0.0, 0.0, 60.0, 8001);
  const BeamProfile p = sampled(grid, [=](double x) { return std::pow(x, a - 1.0) * std::exp(-x / b); });
  EXPECT_NEAR(mean_position(p).mean, a * b, 1e-6);
  EXPECT_NEAR(symmetry_defect(p), 2.0 / std::sqrt(a), 1e-5);
  EXPECT_FALSE(mean_position(p).truncated);
}

TEST(Defect, MirrorFlipsSign) {
  const Grid1D grid = Grid1D::from_offsets(0.0, -30.0, 30.0, 6001);
  auto f = [](double x) { return x > 0.0 ? x * x * std::exp(-x) : 0.0; };
  const BeamProfile p = sampled(grid, f);
  const BeamProfile q = sampled(grid, [&](double x) { return f(-x); });
  EXPECT_GT(symmetry_defect(p), 0.1);
  EXPECT_NEAR(symmetry_defect(p), -symmetry_defect(q), 1e-12);
  EXPECT_NEAR(symmetry_defect(gaussian(grid, 0.0, 1.0)), 0.0, 1e-12);
}

TEST(Peak, WindowErrorAtBoundary) {
  const Grid1D grid = Grid1D::centered(0.0, 8.0, 256);
  EXPECT_THROW(peak_position(gaussian(grid, 20.0, 1.0)), WindowError);
}

TEST(Peak, DegenerateProfiles) {
  const Grid1D grid = Grid1D::centered(0.0, 8.0, 256);
  EXPECT_THROW(peak_position(sampled(grid, [](double) { return 1.0; })), DegenerateError);
  EXPECT_THROW(mean_position(sampled(grid, [](double) { return 0.0; })), DegenerateError);
  EXPECT_THROW(peak_position(gaussian(Grid1D::centered(0.0, 8.0, 8), 0.0, 1.0)), DegenerateError);
}

TEST(Equivariance, TranslationShiftsEstimates) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> sh(-50.0, 50.0), c(-0.5, 0.5);
  for (int i = 0; i < 50; ++i) {
    const double s = sh(rng), x0 = c(rng);
    const BeamProfile a = gaussian(Grid1D::centered(0.0, 8.0, 1024), x0, 1.3);
    const BeamProfile b = gaussian(Grid1D::centered(s, 8.0, 1024), x0 + s, 1.3);
    ASSERT_NEAR(peak_position(b) - peak_position(a), s, 1e-10);
    ASSERT_NEAR(mean_position(b).mean - mean_position(a).mean, s, 1e-10);
  }
}

TEST(Mean, TruncationFlag) {
  const Grid1D grid = Grid1D::centered(0.0, 8.0, 1024);
  EXPECT_FALSE(mean_position(gaussian(grid, 0.0, 1.0)).truncated);
  const BeamProfile tail = sampled(grid, [](double x) { return 1.0 / (1.0 + x * x); });
  EXPECT_TRUE(mean_position(tail).truncated);
}

TEST(Resolution, GridHalvingIsStable) {
  auto f = [](double x) { return std::exp(-2.0 * (x - 0.21) * (x - 0.21)) * (1.0 + 0.1 * std::tanh(x)); };
  const BeamProfile fine = sampled(Grid1D::centered(0.0, 8.0, 4097), f);
  const BeamProfile coarse = sampled(Grid1D::centered(0.0, 8.0, 2049), f);
  EXPECT_NEAR(peak_position(fine), peak_position(coarse), 1e-4);
  EXPECT_NEAR(mean_position(fine).mean, mean_position(coarse).mean, 1e-4);
  EXPECT_NEAR(symmetry_defect(fine), symmetry_defect(coarse), 1e-4);
}

TEST(Defect, CriticalReflectionIsStronglyAsymmetric) {
  using synth::Component;
  const auto critical = analyse(synth::profile_1d(Component::Reflected, make_packet_spec(500.0, 500.0, 1.0)));
  const auto regular = analyse(synth::profile_1d(
      Component::Reflected, packet_from_barrier_excess(500.0, -0.1, 1.0)));
  EXPECT_GT(std::abs(critical.symmetry_defect), 10.0 * std::abs(regular.symmetry_defect));
}
