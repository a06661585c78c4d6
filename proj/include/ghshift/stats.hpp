#pragma once

// Peak and centroid estimators on sampled beam profiles.

#include <string>

#include "ghshift/synth.hpp"

namespace ghshift::stats {

using synth::BeamProfile;

struct MeanEstimate {
  double mean;
  /// Boundary intensity exceeded 1e-8 of the peak: the window truncates the tails.
  bool truncated;
};

struct BeamStatistics {
  double peak_x_over_w0;
  double mean_x_over_w0;
  double norm;
  double symmetry_defect;
  bool truncated;
};

/// Discrete argmax refined with a 3-point parabola. Throws WindowError when
/// the maximum sits on the first or last sample and DegenerateError for a
/// flat or empty profile.
double peak_position(const BeamProfile& profile);

/// Simpson centroid of the intensity over the full grid.
MeanEstimate mean_position(const BeamProfile& profile);

/// Third central moment over the cube of the rms width.
double symmetry_defect(const BeamProfile& profile);

BeamStatistics analyse(const BeamProfile& profile);

}  // namespace ghshift::stats
