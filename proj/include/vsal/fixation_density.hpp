#ifndef VSAL_FIXATION_DENSITY_HPP_
#define VSAL_FIXATION_DENSITY_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vsal/saliency_map.hpp"

namespace vsal {

/// One eye fixation: subject, timestamp in seconds, pixel coordinates.
struct FixationRecord {
  std::string subject_id;
  double t_f = 0.0;  // seconds
  double x_f = 0.0;  // pixels, horizontal
  double y_f = 0.0;  // pixels, vertical
};

struct DensityParams {
  double sigma_d = 1.0;          // pixels
  double sigma_t = 0.1;          // seconds
  double epsilon_cutoff = 1e-4;  // temporal Gaussian tail truncation
};

/// Spatial bandwidth default: 3% of the larger video dimension.
inline double default_sigma_spatial(int width, int height) {
  return 0.03 * std::max(width, height);
}

/// Fixation density map at time t. Each fixation at or after t contributes
/// a spatial Gaussian scaled by a temporal Gaussian in (t_f - t); earlier
/// fixations are ignored. Contributions whose temporal weight falls below
/// params.epsilon_cutoff are skipped. An empty list yields an all-zero map.
inline SaliencyMap density_map(const std::vector<FixationRecord>& fixations,
                               double t, int width, int height,
                               const DensityParams& params) {
  SaliencyMap out(width, height, 0.0, NormState::Raw);
  const double inv_2sd2 = 1.0 / (2.0 * params.sigma_d * params.sigma_d);
  const double inv_2st2 = 1.0 / (2.0 * params.sigma_t * params.sigma_t);
  for (const FixationRecord& f : fixations) {
    if (f.t_f < t) continue;
    const double dt = f.t_f - t;
    const double w_tem = std::exp(-dt * dt * inv_2st2);
    if (w_tem < params.epsilon_cutoff) continue;
    for (int y = 0; y < height; ++y) {
      const double dy = f.y_f - y;
      for (int x = 0; x < width; ++x) {
        const double dx = f.x_f - x;
        out.at(x, y) += w_tem * std::exp(-(dx * dx + dy * dy) * inv_2sd2);
      }
    }
  }
  return out;
}

}  // namespace vsal

#endif  // VSAL_FIXATION_DENSITY_HPP_
