#pragma once

#include <vector>

namespace bsv {

// Free-space diffraction of Hermite-Gauss modes.  waist_um is the 1/e^2
// intensity radius of the fundamental.
struct SpatialPropagation {
  double waist_um = 0;
  double wavelength_um = 0;
  double distance_mm = 0;

  double half_angle_divergence() const;  // theta0 = lambda / (pi w0)
};

// Dispersive spreading of temporal Hermite modes; k2d_fs2 is the
// accumulated GVD k'' * d.
struct TemporalPropagation {
  double duration_fs = 0;
  double k2d_fs2 = 0;
};

// Common closed form behind diffraction and dispersion: order-m size
//   sqrt(2m+1) * sqrt(size0^2 + (accumulated / size0)^2).
// Diffraction uses accumulated = lambda z / pi, dispersion uses k'' d;
// sharing the implementation keeps the duality exact.
double spread_size(double size0, double accumulated, int order);

double beam_waist_at(const SpatialPropagation& prop, int order);       // um
double pulse_duration_at(const TemporalPropagation& prop, int order);  // fs

// Amplitude profile rescaled onto a grid stretched by `stretch`: the output
// samples live on {stretch * x_n} and are scaled by 1/sqrt(stretch), which
// preserves the discrete L2 norm exactly.
std::vector<double> rescale_mode_profile(const std::vector<double>& mode, double stretch);

}  // namespace bsv
