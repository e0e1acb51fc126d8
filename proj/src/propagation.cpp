#include "bsv/propagation.hpp"

#include <cmath>

#include "bsv/errors.hpp"

namespace bsv {

double SpatialPropagation::half_angle_divergence() const {
  return wavelength_um / (M_PI * waist_um);
}

double spread_size(double size0, double accumulated, int order) {
  if (!(size0 > 0)) throw InputError("spread_size: fundamental size must be positive");
  if (!(accumulated >= 0)) throw InputError("spread_size: accumulated spread must be non-negative");
  if (order < 0) throw InputError("spread_size: order must be non-negative");
  return std::sqrt(2.0 * order + 1.0) * std::hypot(size0, accumulated / size0);
}

double beam_waist_at(const SpatialPropagation& prop, int order) {
  if (!(prop.waist_um > 0)) throw InputError("beam_waist_at: waist must be positive");
  if (!(prop.wavelength_um > 0)) throw InputError("beam_waist_at: wavelength must be positive");
  if (!(prop.distance_mm >= 0)) throw InputError("beam_waist_at: distance must be non-negative");
  const double z_um = prop.distance_mm * 1e3;
  return spread_size(prop.waist_um, prop.wavelength_um * z_um / M_PI, order);
}

double pulse_duration_at(const TemporalPropagation& prop, int order) {
  if (!(prop.duration_fs > 0)) throw InputError("pulse_duration_at: duration must be positive");
  if (!(prop.k2d_fs2 >= 0)) throw InputError("pulse_duration_at: k''d must be non-negative");
  return spread_size(prop.duration_fs, prop.k2d_fs2, order);
}

std::vector<double> rescale_mode_profile(const std::vector<double>& mode, double stretch) {
  if (!std::isfinite(stretch)) throw InputError("rescale_mode_profile: stretch must be finite");
  if (!(stretch >= 1.0)) throw InputError("rescale_mode_profile: stretch must be >= 1");
  std::vector<double> out(mode.size());
  const double amp = 1.0 / std::sqrt(stretch);
  for (std::size_t i = 0; i < mode.size(); ++i) out[i] = mode[i] * amp;
  return out;
}

}  // namespace bsv
