#include "bsv/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bsv/errors.hpp"
#include "bsv/propagation.hpp"
#include "bsv/units.hpp"

namespace bsv {

namespace {

double interpolate_crossing(double x0, double y0, double x1, double y1, double level) {
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

// FWHM of a sampled single-peaked profile, half-max crossings interpolated
// linearly.
double sampled_fwhm(const std::vector<double>& x, const std::vector<double>& y) {
  const auto peak_it = std::max_element(y.begin(), y.end());
  const double half = 0.5 * *peak_it;
  if (!(half > 0) || !std::isfinite(half))
    throw NumericalError("envelope has no positive peak");
  const auto peak = static_cast<std::size_t>(peak_it - y.begin());

  std::size_t lo = peak;
  while (lo > 0 && y[lo] >= half) --lo;
  std::size_t hi = peak;
  while (hi + 1 < y.size() && y[hi] >= half) ++hi;
  if (y[lo] >= half || y[hi] >= half)
    throw NumericalError("envelope half-maximum lies outside the sampled axis");
  const double left = interpolate_crossing(x[lo], y[lo], x[lo + 1], y[lo + 1], half);
  const double right = interpolate_crossing(x[hi - 1], y[hi - 1], x[hi], y[hi], half);
  return right - left;
}

double overlap_gain(double mode_size, double pump_half, FilterModel filter) {
  if (mode_size <= pump_half) return 1.0;
  if (filter == FilterModel::hard) return 0.0;
  const double r = pump_half / mode_size;
  return r * r;
}

}  // namespace

void InterferometerConfig::validate() const {
  if (!(crystal_length_mm > 0)) throw ConfigError("crystal length must be positive");
  if (!(pdc_wavelength_um > 0)) throw ConfigError("PDC wavelength must be positive");
  if (!(gain >= 0)) throw ConfigError("gain must be non-negative");
  if (arm == Arm::angular) {
    if (!(pump_fwhm_um > 0)) throw ConfigError("angular arm needs a positive pump FWHM");
    if (std::holds_alternative<DispersiveGap>(gap))
      throw ConfigError("angular arm cannot use a dispersive gap");
  } else {
    if (!(pump_coherence_ps > 0)) throw ConfigError("spectral arm needs a positive coherence time");
    if (std::holds_alternative<FreeSpaceGap>(gap))
      throw ConfigError("spectral arm cannot use a free-space gap");
  }
  if (const auto* d = std::get_if<DispersiveGap>(&gap)) {
    if (!(d->length_mm > 0)) throw ConfigError("dispersive gap length must be positive");
  }
  if (const auto* f = std::get_if<FreeSpaceGap>(&gap)) {
    if (!(f->length_mm >= 0)) throw ConfigError("free-space gap length must be non-negative");
  }
  if (baseline_fwhm_nm && !(*baseline_fwhm_nm > 0))
    throw ConfigError("baseline FWHM must be positive");
}

KernelWidths kernel_widths(const InterferometerConfig& config, const MaterialDatabase& db) {
  config.validate();
  const Material& crystal = db.get(config.crystal_material);
  KernelWidths w;
  if (config.arm == Arm::angular) {
    // Pump angular spectrum exp(-q^2 w_p^2 / 4) for a beam exp(-x^2/w_p^2).
    const double w_p = units::fwhm_to_waist(config.pump_fwhm_um);
    w.pump = 1.0 / w_p;
    // Transverse mismatch dk = (qs - qi)^2 / (4 k) at degeneracy.
    const double k_s = 2.0 * M_PI * refractive_index(crystal, config.pdc_wavelength_um) /
                       config.pdc_wavelength_um;                        // rad/um
    const double curvature_times_length =
        config.crystal_length_mm * 1e3 / k_s;                          // um^3/rad... (L/k)
    const double u_half = std::sqrt(8.0 * sinc_half_amplitude_arg / curvature_times_length);
    w.phase_matching = u_half / units::fwhm_per_half_width;
  } else {
    // Pump spectral amplitude exp(-W^2 T_s^2 / 2) for a pulse exp(-t^2/2T_s^2).
    const double t_s = units::fwhm_to_half_width(config.pump_coherence_ps * 1e3);
    w.pump = 1.0 / (std::sqrt(2.0) * t_s);
    // Frequency mismatch dk = k'' (Ws - Wi)^2 / 4 at degeneracy.
    const double k2L = gvd_fs2_per_mm(crystal, config.pdc_wavelength_um) *
                       config.crystal_length_mm;                       // fs^2
    const double u_half = std::sqrt(8.0 * sinc_half_amplitude_arg / k2L);
    w.phase_matching = u_half / units::fwhm_per_half_width;
  }
  return w;
}

double fundamental_waist_um(const InterferometerConfig& config, const MaterialDatabase& db) {
  if (config.arm != Arm::angular)
    throw ConfigError("fundamental waist is defined for the angular arm");
  const KernelWidths w = kernel_widths(config, db);
  const double s_q = std::sqrt(w.pump * w.phase_matching);  // rad/um
  return units::half_width_to_waist(1.0 / s_q);
}

double fundamental_duration_fs(const InterferometerConfig& config, const MaterialDatabase& db) {
  if (config.arm != Arm::spectral)
    throw ConfigError("fundamental duration is defined for the spectral arm");
  const KernelWidths w = kernel_widths(config, db);
  return 1.0 / std::sqrt(w.pump * w.phase_matching);
}

double pump_diameter_um(const InterferometerConfig& config) {
  if (config.arm != Arm::angular)
    throw ConfigError("pump diameter is defined for the angular arm");
  return 2.0 * units::fwhm_to_waist(config.pump_fwhm_um);
}

double amplified_mode_scale(const InterferometerConfig& config, const MaterialDatabase& db,
                            double distance_mm) {
  if (config.arm != Arm::angular)
    throw ConfigError("amplified_mode_scale needs a free-space (angular) configuration");
  if (!(distance_mm >= 0)) throw InputError("distance must be non-negative");
  const double w0 = fundamental_waist_um(config, db);
  const double a = pump_diameter_um(config);
  const double spread = config.pdc_wavelength_um * distance_mm * 1e3 / (M_PI * w0);
  return 0.5 * a / std::hypot(w0, spread);
}

int max_amplified_order(double mode_scale) {
  if (!(mode_scale > 0)) throw InputError("mode scale must be positive");
  if (mode_scale < 1.0) return -1;
  return static_cast<int>(std::floor((mode_scale * mode_scale - 1.0) / 2.0));
}

double initial_angular_width(const InterferometerConfig& config, const MaterialDatabase& db) {
  const double w0 = fundamental_waist_um(config, db);
  const double a = pump_diameter_um(config);
  return a * config.pdc_wavelength_um / (M_PI * w0 * w0);
}

double angular_width(const InterferometerConfig& config, const MaterialDatabase& db,
                     double distance_mm) {
  if (config.arm != Arm::angular)
    throw ConfigError("angular_width needs a free-space (angular) configuration");
  if (!(distance_mm >= 0)) throw InputError("distance must be non-negative");
  const double theta0 = initial_angular_width(config, db);
  const double a = pump_diameter_um(config);
  const double l_over_a = distance_mm * 1e3 / a;
  return 1.0 / std::hypot(1.0 / theta0, l_over_a);
}

double baseline_spectral_half_width(const InterferometerConfig& config,
                                    const MaterialDatabase& db) {
  if (config.arm != Arm::spectral)
    throw ConfigError("spectral baseline needs a dispersive (spectral) configuration");
  if (config.baseline_fwhm_nm) {
    const double fwhm_rad =
        units::dlambda_nm_to_domega(*config.baseline_fwhm_nm, config.pdc_wavelength_um * 1e3);
    return units::fwhm_to_half_width(fwhm_rad);
  }
  const KernelWidths w = kernel_widths(config, db);
  // Marginal intensity of the double-Gaussian kernel: exp(-2 W^2/(sp^2+spm^2)).
  return std::sqrt(0.5 * (w.pump * w.pump + w.phase_matching * w.phase_matching));
}

SpectralWidthResult spectral_width(const InterferometerConfig& config, const MaterialDatabase& db,
                                   double k2d_fs2) {
  if (config.arm != Arm::spectral)
    throw ConfigError("spectral_width needs a dispersive (spectral) configuration");
  if (!(k2d_fs2 >= 0)) throw InputError("k''d must be non-negative");
  const double w0 = baseline_spectral_half_width(config, db);
  const double t_p = config.pump_coherence_ps * 1e3;  // the formula parameter, fs
  SpectralWidthResult r;
  r.half_width_rad_fs = 1.0 / std::hypot(1.0 / w0, k2d_fs2 / t_p);
  r.fwhm_rad_fs = units::half_width_to_fwhm(r.half_width_rad_fs);
  r.fwhm_nm = units::domega_to_dlambda_nm(r.fwhm_rad_fs, config.pdc_wavelength_um * 1e3);
  return r;
}

double gap_k2d_fs2(const InterferometerConfig& config, const MaterialDatabase& db) {
  if (const auto* d = std::get_if<DispersiveGap>(&config.gap)) {
    // spreading depends on |k''|; vacuum-like media give roundoff-level values
    const double k2 = std::abs(gvd_fs2_per_mm(db.get(d->material), config.pdc_wavelength_um));
    return k2 * d->length_mm;
  }
  return 0.0;
}

WidthCurve sweep_width(const InterferometerConfig& config, const MaterialDatabase& db,
                       const std::vector<double>& abscissa) {
  if (abscissa.empty()) throw InputError("sweep_width: empty abscissa list");
  WidthCurve curve;
  curve.abscissa = abscissa;
  curve.width.reserve(abscissa.size());
  if (config.arm == Arm::angular) {
    curve.unit_abscissa = "mm";
    curve.unit_width = "rad";
    for (double L : abscissa) curve.width.push_back(angular_width(config, db, L));
  } else {
    curve.unit_abscissa = "fs2";
    curve.unit_width = "nm";
    for (double kd : abscissa) curve.width.push_back(spectral_width(config, db, kd).fwhm_nm);
  }
  for (double w : curve.width)
    if (!(w > 0) || !std::isfinite(w)) throw NumericalError("sweep produced a non-positive width");
  curve.metadata = config_snapshot(config);
  return curve;
}

EnvelopeResult synthesize_output_spectrum(const InterferometerConfig& config,
                                          const MaterialDatabase& db,
                                          const std::vector<double>& schmidt_eigenvalues,
                                          int axis_points) {
  config.validate();
  if (schmidt_eigenvalues.empty())
    throw InputError("synthesize_output_spectrum: empty Schmidt spectrum");
  if (axis_points < 64)
    throw InputError("synthesize_output_spectrum: axis grid inconsistent (needs >= 64 points)");

  const auto weights = renormalize_weights(schmidt_eigenvalues, config.gain);
  const double k_eff = effective_mode_number(weights);
  const int n_modes = static_cast<int>(weights.size());

  // Mode family in the observable variable, scaled so the unfiltered
  // envelope reproduces the baseline width.
  double baseline_half = 0;   // 1/e-intensity half-width of the unfiltered envelope
  double mode_size0 = 0;      // fundamental size in the conjugate (filtering) variable
  double accumulated = 0;     // lambda L / pi or k'' d
  double pump_half = 0;
  if (config.arm == Arm::spectral) {
    baseline_half = baseline_spectral_half_width(config, db);
    const double s_axis = baseline_half / std::sqrt(k_eff);
    mode_size0 = 1.0 / s_axis;  // temporal scale of the same family
    accumulated = gap_k2d_fs2(config, db);
    pump_half = units::fwhm_to_half_width(config.pump_coherence_ps * 1e3);
  } else {
    const KernelWidths kw = kernel_widths(config, db);
    const double s_q = std::sqrt(kw.pump * kw.phase_matching);
    baseline_half = s_q * std::sqrt(k_eff);
    mode_size0 = units::half_width_to_waist(1.0 / s_q);  // w0
    if (const auto* f = std::get_if<FreeSpaceGap>(&config.gap))
      accumulated = config.pdc_wavelength_um * f->length_mm * 1e3 / M_PI;
    pump_half = 0.5 * pump_diameter_um(config);
  }
  const double s_axis = baseline_half / std::sqrt(k_eff);

  EnvelopeResult env;
  const double half_span = 5.0 * baseline_half;
  std::vector<double> axis(axis_points);
  const double step = 2.0 * half_span / (axis_points - 1);
  for (int i = 0; i < axis_points; ++i) axis[i] = -half_span + step * i;

  const bool no_gap = std::holds_alternative<std::monostate>(config.gap);
  std::vector<double> gains(n_modes, 1.0);
  if (!no_gap) {
    const double size_base = std::hypot(mode_size0, accumulated / mode_size0);
    for (int k = 0; k < n_modes; ++k) {
      const double size_k = std::sqrt(2.0 * k + 1.0) * size_base;
      gains[k] = overlap_gain(size_k, pump_half, config.filter);
    }
  }

  // Accumulate sum_k g_k lt_k psi_k^2 with the rolling Hermite recurrence.
  std::vector<double> intensity(axis_points, 0.0);
  double amplified = 0;
  {
    std::vector<double> prev(axis_points), cur(axis_points), next(axis_points);
    const double norm0 = 1.0 / (std::pow(M_PI, 0.25) * std::sqrt(s_axis));
    for (int i = 0; i < axis_points; ++i) {
      const double xi = axis[i] / s_axis;
      cur[i] = norm0 * std::exp(-0.5 * xi * xi);
    }
    for (int k = 0; k < n_modes; ++k) {
      const double wk = gains[k] * weights[k];
      amplified += wk;
      if (wk > 0)
        for (int i = 0; i < axis_points; ++i) intensity[i] += wk * cur[i] * cur[i];
      // advance psi_k -> psi_{k+1}
      for (int i = 0; i < axis_points; ++i) {
        const double xi = axis[i] / s_axis;
        const double p = (k == 0) ? std::sqrt(2.0) * xi * cur[i]
                                  : xi * std::sqrt(2.0 / (k + 1)) * cur[i] -
                                        std::sqrt(k / (k + 1.0)) * prev[i];
        next[i] = p;
      }
      std::swap(prev, cur);
      std::swap(cur, next);
    }
  }

  env.axis = std::move(axis);
  env.fwhm_axis = sampled_fwhm(env.axis, intensity);
  env.amplified_fraction = amplified;

  if (config.arm == Arm::angular) {
    // envelope reported versus external angle theta = q / k0
    const double k0 = 2.0 * M_PI / config.pdc_wavelength_um;
    for (auto& v : env.axis) v /= k0;
    env.fwhm_axis /= k0;
  }

  const double peak = *std::max_element(intensity.begin(), intensity.end());
  for (auto& v : intensity) v /= peak;
  env.intensity = std::move(intensity);

  if (config.arm == Arm::spectral) {
    const double lambda0_nm = config.pdc_wavelength_um * 1e3;
    const double omega0 = 2.0 * M_PI * units::c_nm_per_fs / lambda0_nm;
    env.wavelength_nm.resize(env.axis.size());
    for (std::size_t i = 0; i < env.axis.size(); ++i)
      env.wavelength_nm[i] = 2.0 * M_PI * units::c_nm_per_fs / (omega0 + env.axis[i]);
    env.fwhm_nm = units::domega_to_dlambda_nm(env.fwhm_axis, lambda0_nm);
  }
  return env;
}

EnvelopeResult synthesize_output_spectrum(const InterferometerConfig& config,
                                          const MaterialDatabase& db,
                                          const SchmidtSpectrum& spectrum, int axis_points) {
  if (spectrum.eigenvalues.empty() || spectrum.axis.size() < 2)
    throw InputError("synthesize_output_spectrum: inconsistent spectrum grids");
  return synthesize_output_spectrum(config, db, spectrum.eigenvalues, axis_points);
}

nlohmann::json config_snapshot(const InterferometerConfig& c) {
  nlohmann::json j;
  j["arm"] = c.arm == Arm::angular ? "angular" : "spectral";
  if (c.arm == Arm::angular) j["pump_fwhm_um"] = c.pump_fwhm_um;
  if (c.arm == Arm::spectral) j["pump_coherence_ps"] = c.pump_coherence_ps;
  j["crystal_length_mm"] = c.crystal_length_mm;
  j["crystal_material"] = c.crystal_material;
  j["pdc_wavelength_um"] = c.pdc_wavelength_um;
  if (c.pump_wavelength_um > 0) j["pump_wavelength_um"] = c.pump_wavelength_um;
  if (std::holds_alternative<std::monostate>(c.gap)) {
    j["gap"] = "none";
  } else if (const auto* f = std::get_if<FreeSpaceGap>(&c.gap)) {
    j["gap"] = {{"type", "free_space"}, {"length_mm", f->length_mm}};
  } else if (const auto* d = std::get_if<DispersiveGap>(&c.gap)) {
    j["gap"] = {{"type", "dispersive"}, {"material", d->material}, {"length_mm", d->length_mm}};
  }
  j["gain"] = c.gain;
  if (c.baseline_fwhm_nm) j["baseline_fwhm_nm"] = *c.baseline_fwhm_nm;
  j["filter"] = c.filter == FilterModel::soft ? "soft" : "hard";
  return j;
}

}  // namespace bsv
