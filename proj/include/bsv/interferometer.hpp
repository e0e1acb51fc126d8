#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bsv/materials.hpp"
#include "bsv/schmidt.hpp"

namespace bsv {

struct FreeSpaceGap {
  double length_mm = 0;
};

struct DispersiveGap {
  std::string material;
  double length_mm = 0;
};

// monostate = no gap (crystals back to back)
using Gap = std::variant<std::monostate, FreeSpaceGap, DispersiveGap>;

enum class Arm { angular, spectral };
enum class FilterModel { soft, hard };

struct InterferometerConfig {
  Arm arm = Arm::spectral;
  // angular arm: pump beam width as intensity FWHM (as quoted in experiments)
  double pump_fwhm_um = 0;
  // spectral arm: pump coherence time T_p
  double pump_coherence_ps = 0;
  double crystal_length_mm = 0;
  std::string crystal_material = "BBO";
  double pdc_wavelength_um = 0;
  double pump_wavelength_um = 0;  // informational
  Gap gap;
  double gain = 0;
  // measured baseline FWHM (nm); overrides the kernel marginal width
  std::optional<double> baseline_fwhm_nm;
  FilterModel filter = FilterModel::soft;

  void validate() const;  // throws ConfigError
};

// Pump and phase-matching widths of the double-Gaussian kernel in the
// arm's natural variable (rad/um for the angular arm, rad/fs for the
// spectral arm).  Phase matching: the amplitude sinc(dk L / 2) with
// dk = curvature * u^2 / 4 is replaced by a Gaussian of equal amplitude
// FWHM, using sinc(x) = 1/2 at x = sinc_half_amplitude_arg.
struct KernelWidths {
  double pump = 0;
  double phase_matching = 0;
};

inline constexpr double sinc_half_amplitude_arg = 1.8954942670339809;

KernelWidths kernel_widths(const InterferometerConfig& config, const MaterialDatabase& db);

// Fundamental Schmidt-mode sizes derived from the kernel widths.
double fundamental_waist_um(const InterferometerConfig& config, const MaterialDatabase& db);
double fundamental_duration_fs(const InterferometerConfig& config, const MaterialDatabase& db);

// Pump diameter a: 1/e^2-intensity full width converted from the quoted FWHM.
double pump_diameter_um(const InterferometerConfig& config);

// Scale factor M = (a/2) [w0^2 + (lambda L / pi w0)^2]^{-1/2}; orders up to
// m = floor((M^2 - 1)/2) still fill the pump after distance L.
double amplified_mode_scale(const InterferometerConfig& config, const MaterialDatabase& db,
                            double distance_mm);
int max_amplified_order(double mode_scale);  // -1 when not even the fundamental fits

double initial_angular_width(const InterferometerConfig& config, const MaterialDatabase& db);

// dtheta(L) = [1/dtheta0^2 + (L/a)^2]^{-1/2}, in rad.
double angular_width(const InterferometerConfig& config, const MaterialDatabase& db,
                     double distance_mm);

// dw(k''d) = [1/dw0^2 + (k''d / T_p)^2]^{-1/2}.  Widths are carried as
// 1/e-intensity half-widths internally; FWHM conversions happen at the
// interface.  The baseline dw0 comes from the measured override when set,
// otherwise from the kernel marginal width.
struct SpectralWidthResult {
  double half_width_rad_fs = 0;
  double fwhm_rad_fs = 0;
  double fwhm_nm = 0;
};

double baseline_spectral_half_width(const InterferometerConfig& config,
                                    const MaterialDatabase& db);  // rad/fs, 1/e
SpectralWidthResult spectral_width(const InterferometerConfig& config, const MaterialDatabase& db,
                                   double k2d_fs2);

// Accumulated GVD of the configured gap (0 for none / free space).
double gap_k2d_fs2(const InterferometerConfig& config, const MaterialDatabase& db);

struct WidthCurve {
  std::vector<double> abscissa;
  std::vector<double> width;
  std::string unit_abscissa;  // "mm" or "fs2"
  std::string unit_width;     // "rad" or "nm"
  nlohmann::json metadata;    // config snapshot
};

// Pointwise angular_width / spectral_width over the abscissa list.
WidthCurve sweep_width(const InterferometerConfig& config, const MaterialDatabase& db,
                       const std::vector<double>& abscissa);

// Output envelope S = sum_k g_k lt_k |u_k|^2 with g_k the overlap-based
// amplification factor of mode k after the gap (soft: quadratic roll-off
// (pump_half / size_k)^2 once size_k exceeds the pump half-size; hard: 0/1).
struct EnvelopeResult {
  std::vector<double> axis;           // theta in rad (angular) or detuning in rad/fs (spectral)
  std::vector<double> wavelength_nm;  // spectral arm only
  std::vector<double> intensity;      // peak-normalized
  double fwhm_axis = 0;
  double fwhm_nm = 0;                 // spectral arm only
  double amplified_fraction = 0;      // sum_k g_k lt_k
};

EnvelopeResult synthesize_output_spectrum(const InterferometerConfig& config,
                                          const MaterialDatabase& db,
                                          const std::vector<double>& schmidt_eigenvalues,
                                          int axis_points = 2001);
EnvelopeResult synthesize_output_spectrum(const InterferometerConfig& config,
                                          const MaterialDatabase& db,
                                          const SchmidtSpectrum& spectrum,
                                          int axis_points = 2001);

nlohmann::json config_snapshot(const InterferometerConfig& config);

}  // namespace bsv
