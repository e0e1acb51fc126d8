#pragma once

#include <Eigen/Core>
#include <vector>

namespace bsv {

// Uniform symmetric grid over [-half_span, half_span], endpoint inclusive.
struct AxisSpec {
  double half_span = 0;
  int points = 0;
};

std::vector<double> make_axis(const AxisSpec& spec);

// Discretized two-photon amplitude on a shared signal/idler grid
// (transverse wavevector in rad/um or frequency detuning in rad/fs).
// The amplitude matrix is Frobenius-normalized to 1 after construction.
struct TpaKernel {
  std::vector<double> axis;
  Eigen::MatrixXcd amplitude;
  double grid_step() const { return axis[1] - axis[0]; }
};

// Double-Gaussian kernel model,
//   F(xs, xi) = exp(-(xs+xi)^2 / 4 sp^2) * exp(-(xs-xi)^2 / 4 spm^2),
// with sp the pump width and spm the phase-matching width.  The grid must
// span at least four times the larger width and keep both Gaussians below
// 1e-3 of their peak at the boundary.
TpaKernel build_tpa_kernel(double pump_width, double phase_matching_width, const AxisSpec& grid);

// Schmidt decomposition of a kernel: eigenvalues (descending, summing to 1)
// and mode functions normalized on the continuum measure,
// <u_j, u_k> * grid_step = delta_jk.
struct SchmidtSpectrum {
  std::vector<double> eigenvalues;
  Eigen::MatrixXcd modes_s;  // one column per kept mode
  Eigen::MatrixXcd modes_i;
  std::vector<double> axis;
  double grid_step = 0;
};

SchmidtSpectrum schmidt_decompose(const TpaKernel& kernel);

// Singular values below this fraction of the leading one are treated as
// factorization noise and truncated.
inline constexpr double singular_value_cutoff = 1e-12;

// Gain-dependent weights, lt_k = sinh^2(sqrt(l_k) G) / sum_j sinh^2(sqrt(l_j) G).
// G = 0 returns the eigenvalues unchanged (the analytic limit).
std::vector<double> renormalize_weights(const std::vector<double>& eigenvalues, double gain);

// Per-mode photon numbers <N_k> = sinh^2(sqrt(l_k) G) plus the renormalized
// weights for the same gain.
struct GainedSpectrum {
  double gain = 0;
  std::vector<double> weights;
  std::vector<double> photon_numbers;
  double total_photons() const;
};

GainedSpectrum mean_photon_numbers(const SchmidtSpectrum& spectrum, double gain);
GainedSpectrum mean_photon_numbers(const std::vector<double>& eigenvalues, double gain);

// Inverse participation ratio K = 1 / sum_k w_k^2 of normalized weights.
double effective_mode_number(const std::vector<double>& weights);

// Analytic Hermite-function mode set
//   psi_m(x) = H_m(x/s) exp(-x^2 / 2 s^2) / norm,
// L2-normalized on the continuum measure.  scale is w0/sqrt(2) for spatial
// Hermite-Gauss beams or the fundamental duration tau0 for temporal modes.
enum class ModeKind { spatial, temporal };

struct ModeFamily {
  ModeKind kind = ModeKind::temporal;
  double scale = 0;    // um (spatial) or fs (temporal)
  double carrier = 0;  // wavelength in um or center frequency in rad/fs
  int max_order = 0;
};

std::vector<double> hermite_mode(const ModeFamily& family, int order,
                                 const std::vector<double>& points);

// All orders 0..max_order evaluated at once (column per order).  Pointwise
// evaluation by the stable three-term recurrence; no grid-coverage check.
Eigen::MatrixXd hermite_columns(const std::vector<double>& points, double scale, int max_order);

// Closed-form Schmidt data of the double-Gaussian kernel: Schmidt number
// K = (r + 1/r)/2 for r = spm/sp, geometric eigenvalue ratio q = (K-1)/(K+1)
// and fundamental mode scale sqrt(sp * spm).
struct DoubleGaussianLaw {
  double schmidt_number = 0;
  double geometric_ratio = 0;
  double mode_scale = 0;
};

DoubleGaussianLaw double_gaussian_law(double pump_width, double phase_matching_width);

// First `count` geometric eigenvalues (1-q) q^k, renormalized to sum to 1.
std::vector<double> geometric_eigenvalues(double ratio, int count);

}  // namespace bsv
