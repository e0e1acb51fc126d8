#include "bsv/schmidt.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bsv/errors.hpp"

namespace bsv {

namespace {

constexpr double boundary_truncation = 1e-3;

void check_normalized(const std::vector<double>& w, const char* what) {
  if (w.empty()) throw InputError(std::string(what) + ": empty weight list");
  double sum = 0;
  for (double v : w) {
    if (!(v >= 0) || !std::isfinite(v))
      throw InputError(std::string(what) + ": weights must be finite and non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream oss;
    oss << what << ": weights must be normalized, got sum " << sum;
    throw InputError(oss.str());
  }
}

}  // namespace

std::vector<double> make_axis(const AxisSpec& spec) {
  if (!(spec.half_span > 0)) throw ConfigError("axis half-span must be positive");
  if (spec.points < 2) throw ConfigError("axis needs at least two points");
  std::vector<double> x(spec.points);
  const double step = 2.0 * spec.half_span / (spec.points - 1);
  for (int i = 0; i < spec.points; ++i) x[i] = -spec.half_span + step * i;
  return x;
}

TpaKernel build_tpa_kernel(double pump_width, double phase_matching_width, const AxisSpec& grid) {
  if (!(pump_width > 0) || !(phase_matching_width > 0))
    throw ConfigError("kernel widths must be positive");
  if (grid.points < 64) throw ConfigError("kernel grid needs at least 64 points");
  const double wmax = std::max(pump_width, phase_matching_width);
  if (2.0 * grid.half_span < 4.0 * wmax)
    throw ConfigError("kernel grid span must be at least 4x the larger width");
  // Along the diagonals the pump Gaussian reaches exp(-x^2/sp^2) and the
  // phase-matching one exp(-x^2/spm^2) at the grid corner x = half_span.
  const double X2 = grid.half_span * grid.half_span;
  if (std::exp(-X2 / (pump_width * pump_width)) > boundary_truncation ||
      std::exp(-X2 / (phase_matching_width * phase_matching_width)) > boundary_truncation)
    throw ConfigError("kernel grid too narrow: Gaussian exceeds 1e-3 of peak at the boundary");

  TpaKernel k;
  k.axis = make_axis(grid);
  const int n = grid.points;
  k.amplitude.resize(n, n);
  const double ap = 1.0 / (4.0 * pump_width * pump_width);
  const double am = 1.0 / (4.0 * phase_matching_width * phase_matching_width);
  for (int i = 0; i < n; ++i) {
    const double xs = k.axis[i];
    for (int j = 0; j < n; ++j) {
      const double xi = k.axis[j];
      const double sum = xs + xi;
      const double dif = xs - xi;
      k.amplitude(i, j) = std::exp(-sum * sum * ap - dif * dif * am);
    }
  }
  k.amplitude /= k.amplitude.norm();
  return k;
}

SchmidtSpectrum schmidt_decompose(const TpaKernel& kernel) {
  const auto& F = kernel.amplitude;
  if (F.rows() != F.cols() || F.rows() < 2)
    throw InputError("Schmidt decomposition needs a square kernel matrix");
  if (!F.allFinite()) throw InputError("kernel matrix contains non-finite entries");
  if (static_cast<int>(kernel.axis.size()) != F.rows())
    throw InputError("kernel axis does not match the amplitude matrix");

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(F, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();

  double total = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) total += sv(i) * sv(i);

  Eigen::Index kept = 0;
  while (kept < sv.size() && sv(kept) >= singular_value_cutoff * sv(0)) ++kept;

  SchmidtSpectrum out;
  out.axis = kernel.axis;
  out.grid_step = kernel.grid_step();
  out.eigenvalues.resize(kept);
  double kept_sum = 0;
  for (Eigen::Index i = 0; i < kept; ++i) {
    out.eigenvalues[i] = sv(i) * sv(i) / total;
    kept_sum += out.eigenvalues[i];
  }
  for (auto& l : out.eigenvalues) l /= kept_sum;

  // Schmidt form F = sum_k sqrt(l_k) u_k v_k^T with F = U S V^H, so the
  // idler modes are the conjugated right singular vectors.  Continuum
  // normalization: <u,u> * dx = 1.
  const double scale = 1.0 / std::sqrt(out.grid_step);
  out.modes_s = svd.matrixU().leftCols(kept) * scale;
  out.modes_i = svd.matrixV().leftCols(kept).conjugate() * scale;
  return out;
}

std::vector<double> renormalize_weights(const std::vector<double>& eigenvalues, double gain) {
  check_normalized(eigenvalues, "renormalize_weights");
  if (!(gain >= 0)) throw InputError("renormalize_weights: gain must be non-negative");
  if (gain == 0) return eigenvalues;  // analytic G -> 0 limit

  // Factor exp(-2 xmax) out of sinh^2 so large gains cannot overflow.
  double xmax = 0;
  for (double l : eigenvalues) xmax = std::max(xmax, std::sqrt(l) * gain);
  std::vector<double> w(eigenvalues.size());
  double sum = 0;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    const double x = std::sqrt(eigenvalues[k]) * gain;
    const double t = 0.5 * (std::exp(x - xmax) - std::exp(-x - xmax));
    w[k] = t * t;
    sum += w[k];
  }
  if (!(sum > 0) || !std::isfinite(sum))
    throw NumericalError("renormalize_weights: degenerate weight sum");
  for (auto& v : w) v /= sum;
  return w;
}

double GainedSpectrum::total_photons() const {
  return std::accumulate(photon_numbers.begin(), photon_numbers.end(), 0.0);
}

GainedSpectrum mean_photon_numbers(const std::vector<double>& eigenvalues, double gain) {
  check_normalized(eigenvalues, "mean_photon_numbers");
  if (!(gain >= 0)) throw InputError("mean_photon_numbers: gain must be non-negative");
  if (gain > 350.0) throw NumericalError("mean_photon_numbers: gain too large for double precision");
  GainedSpectrum g;
  g.gain = gain;
  g.weights = renormalize_weights(eigenvalues, gain);
  g.photon_numbers.resize(eigenvalues.size());
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    const double s = std::sinh(std::sqrt(eigenvalues[k]) * gain);
    g.photon_numbers[k] = s * s;
  }
  return g;
}

GainedSpectrum mean_photon_numbers(const SchmidtSpectrum& spectrum, double gain) {
  return mean_photon_numbers(spectrum.eigenvalues, gain);
}

double effective_mode_number(const std::vector<double>& weights) {
  check_normalized(weights, "effective_mode_number");
  double s2 = 0;
  for (double w : weights) s2 += w * w;
  return 1.0 / s2;
}

Eigen::MatrixXd hermite_columns(const std::vector<double>& points, double scale, int max_order) {
  if (!(scale > 0)) throw InputError("hermite_columns: scale must be positive");
  if (max_order < 0) throw InputError("hermite_columns: order must be non-negative");
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd psi(n, max_order + 1);
  const double norm0 = 1.0 / (std::pow(M_PI, 0.25) * std::sqrt(scale));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = points[i] / scale;
    psi(i, 0) = norm0 * std::exp(-0.5 * xi * xi);
    if (max_order >= 1) psi(i, 1) = std::sqrt(2.0) * xi * psi(i, 0);
    for (int m = 1; m < max_order; ++m)
      psi(i, m + 1) = xi * std::sqrt(2.0 / (m + 1)) * psi(i, m) -
                      std::sqrt(m / (m + 1.0)) * psi(i, m - 1);
  }
  return psi;
}

std::vector<double> hermite_mode(const ModeFamily& family, int order,
                                 const std::vector<double>& points) {
  if (order < 0 || order > family.max_order)
    throw InputError("hermite_mode: order outside the family's range");
  if (points.size() < 2) throw InputError("hermite_mode: need at least two points");
  const double reach = 2.0 * family.scale * std::sqrt(2.0 * order + 1.0);
  if (points.front() > -reach || points.back() < reach)
    throw ConfigError("hermite_mode: grid too narrow for the requested order");
  Eigen::MatrixXd cols = hermite_columns(points, family.scale, order);
  return {cols.col(order).data(), cols.col(order).data() + cols.rows()};
}

DoubleGaussianLaw double_gaussian_law(double pump_width, double phase_matching_width) {
  if (!(pump_width > 0) || !(phase_matching_width > 0))
    throw InputError("double_gaussian_law: widths must be positive");
  const double r = phase_matching_width / pump_width;
  DoubleGaussianLaw law;
  law.schmidt_number = 0.5 * (r + 1.0 / r);
  law.geometric_ratio = (law.schmidt_number - 1.0) / (law.schmidt_number + 1.0);
  law.mode_scale = std::sqrt(pump_width * phase_matching_width);
  return law;
}

std::vector<double> geometric_eigenvalues(double ratio, int count) {
  if (!(ratio >= 0) || ratio >= 1.0)
    throw InputError("geometric_eigenvalues: ratio must lie in [0, 1)");
  if (count < 1) throw InputError("geometric_eigenvalues: count must be positive");
  std::vector<double> lam(count);
  double v = 1.0, sum = 0;
  for (int k = 0; k < count; ++k) {
    lam[k] = v;
    sum += v;
    v *= ratio;
  }
  for (auto& l : lam) l /= sum;
  return lam;
}

}  // namespace bsv
