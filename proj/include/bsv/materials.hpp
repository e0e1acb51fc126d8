#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace bsv {

// Optical medium described by a three-term Sellmeier series,
//   n^2(l) = 1 + sum_i B_i l^2 / (l^2 - C_i),   l in um, C_i in um^2,
// valid only inside [lambda_min_um, lambda_max_um].  Queries outside the
// window raise RangeError; there is no extrapolation.
struct Material {
  std::string name;
  std::array<double, 3> sellmeier_b{};
  std::array<double, 3> sellmeier_c{};  // um^2
  double lambda_min_um = 0;
  double lambda_max_um = 0;
};

class MaterialDatabase {
 public:
  static MaterialDatabase load(const std::string& path);
  static MaterialDatabase load_default();  // ships with the artifact

  const Material& get(std::string_view name) const;  // ConfigError if unknown
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;            // sorted
  const std::vector<Material>& all() const { return materials_; }

 private:
  std::vector<Material> materials_;
};

double refractive_index(const Material& material, double lambda_um);

// Group-velocity dispersion k'' = d^2 k / d omega^2 of k(w) = n(w) w / c,
// by second-order central differences with a relative frequency step of
// 1e-4 of the carrier.  Result in fs^2/mm.
double gvd_fs2_per_mm(const Material& material, double lambda_um);

inline constexpr double gvd_relative_step = 1e-4;

}  // namespace bsv
