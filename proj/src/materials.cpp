#include "bsv/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bsv/errors.hpp"
#include "bsv/units.hpp"

namespace bsv {

namespace {

void check_range(const Material& m, double lambda_um) {
  if (!(lambda_um >= m.lambda_min_um && lambda_um <= m.lambda_max_um)) {
    std::ostringstream oss;
    oss << "wavelength " << lambda_um << " um outside the validity range of "
        << m.name << " [" << m.lambda_min_um << ", " << m.lambda_max_um << "] um";
    throw RangeError(oss.str());
  }
}

// k(omega) in rad/um, omega in rad/fs
double wavevector(const Material& m, double omega) {
  const double lambda = 2.0 * M_PI * units::c_um_per_fs / omega;
  check_range(m, lambda);
  return refractive_index(m, lambda) * omega / units::c_um_per_fs;
}

}  // namespace

MaterialDatabase MaterialDatabase::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material data file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed material data file '" + path + "': " + e.what());
  }
  if (!j.contains("materials") || !j["materials"].is_array())
    throw ConfigError("material data file '" + path + "' lacks a materials array");

  MaterialDatabase db;
  for (const auto& rec : j["materials"]) {
    Material m;
    m.name = rec.at("name").get<std::string>();
    const auto& b = rec.at("B");
    const auto& c = rec.at("C");
    if (b.size() != 3 || c.size() != 3)
      throw ConfigError("material '" + m.name + "' needs exactly three Sellmeier terms");
    for (int i = 0; i < 3; ++i) {
      m.sellmeier_b[i] = b[i].get<double>();
      m.sellmeier_c[i] = c[i].get<double>();
    }
    const auto& r = rec.at("range_um");
    if (r.size() != 2) throw ConfigError("material '" + m.name + "' needs range_um = [min, max]");
    m.lambda_min_um = r[0].get<double>();
    m.lambda_max_um = r[1].get<double>();
    if (!(m.lambda_min_um > 0 && m.lambda_max_um > m.lambda_min_um))
      throw ConfigError("material '" + m.name + "' has an invalid validity range");
    db.materials_.push_back(std::move(m));
  }
  if (db.materials_.empty()) throw ConfigError("material data file '" + path + "' is empty");
  return db;
}

MaterialDatabase MaterialDatabase::load_default() {
  return load(BSV_DEFAULT_MATERIALS_PATH);
}

const Material& MaterialDatabase::get(std::string_view name) const {
  for (const auto& m : materials_)
    if (m.name == name) return m;
  std::ostringstream oss;
  oss << "unknown material '" << name << "'; known materials:";
  for (const auto& n : names()) oss << " " << n;
  throw ConfigError(oss.str());
}

bool MaterialDatabase::contains(std::string_view name) const {
  return std::any_of(materials_.begin(), materials_.end(),
                     [&](const Material& m) { return m.name == name; });
}

std::vector<std::string> MaterialDatabase::names() const {
  std::vector<std::string> out;
  out.reserve(materials_.size());
  for (const auto& m : materials_) out.push_back(m.name);
  std::sort(out.begin(), out.end());
  return out;
}

double refractive_index(const Material& m, double lambda_um) {
  check_range(m, lambda_um);
  const double l2 = lambda_um * lambda_um;
  double n2 = 1.0;
  for (int i = 0; i < 3; ++i)
    n2 += m.sellmeier_b[i] * l2 / (l2 - m.sellmeier_c[i]);
  if (!(n2 > 0) || !std::isfinite(n2))
    throw NumericalError("Sellmeier evaluation failed for " + m.name);
  return std::sqrt(n2);
}

double gvd_fs2_per_mm(const Material& m, double lambda_um) {
  check_range(m, lambda_um);
  const double omega0 = 2.0 * M_PI * units::c_um_per_fs / lambda_um;
  const double h = gvd_relative_step * omega0;
  // wavevector() re-checks the range, so a differentiation neighborhood that
  // leaves the validity window surfaces as a RangeError.
  const double d2 =
      (wavevector(m, omega0 + h) - 2.0 * wavevector(m, omega0) + wavevector(m, omega0 - h)) /
      (h * h);
  return d2 * 1e3;  // fs^2/um -> fs^2/mm
}

}  // namespace bsv
