#include "bsv/units.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

#include "bsv/errors.hpp"

namespace bsv::units {

const double fwhm_per_half_width = 2.0 * std::sqrt(std::log(2.0));

double fwhm_to_half_width(double fwhm) { return fwhm / fwhm_per_half_width; }
double half_width_to_fwhm(double w) { return w * fwhm_per_half_width; }
double fwhm_to_waist(double fwhm) { return fwhm / std::sqrt(2.0 * std::log(2.0)); }
double waist_to_half_width(double waist) { return waist / std::sqrt(2.0); }
double half_width_to_waist(double s) { return s * std::sqrt(2.0); }

double domega_to_dlambda_nm(double domega_rad_fs, double lambda0_nm) {
  return domega_rad_fs * lambda0_nm * lambda0_nm / (2.0 * M_PI * c_nm_per_fs);
}

double dlambda_nm_to_domega(double dlambda_nm, double lambda0_nm) {
  return dlambda_nm * 2.0 * M_PI * c_nm_per_fs / (lambda0_nm * lambda0_nm);
}

Quantity parse_quantity(std::string_view text) {
  std::string s(text);
  // trim
  auto notspace = [](unsigned char c) { return std::isspace(c) == 0; };
  while (!s.empty() && !notspace(s.front())) s.erase(s.begin());
  while (!s.empty() && !notspace(s.back())) s.pop_back();
  if (s.empty()) throw ConfigError("empty quantity");

  const char* begin = s.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin) throw ConfigError("quantity '" + s + "' has no numeric part");
  std::string unit(end);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front())))
    unit.erase(unit.begin());
  if (unit.empty())
    throw ConfigError("quantity '" + s + "' lacks a unit suffix (nm/um/mm/cm/m, fs/ps/ns, rad/fs, rad/um)");
  if (unit == "µm") unit = "um";  // accept the micro sign
  return {value, unit};
}

namespace {

const std::map<std::string, double>& length_factors_um() {
  static const std::map<std::string, double> f = {
      {"nm", 1e-3}, {"um", 1.0}, {"mm", 1e3}, {"cm", 1e4}, {"m", 1e6}};
  return f;
}

const std::map<std::string, double>& time_factors_fs() {
  static const std::map<std::string, double> f = {
      {"fs", 1.0}, {"ps", 1e3}, {"ns", 1e6}};
  return f;
}

}  // namespace

double length_um(const Quantity& q) {
  auto it = length_factors_um().find(q.unit);
  if (it == length_factors_um().end())
    throw ConfigError("expected a length, got unit '" + q.unit + "'");
  return q.value * it->second;
}

double length_mm(const Quantity& q) { return length_um(q) * 1e-3; }
double length_nm(const Quantity& q) { return length_um(q) * 1e3; }

double time_fs(const Quantity& q) {
  auto it = time_factors_fs().find(q.unit);
  if (it == time_factors_fs().end())
    throw ConfigError("expected a time, got unit '" + q.unit + "'");
  return q.value * it->second;
}

double time_ps(const Quantity& q) { return time_fs(q) * 1e-3; }

double angular_rate(const Quantity& q) {
  if (q.unit != "rad/fs" && q.unit != "rad/um")
    throw ConfigError("expected an angular width (rad/fs or rad/um), got unit '" + q.unit + "'");
  return q.value;
}

double parse_length_um(std::string_view t) { return length_um(parse_quantity(t)); }
double parse_length_mm(std::string_view t) { return length_mm(parse_quantity(t)); }
double parse_length_nm(std::string_view t) { return length_nm(parse_quantity(t)); }
double parse_time_fs(std::string_view t) { return time_fs(parse_quantity(t)); }
double parse_time_ps(std::string_view t) { return time_ps(parse_quantity(t)); }

}  // namespace bsv::units
