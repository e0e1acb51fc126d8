#pragma once

#include <string>
#include <string_view>

namespace bsv::units {

inline constexpr double c_um_per_fs = 0.299792458;
inline constexpr double c_nm_per_fs = 299.792458;

// FWHM(intensity) / (1/e-intensity half-width) for a Gaussian profile.
// All width conversions in the project go through the functions below;
// internal computations use the 1/e-intensity half-width s of an amplitude
// profile exp(-x^2 / (2 s^2)).  The beam-waist convention w (1/e^2-intensity
// radius, amplitude exp(-x^2/w^2)) relates to it by w = sqrt(2) * s.
extern const double fwhm_per_half_width;

double fwhm_to_half_width(double fwhm);    // intensity FWHM -> 1/e-intensity half-width
double half_width_to_fwhm(double w);
double fwhm_to_waist(double fwhm);         // intensity FWHM -> 1/e^2-intensity radius
double waist_to_half_width(double waist);  // w -> s
double half_width_to_waist(double s);      // s -> w

// Linearized spectral width conversion at a fixed carrier wavelength.
double domega_to_dlambda_nm(double domega_rad_fs, double lambda0_nm);
double dlambda_nm_to_domega(double dlambda_nm, double lambda0_nm);

// A number with a mandatory unit suffix, e.g. "200um", "6ps", "45.6nm".
// Bare numbers and unknown suffixes are rejected (ConfigError).
struct Quantity {
  double value = 0;
  std::string unit;
};

Quantity parse_quantity(std::string_view text);

// Dimension-checked conversions; throw ConfigError when the unit does not
// name a length / time / angular-frequency width.
double length_um(const Quantity& q);
double length_mm(const Quantity& q);
double length_nm(const Quantity& q);
double time_fs(const Quantity& q);
double time_ps(const Quantity& q);
double angular_rate(const Quantity& q);  // rad/fs or rad/um, returned as given

double parse_length_um(std::string_view text);
double parse_length_mm(std::string_view text);
double parse_length_nm(std::string_view text);
double parse_time_fs(std::string_view text);
double parse_time_ps(std::string_view text);

}  // namespace bsv::units
