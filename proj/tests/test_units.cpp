#include <doctest.h>

#include <cmath>

#include "bsv/errors.hpp"
#include "bsv/units.hpp"

using namespace bsv;
namespace u = bsv::units;

TEST_CASE("quantity parsing accepts unit suffixes") {
  CHECK(u::parse_length_um("200um") == doctest::Approx(200.0));
  CHECK(u::parse_length_um("0.7093um") == doctest::Approx(0.7093));
  CHECK(u::parse_length_um("710nm") == doctest::Approx(0.710));
  CHECK(u::parse_length_um("3mm") == doctest::Approx(3000.0));
  CHECK(u::parse_length_mm("19.4cm") == doctest::Approx(194.0));
  CHECK(u::parse_length_mm("0.06m") == doctest::Approx(60.0));
  CHECK(u::parse_time_fs("6ps") == doctest::Approx(6000.0));
  CHECK(u::parse_time_ps("1500fs") == doctest::Approx(1.5));
  CHECK(u::parse_quantity("  45.6nm ").unit == "nm");
}

TEST_CASE("bare numbers and unknown units are rejected") {
  CHECK_THROWS_AS(u::parse_quantity("200"), ConfigError);
  CHECK_THROWS_AS(u::parse_quantity(""), ConfigError);
  CHECK_THROWS_AS(u::parse_quantity("abc"), ConfigError);
  CHECK_THROWS_AS(u::parse_length_um("5kg"), ConfigError);
  CHECK_THROWS_AS(u::parse_length_um("6ps"), ConfigError);   // time is not a length
  CHECK_THROWS_AS(u::parse_time_fs("710nm"), ConfigError);   // length is not a time
}

TEST_CASE("gaussian width conversions") {
  const double fwhm = 200.0;
  const double w = u::fwhm_to_waist(fwhm);
  CHECK(w == doctest::Approx(169.8655).epsilon(1e-5));
  const double s = u::fwhm_to_half_width(fwhm);
  CHECK(w == doctest::Approx(s * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(u::half_width_to_fwhm(s) == doctest::Approx(fwhm).epsilon(1e-12));
  CHECK(u::waist_to_half_width(u::half_width_to_waist(s)) == doctest::Approx(s).epsilon(1e-12));
  // an amplitude profile exp(-x^2/(2 s^2)) drops to half intensity at FWHM/2
  const double intensity = std::exp(-(fwhm / 2) * (fwhm / 2) / (s * s));
  CHECK(intensity == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spectral width conversion round trip is the identity") {
  const double lambda0 = 709.3;
  for (double dl : {0.1, 1.0, 45.6, 120.0}) {
    const double dw = u::dlambda_nm_to_domega(dl, lambda0);
    CHECK(u::domega_to_dlambda_nm(dw, lambda0) == doctest::Approx(dl).epsilon(1e-12));
  }
  // 45.6 nm at 709.3 nm, frozen independent evaluation
  CHECK(u::dlambda_nm_to_domega(45.6, 709.3) == doctest::Approx(0.170728291).epsilon(1e-8));
}
