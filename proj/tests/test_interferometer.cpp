#include <doctest.h>

#include <cmath>
#include <random>

#include "bsv/config.hpp"
#include "bsv/errors.hpp"
#include "bsv/interferometer.hpp"
#include "bsv/units.hpp"

using namespace bsv;

namespace {

const MaterialDatabase& db() {
  static const MaterialDatabase instance = MaterialDatabase::load(BSV_MATERIALS_FILE);
  return instance;
}

InterferometerConfig angular_cfg() { return preset_config("paper-angular"); }
InterferometerConfig spectral_cfg() { return preset_config("paper-spectral"); }

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(angular_cfg().validate());
  CHECK_NOTHROW(spectral_cfg().validate());
  auto c = spectral_cfg();
  c.gain = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = spectral_cfg();
  c.gap = FreeSpaceGap{10.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = angular_cfg();
  c.gap = DispersiveGap{"SF6", 100.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = angular_cfg();
  c.pump_fwhm_um = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("config files: units enforced, unknown keys rejected") {
  CHECK_THROWS_AS(parse_config({{"arm", "spectral"},
                                {"pump_coherence_time", "6"},
                                {"crystal_length", "3mm"},
                                {"pdc_wavelength", "709.3nm"}}),
                  ConfigError);
  CHECK_THROWS_AS(parse_config({{"arm", "spectral"},
                                {"pump_coherence_time", "6ps"},
                                {"crystal_length", "3mm"},
                                {"pdc_wavelength", "709.3nm"},
                                {"typo_key", "1mm"}}),
                  ConfigError);
  CHECK_THROWS_AS(preset_config("nonexistent"), ConfigError);
  CHECK(std::holds_alternative<DispersiveGap>(parse_gap("SF6:10cm")));
  CHECK(std::holds_alternative<FreeSpaceGap>(parse_gap("free:60mm")));
  CHECK(std::holds_alternative<std::monostate>(parse_gap("none")));
  CHECK_THROWS_AS(parse_gap("SF6"), ConfigError);
  CHECK_THROWS_AS(parse_gap("SF6:10"), ConfigError);
}

TEST_CASE("kernel widths of the angular geometry (frozen)") {
  const KernelWidths w = kernel_widths(angular_cfg(), db());
  CHECK(w.pump == doctest::Approx(0.005887050).epsilon(1e-6));
  CHECK(w.phase_matching == doctest::Approx(0.163905549).epsilon(1e-6));
  CHECK(fundamental_waist_um(angular_cfg(), db()) == doctest::Approx(45.527028).epsilon(1e-6));
  CHECK(pump_diameter_um(angular_cfg()) == doctest::Approx(339.728720).epsilon(1e-9));
}

TEST_CASE("kernel widths of the spectral geometry (frozen)") {
  const KernelWidths w = kernel_widths(spectral_cfg(), db());
  CHECK(w.pump == doctest::Approx(1.96235004e-4).epsilon(1e-6));
  CHECK(w.phase_matching == doctest::Approx(0.14193044).epsilon(1e-6));
  const double k_eff = 0.5 * (w.phase_matching / w.pump + w.pump / w.phase_matching);
  CHECK(k_eff == doctest::Approx(361.635).epsilon(1e-4));
  CHECK(fundamental_duration_fs(spectral_cfg(), db()) ==
        doctest::Approx(1.0 / std::sqrt(w.pump * w.phase_matching)).epsilon(1e-12));
}

TEST_CASE("amplified mode scale (frozen and limiting cases)") {
  const auto cfg = angular_cfg();
  CHECK(amplified_mode_scale(cfg, db(), 0.0) == doctest::Approx(3.731066278).epsilon(1e-6));
  CHECK(amplified_mode_scale(cfg, db(), 60.0) == doctest::Approx(0.564306763).epsilon(1e-6));
  // at L = 0 the scale is exactly (a/2) / w0
  CHECK(amplified_mode_scale(cfg, db(), 0.0) ==
        doctest::Approx(0.5 * pump_diameter_um(cfg) / fundamental_waist_um(cfg, db()))
            .epsilon(1e-12));
  CHECK(max_amplified_order(1.0) == 0);
  CHECK(max_amplified_order(3.0) == 4);
  CHECK(max_amplified_order(3.731066278) == 6);
  CHECK(max_amplified_order(0.56) == -1);
  CHECK_THROWS_AS(amplified_mode_scale(spectral_cfg(), db(), 10.0), ConfigError);
}

TEST_CASE("angular width: limits, midpoint, far asymptote, frozen values") {
  const auto cfg = angular_cfg();
  const double theta0 = initial_angular_width(cfg, db());
  CHECK(theta0 == doctest::Approx(0.037006136).epsilon(1e-6));
  CHECK(angular_width(cfg, db(), 0.0) == doctest::Approx(theta0).epsilon(1e-12));

  const double a_um = pump_diameter_um(cfg);
  const double l_mid_mm = a_um / theta0 * 1e-3;
  CHECK(angular_width(cfg, db(), l_mid_mm) ==
        doctest::Approx(theta0 / std::sqrt(2.0)).epsilon(1e-12));

  const double l_far_mm = 100.0 * a_um / theta0 * 1e-3;
  const double expected_far = a_um / (l_far_mm * 1e3);
  CHECK(std::abs(angular_width(cfg, db(), l_far_mm) - expected_far) / expected_far < 1e-4);

  CHECK(angular_width(cfg, db(), 10.0) == doctest::Approx(0.025026198).epsilon(1e-6));
  CHECK(angular_width(cfg, db(), 60.0) == doctest::Approx(0.005597009).epsilon(1e-6));
  CHECK(angular_width(cfg, db(), 130.0) == doctest::Approx(0.002606806).epsilon(1e-6));
  CHECK_THROWS_AS(angular_width(spectral_cfg(), db(), 10.0), ConfigError);
}

TEST_CASE("spectral width: baseline, narrowing points, asymptote (frozen)") {
  const auto cfg = spectral_cfg();
  CHECK(spectral_width(cfg, db(), 0.0).fwhm_nm == doctest::Approx(45.6).epsilon(1e-9));

  const double kd_sf6_9 = gvd_fs2_per_mm(db().get("SF6"), cfg.pdc_wavelength_um) * 90.0;
  const double kd_sf6_18 = gvd_fs2_per_mm(db().get("SF6"), cfg.pdc_wavelength_um) * 183.0;
  const double kd_sf57 = gvd_fs2_per_mm(db().get("SF57"), cfg.pdc_wavelength_um) * 194.0;
  CHECK(kd_sf6_9 == doctest::Approx(21496.721).epsilon(1e-5));
  CHECK(kd_sf6_18 == doctest::Approx(43710.000).epsilon(1e-5));
  CHECK(kd_sf57 == doctest::Approx(52141.903).epsilon(1e-5));

  const double f0 = spectral_width(cfg, db(), 0.0).fwhm_nm;
  const double f1 = spectral_width(cfg, db(), kd_sf6_9).fwhm_nm;
  const double f2 = spectral_width(cfg, db(), kd_sf6_18).fwhm_nm;
  const double f3 = spectral_width(cfg, db(), kd_sf57).fwhm_nm;
  CHECK(f1 == doctest::Approx(42.8033).epsilon(1e-4));
  CHECK(f2 == doctest::Approx(36.5334).epsilon(1e-4));
  CHECK(f3 == doctest::Approx(34.0454).epsilon(1e-4));
  CHECK(f0 > f1);
  CHECK(f1 > f2);
  CHECK(f2 > f3);
  // the largest rod narrows the spectrum by close to 30%
  CHECK(f3 / f0 == doctest::Approx(0.746610).epsilon(1e-4));
  CHECK(f3 / f0 > 0.63);
  CHECK(f3 / f0 < 0.77);

  // far asymptote: half-width -> T_p / k''d
  const double w0 = baseline_spectral_half_width(cfg, db());
  const double t_p = cfg.pump_coherence_ps * 1e3;
  const double kd_far = 1e4 * t_p / w0;
  const double asym = t_p / kd_far;
  CHECK(std::abs(spectral_width(cfg, db(), kd_far).half_width_rad_fs - asym) / asym < 1e-4);

  CHECK_THROWS_AS(spectral_width(angular_cfg(), db(), 100.0), ConfigError);
}

TEST_CASE("without a measured baseline the kernel marginal width is used") {
  auto cfg = spectral_cfg();
  cfg.baseline_fwhm_nm.reset();
  const double fwhm_nm = spectral_width(cfg, db(), 0.0).fwhm_nm;
  CHECK(fwhm_nm == doctest::Approx(44.6337).epsilon(1e-5));
}

TEST_CASE("angular and spectral width formulas coincide under the duality map") {
  const auto acfg = angular_cfg();
  const double theta0 = initial_angular_width(acfg, db());
  const double a_um = pump_diameter_um(acfg);

  auto scfg = spectral_cfg();
  // set the spectral baseline so dw0 (1/e) equals dtheta0 numerically
  scfg.baseline_fwhm_nm = units::domega_to_dlambda_nm(units::half_width_to_fwhm(theta0),
                                                      scfg.pdc_wavelength_um * 1e3);
  const double t_p = scfg.pump_coherence_ps * 1e3;
  for (double x : {0.0, 3.0, 27.5, 1000.0}) {  // x = L/a = k''d/T_p
    const double L_mm = x * a_um * 1e-3;
    const double k2d = x * t_p;
    CHECK(angular_width(acfg, db(), L_mm) ==
          doctest::Approx(spectral_width(scfg, db(), k2d).half_width_rad_fs).epsilon(1e-12));
  }
}

TEST_CASE("width sweeps") {
  SUBCASE("empty abscissa is an input error") {
    CHECK_THROWS_AS(sweep_width(angular_cfg(), db(), {}), InputError);
  }
  SUBCASE("single point equals the direct call") {
    const WidthCurve c = sweep_width(angular_cfg(), db(), {60.0});
    CHECK(c.width.size() == 1);
    CHECK(c.width[0] == angular_width(angular_cfg(), db(), 60.0));
    CHECK(c.unit_abscissa == "mm");
    CHECK(c.unit_width == "rad");
  }
  SUBCASE("spectral sweep carries nm widths") {
    const WidthCurve c = sweep_width(spectral_cfg(), db(), {0.0, 20000.0, 50000.0});
    CHECK(c.unit_abscissa == "fs2");
    CHECK(c.unit_width == "nm");
    CHECK(c.width[0] == doctest::Approx(45.6).epsilon(1e-9));
  }
  SUBCASE("ordinate is non-increasing for randomized configurations") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> pump(80.0, 400.0);
    std::uniform_real_distribution<double> crystal(0.5, 10.0);
    std::uniform_real_distribution<double> coherence(1.0, 20.0);
    for (int trial = 0; trial < 40; ++trial) {
      InterferometerConfig cfg = (trial % 2 == 0) ? angular_cfg() : spectral_cfg();
      std::vector<double> abs_list;
      if (cfg.arm == Arm::angular) {
        cfg.pump_fwhm_um = pump(rng);
        cfg.crystal_length_mm = crystal(rng);
        for (int i = 0; i <= 20; ++i) abs_list.push_back(10.0 * i);
      } else {
        cfg.pump_coherence_ps = coherence(rng);
        cfg.crystal_length_mm = crystal(rng);
        for (int i = 0; i <= 20; ++i) abs_list.push_back(4000.0 * i);
      }
      const WidthCurve c = sweep_width(cfg, db(), abs_list);
      for (std::size_t i = 1; i < c.width.size(); ++i) {
        CHECK(c.width[i] > 0);
        CHECK(c.width[i] <= c.width[i - 1] + 1e-12);
      }
    }
  }
}

TEST_CASE("synthesized envelope: single mode is a Gaussian independent of the gap") {
  auto cfg = spectral_cfg();
  const std::vector<double> single{1.0};
  const auto none = synthesize_output_spectrum(cfg, db(), single);
  cfg.gap = DispersiveGap{"SF6", 100.0};
  const auto gapped = synthesize_output_spectrum(cfg, db(), single);
  CHECK(none.fwhm_axis == doctest::Approx(gapped.fwhm_axis).epsilon(1e-12));
  // the single-mode envelope has the baseline width (K = 1)
  const double expected = units::half_width_to_fwhm(baseline_spectral_half_width(cfg, db()));
  CHECK(none.fwhm_axis == doctest::Approx(expected).epsilon(1e-3));
  // symmetric and peak-normalized
  CHECK(*std::max_element(none.intensity.begin(), none.intensity.end()) ==
        doctest::Approx(1.0));
}

TEST_CASE("synthesized envelope with no gap reproduces the unfiltered marginal width") {
  const auto cfg = spectral_cfg();  // gap = none
  const KernelWidths w = kernel_widths(cfg, db());
  const auto law = double_gaussian_law(w.pump, w.phase_matching);
  const auto lam = geometric_eigenvalues(law.geometric_ratio, 2500);
  const auto env = synthesize_output_spectrum(cfg, db(), lam);
  CHECK(env.amplified_fraction == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(env.fwhm_nm == doctest::Approx(45.6).epsilon(2e-3));
  CHECK_FALSE(env.wavelength_nm.empty());
}

TEST_CASE("synthesized envelope narrows with the dispersive rods in order") {
  auto cfg = spectral_cfg();
  const KernelWidths w = kernel_widths(cfg, db());
  const auto law = double_gaussian_law(w.pump, w.phase_matching);
  const auto lam = geometric_eigenvalues(law.geometric_ratio, 2500);

  auto fwhm_with = [&](Gap gap) {
    cfg.gap = gap;
    return synthesize_output_spectrum(cfg, db(), lam).fwhm_nm;
  };
  const double air = fwhm_with(DispersiveGap{"air", 242.0});
  const double sf6_long = fwhm_with(DispersiveGap{"SF6", 183.0});
  const double sf57 = fwhm_with(DispersiveGap{"SF57", 194.0});
  CHECK(air > sf6_long);
  CHECK(sf6_long > sf57);
}

TEST_CASE("synthesized envelope FWHM tracks the closed-form width within 15%") {
  auto cfg = spectral_cfg();
  const KernelWidths w = kernel_widths(cfg, db());
  const auto law = double_gaussian_law(w.pump, w.phase_matching);
  const auto lam = geometric_eigenvalues(law.geometric_ratio, 2500);

  const Gap gaps[] = {Gap{DispersiveGap{"air", 242.0}}, Gap{DispersiveGap{"SF6", 90.0}},
                      Gap{DispersiveGap{"SF6", 183.0}}, Gap{DispersiveGap{"SF57", 194.0}}};
  for (const Gap& gap : gaps) {
    cfg.gap = gap;
    const double synth = synthesize_output_spectrum(cfg, db(), lam).fwhm_axis;
    const double closed = spectral_width(cfg, db(), gap_k2d_fs2(cfg, db())).fwhm_rad_fs;
    CHECK(std::abs(synth / closed - 1.0) < 0.15);
  }
}

TEST_CASE("hard filter also narrows monotonically") {
  auto cfg = spectral_cfg();
  cfg.filter = FilterModel::hard;
  const KernelWidths w = kernel_widths(cfg, db());
  const auto law = double_gaussian_law(w.pump, w.phase_matching);
  const auto lam = geometric_eigenvalues(law.geometric_ratio, 2500);
  cfg.gap = DispersiveGap{"air", 242.0};
  const double air = synthesize_output_spectrum(cfg, db(), lam).fwhm_nm;
  cfg.gap = DispersiveGap{"SF57", 194.0};
  const double sf57 = synthesize_output_spectrum(cfg, db(), lam).fwhm_nm;
  CHECK(sf57 < air);
}

TEST_CASE("beyond the single-mode distance the angular envelope saturates") {
  auto cfg = angular_cfg();
  const KernelWidths w = kernel_widths(cfg, db());
  const auto law = double_gaussian_law(w.pump, w.phase_matching);
  const auto lam = geometric_eigenvalues(law.geometric_ratio, 400);

  // single-mode point: amplified_mode_scale(L) = 1
  double l_single = 0;
  for (double L = 0.0; L < 300.0; L += 0.25) {
    if (amplified_mode_scale(cfg, db(), L) <= 1.0) {
      l_single = L;
      break;
    }
  }
  REQUIRE(l_single > 0);

  double prev_fraction = 2.0;
  double fwhm_ref = 0;
  for (double L : {1.2 * l_single, 1.8 * l_single, 3.0 * l_single, 6.0 * l_single}) {
    cfg.gap = FreeSpaceGap{L};
    const auto env = synthesize_output_spectrum(cfg, db(), lam);
    if (fwhm_ref == 0) fwhm_ref = env.fwhm_axis;
    CHECK(std::abs(env.fwhm_axis / fwhm_ref - 1.0) < 0.05);
    CHECK(env.amplified_fraction < prev_fraction);
    prev_fraction = env.amplified_fraction;
  }
}

TEST_CASE("synthesis input errors") {
  CHECK_THROWS_AS(synthesize_output_spectrum(spectral_cfg(), db(), std::vector<double>{}),
                  InputError);
  CHECK_THROWS_AS(synthesize_output_spectrum(spectral_cfg(), db(), {1.0}, 16), InputError);
  SchmidtSpectrum empty;
  CHECK_THROWS_AS(synthesize_output_spectrum(spectral_cfg(), db(), empty), InputError);
}
