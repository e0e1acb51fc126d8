#pragma once

#include <string>

#include <json.hpp>

#include "bsv/interferometer.hpp"

namespace bsv {

// Flat JSON config document.  All physical quantities are strings with unit
// suffixes ("3mm", "6ps", "45.6nm"); bare numbers are rejected.  Recognized
// keys:
//   arm                   "angular" | "spectral"
//   pump_fwhm             pump beam width, intensity FWHM (angular arm)
//   pump_half_power_width alias for pump_fwhm (half power = half maximum)
//   pump_coherence_time   pump coherence time (spectral arm)
//   crystal_length, crystal_material, pdc_wavelength, pump_wavelength
//   gap                   "none" | "free:<len>" | "<material>:<len>"
//   gain                  dimensionless number
//   baseline_fwhm         measured baseline spectral FWHM (overrides kernel)
//   filter                "soft" | "hard"
InterferometerConfig parse_config(const nlohmann::json& doc);
InterferometerConfig load_config_file(const std::string& path);

// Gap descriptor used by config files and CLI flags.
Gap parse_gap(const std::string& text);

// Built-in presets: "paper-angular" (3 mm crystals, 200 um FWHM pump,
// 709.3 nm) and "paper-spectral" (3 mm BBO, 354.7 nm pump, 6 ps coherence
// time, 225 um half-power pump width, 45.6 nm measured baseline).
InterferometerConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace bsv
