#include "bsv/config.hpp"

#include <fstream>
#include <set>

#include "bsv/errors.hpp"
#include "bsv/units.hpp"

namespace bsv {

namespace {

std::string get_string(const nlohmann::json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_string())
    throw ConfigError("config key '" + key + "' must be a string with a unit suffix");
  return v.get<std::string>();
}

}  // namespace

Gap parse_gap(const std::string& text) {
  if (text == "none") return std::monostate{};
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
    throw ConfigError("gap '" + text + "' must be 'none', 'free:<length>' or '<material>:<length>'");
  const std::string head = text.substr(0, colon);
  const double length_mm = units::parse_length_mm(text.substr(colon + 1));
  if (head == "free") return FreeSpaceGap{length_mm};
  return DispersiveGap{head, length_mm};
}

InterferometerConfig parse_config(const nlohmann::json& doc) {
  static const std::set<std::string> known = {
      "arm",          "pump_fwhm",      "pump_half_power_width", "pump_coherence_time",
      "crystal_length", "crystal_material", "pdc_wavelength",    "pump_wavelength",
      "gap",          "gain",           "baseline_fwhm",         "filter"};
  for (const auto& [key, value] : doc.items())
    if (known.find(key) == known.end())
      throw ConfigError("unknown config key '" + key + "'");

  InterferometerConfig c;
  const std::string arm = get_string(doc, "arm");
  if (arm == "angular") c.arm = Arm::angular;
  else if (arm == "spectral") c.arm = Arm::spectral;
  else throw ConfigError("arm must be 'angular' or 'spectral'");

  if (doc.contains("pump_fwhm"))
    c.pump_fwhm_um = units::parse_length_um(get_string(doc, "pump_fwhm"));
  if (doc.contains("pump_half_power_width")) {
    if (doc.contains("pump_fwhm"))
      throw ConfigError("give either pump_fwhm or pump_half_power_width, not both");
    c.pump_fwhm_um = units::parse_length_um(get_string(doc, "pump_half_power_width"));
  }
  if (doc.contains("pump_coherence_time"))
    c.pump_coherence_ps = units::parse_time_ps(get_string(doc, "pump_coherence_time"));

  c.crystal_length_mm = units::parse_length_mm(get_string(doc, "crystal_length"));
  if (doc.contains("crystal_material"))
    c.crystal_material = doc.at("crystal_material").get<std::string>();
  c.pdc_wavelength_um = units::parse_length_um(get_string(doc, "pdc_wavelength"));
  if (doc.contains("pump_wavelength"))
    c.pump_wavelength_um = units::parse_length_um(get_string(doc, "pump_wavelength"));

  if (doc.contains("gap")) c.gap = parse_gap(get_string(doc, "gap"));

  if (doc.contains("gain")) {
    const auto& g = doc.at("gain");
    if (g.is_number()) c.gain = g.get<double>();
    else if (g.is_string()) c.gain = std::stod(g.get<std::string>());
    else throw ConfigError("gain must be a number");
  }

  if (doc.contains("baseline_fwhm"))
    c.baseline_fwhm_nm = units::parse_length_nm(get_string(doc, "baseline_fwhm"));

  if (doc.contains("filter")) {
    const std::string f = get_string(doc, "filter");
    if (f == "soft") c.filter = FilterModel::soft;
    else if (f == "hard") c.filter = FilterModel::hard;
    else throw ConfigError("filter must be 'soft' or 'hard'");
  }

  c.validate();
  return c;
}

InterferometerConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config file '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

InterferometerConfig preset_config(const std::string& name) {
  if (name == "paper-angular") {
    return parse_config(nlohmann::json{
        {"arm", "angular"},
        {"pump_fwhm", "200um"},
        {"crystal_length", "3mm"},
        {"crystal_material", "BBO"},
        {"pdc_wavelength", "709.3nm"},
        {"pump_wavelength", "354.7nm"},
        {"gap", "free:0mm"},
    });
  }
  if (name == "paper-spectral") {
    return parse_config(nlohmann::json{
        {"arm", "spectral"},
        {"pump_coherence_time", "6ps"},
        {"pump_half_power_width", "225um"},
        {"crystal_length", "3mm"},
        {"crystal_material", "BBO"},
        {"pdc_wavelength", "709.3nm"},
        {"pump_wavelength", "354.7nm"},
        {"baseline_fwhm", "45.6nm"},
        {"gap", "none"},
    });
  }
  throw ConfigError("unknown preset '" + name + "'; available: paper-angular, paper-spectral");
}

std::vector<std::string> preset_names() { return {"paper-angular", "paper-spectral"}; }

}  // namespace bsv
