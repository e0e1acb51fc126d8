// bsvsim — SU(1,1) interferometer spectral-engineering calculator.
//
// Subcommands: material, angular-sweep, spectral-sweep, modes, schmidt.
// Exit codes: 0 success, 2 input/config error, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsv/config.hpp"
#include "bsv/errors.hpp"
#include "bsv/interferometer.hpp"
#include "bsv/materials.hpp"
#include "bsv/propagation.hpp"
#include "bsv/schmidt.hpp"
#include "bsv/table_io.hpp"
#include "bsv/units.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct OutputSet {
  std::string command;
  nlohmann::json config;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

void write_file(const std::string& path, const std::string& contents,
                std::vector<std::string>& outputs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bsv::ConfigError("cannot open output file '" + path + "'");
  out << contents;
  out.close();
  if (!out) throw bsv::NumericalError("failed writing output file '" + path + "'");
  outputs.push_back(path);
}

// The manifest is written last so every referenced output already exists.
void write_manifest(const std::string& out_path, const OutputSet& set) {
  nlohmann::json m;
  m["command"] = set.command;
  m["artifact_version"] = kVersion;
  m["config"] = set.config;
  m["inputs"] = set.inputs;
  m["outputs"] = set.outputs;
  m["timestamp"] = iso_timestamp();
  std::ofstream out(out_path + ".manifest.json", std::ios::binary);
  if (!out) throw bsv::ConfigError("cannot open manifest '" + out_path + ".manifest.json'");
  out << m.dump(2) << "\n";
}

struct ConfigSource {
  std::string preset;
  std::string config_path;

  bsv::InterferometerConfig resolve(std::vector<std::string>& inputs) const {
    if (!preset.empty() && !config_path.empty())
      throw bsv::ConfigError("give either --preset or --config, not both");
    if (!preset.empty()) {
      inputs.push_back("preset:" + preset);
      return bsv::preset_config(preset);
    }
    if (!config_path.empty()) {
      inputs.push_back(config_path);
      return bsv::load_config_file(config_path);
    }
    throw bsv::ConfigError("a configuration is required (--preset or --config)");
  }
};

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> orders;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    const int v = std::stoi(item, &pos);
    if (pos != item.size() || v < 0)
      throw bsv::InputError("orders must be non-negative integers, got '" + item + "'");
    orders.push_back(v);
  }
  if (orders.empty()) throw bsv::InputError("no mode orders given");
  return orders;
}

int run_material(const bsv::MaterialDatabase& db, const std::string& name,
                 const std::string& wavelength) {
  const bsv::Material& m = db.get(name);
  const double lambda_um = bsv::units::parse_length_um(wavelength);
  const double n = bsv::refractive_index(m, lambda_um);
  const double k2 = bsv::gvd_fs2_per_mm(m, lambda_um);
  std::cout << "material: " << m.name << "\n"
            << "wavelength_um: " << bsv::format_number(lambda_um) << "\n"
            << "n: " << bsv::format_number(n) << "\n"
            << "gvd_fs2_per_mm: " << bsv::format_number(k2) << "\n";
  return 0;
}

int run_angular_sweep(const bsv::MaterialDatabase& db, const ConfigSource& src,
                      const std::string& from, const std::string& to, const std::string& step,
                      const std::string& out_path, const std::string& format) {
  OutputSet set;
  set.command = "angular-sweep";
  const auto config = src.resolve(set.inputs);
  set.config = bsv::config_snapshot(config);

  const double l0 = bsv::units::parse_length_mm(from);
  const double l1 = bsv::units::parse_length_mm(to);
  const double dl = bsv::units::parse_length_mm(step);
  if (!(dl > 0)) throw bsv::InputError("sweep step must be positive");
  if (l1 < l0) throw bsv::InputError("empty sweep range: upper bound below lower bound");
  std::vector<double> abscissa;
  for (double L = l0; L <= l1 + 1e-9 * dl; L += dl) abscissa.push_back(L);

  const bsv::WidthCurve curve = bsv::sweep_width(config, db, abscissa);
  std::ostringstream data;
  if (format == "json") data << bsv::width_curve_json(curve).dump(2) << "\n";
  else {
    std::ostringstream csv;
    bsv::write_width_curve_csv(csv, curve);
    data << csv.str();
  }
  write_file(out_path, data.str(), set.outputs);

  nlohmann::json meta{{"config", curve.metadata},
                      {"unit_abscissa", curve.unit_abscissa},
                      {"unit_width", curve.unit_width}};
  write_file(out_path + ".meta.json", meta.dump(2) + "\n", set.outputs);
  write_manifest(out_path, set);
  return 0;
}

int run_spectral_sweep(const bsv::MaterialDatabase& db, const ConfigSource& src,
                       const std::vector<std::string>& media, const std::string& out_path,
                       const std::string& format) {
  OutputSet set;
  set.command = "spectral-sweep";
  const auto config = src.resolve(set.inputs);
  set.config = bsv::config_snapshot(config);

  // baseline row (k''d = 0) plus one row per medium, ascending in k''d
  std::vector<double> abscissa{0.0};
  for (const auto& spec : media) {
    const bsv::Gap gap = bsv::parse_gap(spec);
    const auto* d = std::get_if<bsv::DispersiveGap>(&gap);
    if (!d) throw bsv::ConfigError("spectral sweep media must be '<material>:<length>', got '" +
                                   spec + "'");
    abscissa.push_back(bsv::gvd_fs2_per_mm(db.get(d->material), config.pdc_wavelength_um) *
                       d->length_mm);
  }
  std::sort(abscissa.begin(), abscissa.end());

  const bsv::WidthCurve curve = bsv::sweep_width(config, db, abscissa);
  std::ostringstream data;
  if (format == "json") data << bsv::width_curve_json(curve).dump(2) << "\n";
  else {
    std::ostringstream csv;
    bsv::write_width_curve_csv(csv, curve);
    data << csv.str();
  }
  write_file(out_path, data.str(), set.outputs);

  nlohmann::json meta{{"config", curve.metadata},
                      {"unit_abscissa", curve.unit_abscissa},
                      {"unit_width", curve.unit_width},
                      {"media", media}};
  write_file(out_path + ".meta.json", meta.dump(2) + "\n", set.outputs);
  write_manifest(out_path, set);
  return 0;
}

// Temporal mode profiles before/after the gap.  The fundamental duration is
// the coherence time of the downconverted light, 2*pi / dw0.
int run_modes(const bsv::MaterialDatabase& db, const ConfigSource& src,
              const std::string& orders_text, const std::string& gap_text,
              const std::string& out_path, const std::string& format) {
  OutputSet set;
  set.command = "modes";
  auto config = src.resolve(set.inputs);
  if (config.arm != bsv::Arm::spectral)
    throw bsv::ConfigError("the modes command needs a spectral-arm configuration");
  if (!gap_text.empty()) config.gap = bsv::parse_gap(gap_text);
  config.validate();
  set.config = bsv::config_snapshot(config);

  const std::vector<int> orders = parse_orders(orders_text);
  const int max_order = *std::max_element(orders.begin(), orders.end());

  const double dw0_fwhm =
      bsv::units::half_width_to_fwhm(bsv::baseline_spectral_half_width(config, db));
  const double tau0 = 2.0 * M_PI / dw0_fwhm;
  const double k2d = bsv::gap_k2d_fs2(config, db);
  const double tau_d = bsv::pulse_duration_at({tau0, k2d}, 0);
  const double pump_half = bsv::units::fwhm_to_half_width(config.pump_coherence_ps * 1e3);

  const double reach = std::sqrt(2.0 * max_order + 1.0);
  const double half_span = std::max(2.2 * reach * tau_d, 2.5 * pump_half);
  const double dx = tau0 / 4.0;
  int n = 2 * static_cast<int>(std::ceil(half_span / dx)) + 1;
  n = std::min(n, 32769);
  const std::vector<double> t = bsv::make_axis({half_span, n});

  std::vector<std::string> names{"pump"};
  std::vector<std::vector<double>> columns;
  {
    std::vector<double> pump(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      pump[i] = std::exp(-t[i] * t[i] / (2.0 * pump_half * pump_half));
    columns.push_back(std::move(pump));
  }
  const double carrier = 2.0 * M_PI * bsv::units::c_um_per_fs / config.pdc_wavelength_um;
  const bsv::ModeFamily before{bsv::ModeKind::temporal, tau0, carrier, max_order};
  const bsv::ModeFamily after{bsv::ModeKind::temporal, tau_d, carrier, max_order};
  for (int m : orders) {
    for (const auto* fam : {&before, &after}) {
      std::vector<double> psi = bsv::hermite_mode(*fam, m, t);
      double peak = 0;
      for (double v : psi) peak = std::max(peak, std::abs(v));
      for (auto& v : psi) {
        v /= peak;
        if (std::abs(v) < 1e-300) v = 0.0;  // flush subnormal tails
      }
      names.push_back("mode" + std::to_string(m) + (fam == &before ? "_before" : "_after"));
      columns.push_back(std::move(psi));
    }
  }

  std::ostringstream data;
  if (format == "json") {
    nlohmann::json j;
    j["t_fs"] = t;
    for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = columns[i];
    data << j.dump(2) << "\n";
  } else {
    bsv::write_columns_csv(data, "t_fs", t, names, columns);
  }
  write_file(out_path, data.str(), set.outputs);

  nlohmann::json meta{{"config", set.config},
                      {"tau0_fs", tau0},
                      {"tau0_after_fs", tau_d},
                      {"k2d_fs2", k2d},
                      {"pump_half_width_fs", pump_half},
                      {"normalization", "each column scaled to unit peak amplitude"}};
  write_file(out_path + ".meta.json", meta.dump(2) + "\n", set.outputs);
  write_manifest(out_path, set);
  return 0;
}

int run_schmidt(const bsv::MaterialDatabase& db, const ConfigSource& src,
                std::optional<double> gain_flag, int max_orders, const std::string& out_path,
                const std::string& format) {
  OutputSet set;
  set.command = "schmidt";
  auto config = src.resolve(set.inputs);
  if (gain_flag) config.gain = *gain_flag;
  config.validate();
  set.config = bsv::config_snapshot(config);

  const bsv::KernelWidths kw = bsv::kernel_widths(config, db);
  const double ratio = std::max(kw.phase_matching / kw.pump, kw.pump / kw.phase_matching);

  std::vector<double> eigenvalues;
  std::string method;
  if (ratio <= 25.0) {
    // direct factorization of the discretized kernel
    method = "svd";
    const double wmax = std::max(kw.pump, kw.phase_matching);
    const bsv::TpaKernel kernel =
        bsv::build_tpa_kernel(kw.pump, kw.phase_matching, {4.0 * wmax, 512});
    eigenvalues = bsv::schmidt_decompose(kernel).eigenvalues;
  } else {
    // closed form of the double-Gaussian model; a grid resolving this
    // anisotropy would need far more than 512 points per axis
    method = "double-gaussian-law";
    const auto law = bsv::double_gaussian_law(kw.pump, kw.phase_matching);
    const int count = std::min(
        5000, static_cast<int>(std::ceil(std::log(1e-9) / std::log(law.geometric_ratio))));
    eigenvalues = bsv::geometric_eigenvalues(law.geometric_ratio, count);
  }
  const std::vector<double> weights = bsv::renormalize_weights(eigenvalues, config.gain);

  const std::size_t rows = std::min<std::size_t>(eigenvalues.size(), max_orders);
  const std::vector<double> lam_rows(eigenvalues.begin(), eigenvalues.begin() + rows);
  const std::vector<double> w_rows(weights.begin(), weights.begin() + rows);

  std::ostringstream data;
  if (format == "json") {
    data << nlohmann::json{{"lambda", lam_rows}, {"weight", w_rows}}.dump(2) << "\n";
  } else {
    bsv::write_schmidt_table_csv(data, lam_rows, w_rows);
  }
  write_file(out_path, data.str(), set.outputs);

  nlohmann::json meta{{"config", set.config},
                      {"method", method},
                      {"kernel_width_pump", kw.pump},
                      {"kernel_width_phase_matching", kw.phase_matching},
                      {"effective_mode_number", bsv::effective_mode_number(weights)},
                      {"modes_total", eigenvalues.size()}};
  write_file(out_path + ".meta.json", meta.dump(2) + "\n", set.outputs);
  write_manifest(out_path, set);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SU(1,1) interferometer spectral-engineering calculator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string materials_path = BSV_DEFAULT_MATERIALS_PATH;
  app.add_option("--materials", materials_path, "material data file (JSON)");

  // material
  auto* cmd_material = app.add_subcommand("material", "refractive index and GVD of a medium");
  std::string mat_name, mat_wavelength;
  cmd_material->add_option("name", mat_name, "material name")->required();
  cmd_material->add_option("--wavelength", mat_wavelength, "wavelength with unit, e.g. 710nm")
      ->required();

  // shared config options
  auto add_config_opts = [](CLI::App* cmd, ConfigSource& src) {
    cmd->add_option("--preset", src.preset, "built-in preset (paper-angular, paper-spectral)");
    cmd->add_option("--config", src.config_path, "config file (JSON)");
  };

  // angular-sweep
  auto* cmd_angular = app.add_subcommand("angular-sweep", "angular width versus crystal distance");
  ConfigSource angular_src;
  add_config_opts(cmd_angular, angular_src);
  std::string ang_from = "10mm", ang_to = "130mm", ang_step = "5mm", ang_out, ang_format = "csv";
  cmd_angular->add_option("--from", ang_from, "first distance (e.g. 10mm)");
  cmd_angular->add_option("--to", ang_to, "last distance");
  cmd_angular->add_option("--step", ang_step, "distance step");
  cmd_angular->add_option("--out", ang_out, "output data file")->required();
  cmd_angular->add_option("--format", ang_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // spectral-sweep
  auto* cmd_spectral =
      app.add_subcommand("spectral-sweep", "spectral FWHM versus accumulated GVD");
  ConfigSource spectral_src;
  add_config_opts(cmd_spectral, spectral_src);
  std::vector<std::string> media;
  std::string spec_out, spec_format = "csv";
  cmd_spectral->add_option("--medium", media,
                           "dispersive medium as <material>:<length>, repeatable");
  cmd_spectral->add_option("--out", spec_out, "output data file")->required();
  cmd_spectral->add_option("--format", spec_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // modes
  auto* cmd_modes = app.add_subcommand("modes", "temporal Schmidt modes before/after the gap");
  ConfigSource modes_src;
  add_config_opts(cmd_modes, modes_src);
  std::string modes_orders = "0,10,50", modes_gap, modes_out, modes_format = "csv";
  cmd_modes->add_option("--orders", modes_orders, "comma-separated mode orders");
  cmd_modes->add_option("--gap", modes_gap, "gap override: none or <material>:<length>");
  cmd_modes->add_option("--out", modes_out, "output data file")->required();
  cmd_modes->add_option("--format", modes_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // schmidt
  auto* cmd_schmidt = app.add_subcommand("schmidt", "Schmidt eigenvalue/weight table");
  ConfigSource schmidt_src;
  add_config_opts(cmd_schmidt, schmidt_src);
  std::optional<double> schmidt_gain;
  int schmidt_max_orders = 64;
  std::string schmidt_out, schmidt_format = "csv";
  cmd_schmidt->add_option("--gain", schmidt_gain, "parametric gain G (overrides config)");
  cmd_schmidt->add_option("--max-orders", schmidt_max_orders, "rows to emit")
      ->check(CLI::PositiveNumber);
  cmd_schmidt->add_option("--out", schmidt_out, "output data file")->required();
  cmd_schmidt->add_option("--format", schmidt_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const bsv::MaterialDatabase db = bsv::MaterialDatabase::load(materials_path);
    if (cmd_material->parsed()) return run_material(db, mat_name, mat_wavelength);
    if (cmd_angular->parsed())
      return run_angular_sweep(db, angular_src, ang_from, ang_to, ang_step, ang_out, ang_format);
    if (cmd_spectral->parsed())
      return run_spectral_sweep(db, spectral_src, media, spec_out, spec_format);
    if (cmd_modes->parsed())
      return run_modes(db, modes_src, modes_orders, modes_gap, modes_out, modes_format);
    if (cmd_schmidt->parsed())
      return run_schmidt(db, schmidt_src, schmidt_gain, schmidt_max_orders, schmidt_out,
                         schmidt_format);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const bsv::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bsv::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bsv::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
}
