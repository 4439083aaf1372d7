// amcrn: sweep and verify cognitive-radio adaptive-modulation scenarios.
//
//   amcrn sweep <config.ini> [-o out.csv]
//   amcrn verify <config.ini> --samples N [--at X_DB]
//   amcrn preset <name>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "amcrn/config.hpp"
#include "amcrn/errors.hpp"
#include "amcrn/monte_carlo.hpp"
#include "amcrn/presets.hpp"
#include "amcrn/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

// A config argument is either a file path or the name of a bundled preset.
amcrn::config::ScenarioConfig load(const std::string& arg) {
  for (const auto& p : amcrn::presets::all()) {
    if (p.name == arg) return amcrn::config::parse_config_text(p.text);
  }
  return amcrn::config::parse_config(arg);
}

std::string preset_footer() {
  std::string out = "Presets (usable wherever a config path is expected):\n ";
  for (const auto& name : amcrn::presets::names()) out += " " + name;
  return out + "\n\nExit status: 0 success, 1 invalid input, 2 numerical failure or failed "
               "verification.";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average spectral efficiency and power allocation for cognitive radio links"};
  app.footer(preset_footer());
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the configured sweep and write CSV");
  sweep_cmd->add_option("config", config_path, "Scenario file or preset name")->required();
  sweep_cmd->add_option("-o,--output", output_path, "CSV destination (default: stdout)");

  std::uint64_t samples = 10000000;
  std::optional<double> at_db;
  auto* verify_cmd =
      app.add_subcommand("verify", "Compare analytic results with a Monte Carlo estimate");
  verify_cmd->add_option("config", config_path, "Scenario file or preset name")->required();
  verify_cmd->add_option("--samples", samples, "Number of channel draws (>= 100000)")
      ->capture_default_str();
  verify_cmd->add_option("--at", at_db, "Sweep abscissa in dB (default: first grid point)");

  std::string preset_name;
  auto* preset_cmd = app.add_subcommand("preset", "Print a bundled scenario file");
  preset_cmd->add_option("name", preset_name, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*preset_cmd) {
      std::cout << amcrn::presets::find(preset_name).text;
      return kExitOk;
    }
    const auto cfg = load(config_path);
    if (*sweep_cmd) {
      const auto result = amcrn::sweep::run_sweep(cfg);
      if (output_path.empty()) {
        amcrn::sweep::write_csv(result, std::cout);
      } else {
        amcrn::sweep::emit_csv(result, output_path);
      }
      return kExitOk;
    }
    const auto report = amcrn::mc::verify_monte_carlo(cfg, samples, at_db);
    std::cout << amcrn::mc::format_report(report);
    return report.pass() ? kExitOk : kExitNumerical;
  } catch (const amcrn::NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const amcrn::NoSignChange& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const amcrn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
