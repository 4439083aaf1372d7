#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amcrn/modulation.hpp"
#include "amcrn/osa.hpp"
#include "amcrn/sensing.hpp"
#include "amcrn/spectrum_sharing.hpp"

namespace amcrn::config {

enum class CrnType { kOsa, kSs, kSensing };

/// Mean of the secondary-to-primary interference SNR: a fixed value, or equal
/// to the secondary link mean at every grid point.
enum class SpLink { kFixed, kTracking };

enum class SweepMode {
  kAse,     // one row per average SNR (or I_pk) grid point
  kPolicy,  // power allocation against instantaneous SNR
};

enum class SweepVariable { kGammaBar, kIpk, kGamma };

struct SweepSpec {
  SweepMode mode = SweepMode::kAse;
  SweepVariable variable = SweepVariable::kGammaBar;
  double start_db = 0.0;
  double stop_db = 0.0;
  double step_db = 1.0;

  /// start + k * step for k = 0.. while the point stays at or below stop
  /// (with a 1e-9 dB allowance for accumulated rounding).
  std::vector<double> grid_db() const;
};

double db_to_linear(double db);

/// A parsed scenario. Every dB quantity from the file is also held in linear
/// form, converted once at parse time.
struct ScenarioConfig {
  CrnType crn_type = CrnType::kOsa;
  int regions = 0;  // 0 for continuous rate, else 3, 4 or 5
  double ber = 1e-3;
  int users = 1;
  std::uint64_t seed = 1;

  std::optional<double> gamma_bar_ss_db;
  double gamma_bar_sp_db = 0.0;
  SpLink sp_link = SpLink::kFixed;

  std::optional<double> i_pk_db;
  ss::DrRateAccounting dr_rate = ss::DrRateAccounting::kTruncationAware;

  sensing::SensingConfig sensing;
  std::optional<double> detection;  // d when given directly

  SweepSpec sweep;

  ModulationScheme scheme() const;

  /// Scenario at average secondary SNR gamma_bar_db and interference cap i_pk_db.
  osa::OsaScenario osa_at(double gamma_bar_db) const;
  ss::SsScenario ss_at(double gamma_bar_db, double i_pk_db) const;

  /// Average SNR and cap for sweep abscissa x_db.
  double gamma_bar_db_at(double x_db) const;
  double i_pk_db_at(double x_db) const;
};

/// Throws ParseError (with line number) for malformed lines, unknown sections
/// or keys and repeated keys, and ValidationError (naming the field) for
/// missing or out-of-range values.
ScenarioConfig parse_config_text(std::string_view text);

/// Throws IoError if the file cannot be read.
ScenarioConfig parse_config(const std::filesystem::path& path);

std::string_view to_string(CrnType type);

}  // namespace amcrn::config
