#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "amcrn/config.hpp"

namespace amcrn::sweep {

struct SweepRow {
  double x_db = 0.0;
  double ase = 0.0;  // OSA: sum over all users; sensing: mixture before the duty factor
  double cutoff = 0.0;
  std::optional<double> band_factor_gain;
  std::optional<double> throughput;
  std::optional<double> truncated_fraction;
};

/// One instantaneous-SNR point of a power-allocation curve. For SS this is
/// E[P | gamma_ss] over the interference link; for sensing, power_ratio is P0
/// and power_ratio_active is E[P1 | gamma_ss].
struct PolicyRow {
  double x_db = 0.0;
  double power_ratio = 0.0;
  std::optional<double> power_ratio_active;
  double cutoff = 0.0;
};

struct SweepResult {
  config::SweepMode mode = config::SweepMode::kAse;
  std::vector<SweepRow> rows;
  std::vector<PolicyRow> policy_rows;
};

/// Evaluates every grid point in order. Solver errors are rethrown with the
/// failing abscissa prepended to the message.
SweepResult run_sweep(const config::ScenarioConfig& cfg);

inline constexpr const char* kAseHeader =
    "x_db,ase_bps_hz,cutoff_linear,band_factor_gain,throughput_bps_hz,truncated_fraction";
inline constexpr const char* kPolicyHeader = "x_db,power_ratio,power_ratio_active,cutoff_linear";

/// Shortest decimal that reads back to the same double.
std::string format_number(double value);

void write_csv(const SweepResult& result, std::ostream& out);

/// Throws IoError if the file cannot be written.
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

}  // namespace amcrn::sweep
