#include "amcrn/sweep.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "amcrn/errors.hpp"

namespace amcrn::sweep {

namespace {

using config::CrnType;
using config::db_to_linear;

std::string at_point(double x_db, const std::string& what) {
  return "at x = " + format_number(x_db) + " dB: " + what;
}

template <typename F>
auto tagged(double x_db, F&& body) {
  try {
    return body();
  } catch (const NonConvergence& e) {
    throw NonConvergence(at_point(x_db, e.what()));
  } catch (const NoSignChange& e) {
    throw NoSignChange(at_point(x_db, e.what()));
  } catch (const DomainError& e) {
    throw DomainError(at_point(x_db, e.what()));
  }
}

SweepRow ase_row(const config::ScenarioConfig& cfg, double x_db) {
  SweepRow row;
  row.x_db = x_db;
  const double gamma_bar_db = cfg.gamma_bar_db_at(x_db);
  switch (cfg.crn_type) {
    case CrnType::kOsa: {
      const auto report = osa::analyze(cfg.osa_at(gamma_bar_db));
      row.ase = report.sum_ase;
      row.cutoff = report.solution.cutoff;
      row.band_factor_gain = report.band_factor_gain;
      break;
    }
    case CrnType::kSs: {
      const auto report = ss::analyze(cfg.ss_at(gamma_bar_db, cfg.i_pk_db_at(x_db)));
      row.ase = report.ase;
      row.cutoff = report.solution.cutoff;
      row.truncated_fraction = report.truncated_fraction;
      break;
    }
    case CrnType::kSensing: {
      const auto report =
          sensing::analyze(cfg.ss_at(gamma_bar_db, cfg.i_pk_db_at(x_db)), cfg.sensing);
      row.ase = report.ase.ase;
      row.cutoff = report.solution.cutoff;
      row.throughput = report.throughput;
      row.truncated_fraction = report.truncated_fraction;
      break;
    }
  }
  return row;
}

std::vector<PolicyRow> policy_rows(const config::ScenarioConfig& cfg) {
  const double gamma_bar_db = *cfg.gamma_bar_ss_db;
  const auto grid = cfg.sweep.grid_db();
  std::vector<PolicyRow> rows;
  rows.reserve(grid.size());

  if (cfg.crn_type == CrnType::kOsa) {
    const auto scn = cfg.osa_at(gamma_bar_db);
    const auto sol = tagged(gamma_bar_db, [&] { return osa::solve_cutoff(scn); });
    for (double x : grid) {
      rows.push_back({x, osa::power_policy(scn, sol, db_to_linear(x)), std::nullopt, sol.cutoff});
    }
    return rows;
  }

  const auto scn = cfg.ss_at(gamma_bar_db, *cfg.i_pk_db);
  if (cfg.crn_type == CrnType::kSs) {
    const auto sol = tagged(gamma_bar_db, [&] { return ss::solve_cutoff(scn); });
    for (double x : grid) {
      rows.push_back({x, ss::conditional_power(scn, sol, db_to_linear(x)), std::nullopt,
                      sol.cutoff});
    }
    return rows;
  }

  const auto sol = tagged(gamma_bar_db, [&] { return sensing::solve_common_cutoff(scn, cfg.sensing); });
  for (double x : grid) {
    const double gamma = db_to_linear(x);
    // P0 does not depend on gamma_sp.
    const double p0 = sensing::power_policies(scn, cfg.sensing, sol, gamma, 0.0).p0;
    rows.push_back({x, p0, ss::conditional_power(scn, sol, gamma), sol.cutoff});
  }
  return rows;
}

void append_field(std::string& line, const std::optional<double>& value) {
  line += ',';
  if (value) line += format_number(*value);
}

}  // namespace

SweepResult run_sweep(const config::ScenarioConfig& cfg) {
  SweepResult result;
  result.mode = cfg.sweep.mode;
  if (cfg.sweep.mode == config::SweepMode::kPolicy) {
    result.policy_rows = policy_rows(cfg);
    return result;
  }
  for (double x : cfg.sweep.grid_db()) {
    result.rows.push_back(tagged(x, [&] { return ase_row(cfg, x); }));
  }
  return result;
}

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw DomainError("format_number: conversion failed");
  return std::string(buf.data(), ptr);
}

void write_csv(const SweepResult& result, std::ostream& out) {
  if (result.mode == config::SweepMode::kPolicy) {
    out << kPolicyHeader << '\n';
    for (const auto& row : result.policy_rows) {
      std::string line = format_number(row.x_db);
      append_field(line, row.power_ratio);
      append_field(line, row.power_ratio_active);
      append_field(line, row.cutoff);
      out << line << '\n';
    }
    return;
  }
  out << kAseHeader << '\n';
  for (const auto& row : result.rows) {
    std::string line = format_number(row.x_db);
    append_field(line, row.ase);
    append_field(line, row.cutoff);
    append_field(line, row.band_factor_gain);
    append_field(line, row.throughput);
    append_field(line, row.truncated_fraction);
    out << line << '\n';
  }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(result, file);
  file.flush();
  if (!file) throw IoError("error writing " + path.string());
}

}  // namespace amcrn::sweep
