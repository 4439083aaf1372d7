#include "amcrn/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "amcrn/channel.hpp"
#include "amcrn/errors.hpp"
#include "amcrn/sweep.hpp"

namespace amcrn::mc {

namespace {

using config::CrnType;

constexpr std::uint64_t kMinSamples = 100000;

// Welford running mean and variance.
class Accumulator {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  Estimate estimate(double analytic) const {
    const double n = static_cast<double>(n_);
    return {analytic, mean_, std::sqrt(m2_ / (n - 1.0) / n)};
  }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

double osa_rate(const osa::OsaScenario& scn, const CutoffSolution& sol, double gamma) {
  if (!scn.scheme.is_discrete()) {
    return gamma > sol.cutoff ? std::log2(gamma / sol.cutoff) : 0.0;
  }
  const auto j = region_index(scn.scheme.ladder(), sol.cutoff, gamma);
  return j == 0 ? 0.0 : std::log2(scn.scheme.ladder().sizes[j]);
}

// Rate of the uncapped sensing policy P0 (shares the spectrum-sharing cutoff).
double idle_rate(const ss::SsScenario& scn, const CutoffSolution& sol, double gamma) {
  if (scn.scheme.is_discrete()) {
    const auto j = region_index(scn.scheme.ladder(), sol.cutoff, gamma);
    return j == 0 ? 0.0 : std::log2(scn.scheme.ladder().sizes[j]);
  }
  const double log_kg = std::log(scn.scheme.gap() * gamma);
  return log_kg > sol.log_cutoff ? (log_kg - sol.log_cutoff) / std::numbers::ln2 : 0.0;
}

}  // namespace

double Estimate::z() const {
  const double diff = std::abs(mean - analytic);
  if (std_error > 0.0) return diff / std_error;
  return diff <= 1e-12 * std::max(1.0, std::abs(analytic)) ? 0.0
                                                           : std::numeric_limits<double>::infinity();
}

MonteCarloReport verify_monte_carlo(const config::ScenarioConfig& cfg, std::uint64_t samples,
                                    std::optional<double> x_db) {
  if (samples < kMinSamples) throw ValidationError("samples", "at least 100000 required");
  const double x = x_db.value_or(cfg.sweep.start_db);

  MonteCarloReport report;
  report.crn_type = cfg.crn_type;
  report.samples = samples;
  report.seed = cfg.seed;
  report.gamma_bar_db = cfg.gamma_bar_db_at(x);

  UniformStream uniform(cfg.seed);
  Accumulator rate_acc;
  Accumulator power_acc;

  if (cfg.crn_type == CrnType::kOsa) {
    const auto scn = cfg.osa_at(report.gamma_bar_db);
    const auto sol = osa::solve_cutoff(scn);
    for (std::uint64_t i = 0; i < samples; ++i) {
      const double gamma = scn.channel.quantile(uniform.next());
      rate_acc.add(osa_rate(scn, sol, gamma));
      power_acc.add(osa::power_policy(scn, sol, gamma));
    }
    report.ase = rate_acc.estimate(osa::ase(scn, sol));
    report.power = power_acc.estimate(osa::expected_power(scn, sol.cutoff));
    return report;
  }

  report.i_pk_db = cfg.i_pk_db_at(x);
  const auto scn = cfg.ss_at(report.gamma_bar_db, *report.i_pk_db);
  double worst = -std::numeric_limits<double>::infinity();

  if (cfg.crn_type == CrnType::kSs) {
    const auto sol = ss::solve_cutoff(scn);
    for (std::uint64_t i = 0; i < samples; ++i) {
      const double g_ss = scn.link_ss.quantile(uniform.next());
      const double g_sp = scn.link_sp.quantile(uniform.next());
      const double p = ss::power_policy(scn, sol, g_ss, g_sp);
      worst = std::max(worst, g_sp * p - scn.i_pk);
      rate_acc.add(ss::instantaneous_rate(scn, sol, g_ss, g_sp));
      power_acc.add(p);
    }
    report.ase = rate_acc.estimate(ss::ase(scn, sol));
    report.power = power_acc.estimate(ss::expected_power(scn, sol));
    report.max_interference_excess = worst;
    return report;
  }

  const auto& sc = cfg.sensing;
  const double d = sensing::prob_detection(sc);
  const double f = sensing::prob_false_alarm(sc);
  const auto sol = sensing::solve_common_cutoff(scn, sc);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double g_ss = scn.link_ss.quantile(uniform.next());
    const double g_sp = scn.link_sp.quantile(uniform.next());
    const bool primary_active = uniform.next() < sc.pi1;
    const bool sensed_active = uniform.next() < (primary_active ? d : f);
    const auto pair = sensing::power_policies(scn, sc, sol, g_ss, g_sp);
    worst = std::max(worst, g_sp * pair.p1 - scn.i_pk);
    if (sensed_active) {
      rate_acc.add(ss::instantaneous_rate(scn, sol, g_ss, g_sp));
      power_acc.add(pair.p1);
    } else {
      rate_acc.add(idle_rate(scn, sol, g_ss));
      power_acc.add(pair.p0);
    }
  }
  report.ase = rate_acc.estimate(sensing::sensing_ase(scn, sc, sol));
  report.power = power_acc.estimate(sensing::expected_powers(scn, sc, sol).weighted);
  report.max_interference_excess = worst;
  return report;
}

std::string format_report(const MonteCarloReport& r) {
  using sweep::format_number;
  std::ostringstream out;
  out << "crn_type=" << config::to_string(r.crn_type) << " samples=" << r.samples
      << " seed=" << r.seed << " gamma_bar_db=" << format_number(r.gamma_bar_db);
  if (r.i_pk_db) out << " i_pk_db=" << format_number(*r.i_pk_db);
  out << '\n';
  const auto line = [&](const char* name, const Estimate& e) {
    out << name << ": analytic=" << format_number(e.analytic) << " mc=" << format_number(e.mean)
        << " se=" << format_number(e.std_error) << " z=" << format_number(e.z()) << ' '
        << (e.pass() ? "PASS" : "FAIL") << '\n';
  };
  line("ase", r.ase);
  line("power", r.power);
  if (r.max_interference_excess) {
    out << "interference: max(gamma_sp*P - I_pk)=" << format_number(*r.max_interference_excess)
        << ' ' << (r.interference_ok() ? "PASS" : "FAIL") << '\n';
  }
  out << "overall: " << (r.pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace amcrn::mc
