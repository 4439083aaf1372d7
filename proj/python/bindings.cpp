#include <sstream>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amcrn/config.hpp"
#include "amcrn/errors.hpp"
#include "amcrn/monte_carlo.hpp"
#include "amcrn/osa.hpp"
#include "amcrn/presets.hpp"
#include "amcrn/sensing.hpp"
#include "amcrn/spectrum_sharing.hpp"
#include "amcrn/sweep.hpp"

namespace py = pybind11;
using namespace amcrn;

namespace {

ModulationScheme make_scheme(const std::string& scheme, double ber) {
  if (scheme == "cr") return ModulationScheme::continuous(BerTarget(ber));
  if (scheme == "dr3") return ModulationScheme::discrete(dr_ladder(3), BerTarget(ber));
  if (scheme == "dr4") return ModulationScheme::discrete(dr_ladder(4), BerTarget(ber));
  if (scheme == "dr5") return ModulationScheme::discrete(dr_ladder(5), BerTarget(ber));
  throw DomainError("scheme must be cr, dr3, dr4 or dr5");
}

py::dict solution_dict(const CutoffSolution& s) {
  py::dict d;
  d["cutoff"] = s.cutoff;
  d["log_cutoff"] = s.log_cutoff;
  d["residual"] = s.residual;
  d["binding"] = s.binding;
  return d;
}

ss::SsScenario make_ss(double gamma_bar, double gamma_bar_sp, double i_pk,
                       const std::string& scheme, double ber, bool nominal) {
  return {RayleighChannel(gamma_bar), RayleighChannel(gamma_bar_sp), i_pk,
          make_scheme(scheme, ber),
          nominal ? ss::DrRateAccounting::kNominal : ss::DrRateAccounting::kTruncationAware};
}

py::list sweep_rows(const config::ScenarioConfig& cfg) {
  const auto result = sweep::run_sweep(cfg);
  py::list rows;
  for (const auto& r : result.rows) {
    py::dict d;
    d["x_db"] = r.x_db;
    d["ase"] = r.ase;
    d["cutoff"] = r.cutoff;
    d["band_factor_gain"] = r.band_factor_gain;
    d["throughput"] = r.throughput;
    d["truncated_fraction"] = r.truncated_fraction;
    rows.append(d);
  }
  for (const auto& r : result.policy_rows) {
    py::dict d;
    d["x_db"] = r.x_db;
    d["power_ratio"] = r.power_ratio;
    d["power_ratio_active"] = r.power_ratio_active;
    d["cutoff"] = r.cutoff;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Adaptive modulation in cognitive radio networks";

  py::register_exception<Error>(m, "AmcrnError", PyExc_RuntimeError);

  m.def("power_gap", [](double ber) { return power_gap(BerTarget(ber)); }, py::arg("ber"));

  m.def(
      "osa_analyze",
      [](double gamma_bar, const std::string& scheme, double ber, int users) {
        const auto r = osa::analyze({RayleighChannel(gamma_bar), make_scheme(scheme, ber), users});
        py::dict d = solution_dict(r.solution);
        d["ase"] = r.ase;
        d["band_factor_gain"] = r.band_factor_gain;
        d["total_band_factor_gain"] = r.total_band_factor_gain;
        d["sum_ase"] = r.sum_ase;
        return d;
      },
      py::arg("gamma_bar"), py::arg("scheme") = "cr", py::arg("ber") = 1e-3, py::arg("users") = 1,
      "OSA cutoff, ASE and band factor gains at linear mean SNR gamma_bar.");

  m.def(
      "ss_analyze",
      [](double gamma_bar, double gamma_bar_sp, double i_pk, const std::string& scheme,
         double ber, bool nominal) {
        const auto r = ss::analyze(make_ss(gamma_bar, gamma_bar_sp, i_pk, scheme, ber, nominal));
        py::dict d = solution_dict(r.solution);
        d["ase"] = r.ase;
        d["expected_power"] = r.expected_power;
        d["truncated_fraction"] = r.truncated_fraction;
        return d;
      },
      py::arg("gamma_bar"), py::arg("gamma_bar_sp"), py::arg("i_pk"), py::arg("scheme") = "cr",
      py::arg("ber") = 1e-3, py::arg("nominal") = false,
      "Spectrum-sharing cutoff and ASE (all quantities linear).");

  py::class_<sensing::SensingConfig>(m, "SensingConfig")
      .def(py::init<>())
      .def_readwrite("tau", &sensing::SensingConfig::tau)
      .def_readwrite("fs", &sensing::SensingConfig::fs)
      .def_readwrite("eta_norm", &sensing::SensingConfig::eta_norm)
      .def_readwrite("sigma_n", &sensing::SensingConfig::sigma_n)
      .def_readwrite("sensed_snr", &sensing::SensingConfig::sensed_snr)
      .def_readwrite("pi0", &sensing::SensingConfig::pi0)
      .def_readwrite("pi1", &sensing::SensingConfig::pi1)
      .def_readwrite("frame", &sensing::SensingConfig::frame);

  m.def("prob_detection", &sensing::prob_detection, py::arg("cfg"));
  m.def("prob_false_alarm", &sensing::prob_false_alarm, py::arg("cfg"));
  m.def("threshold_for_detection", &sensing::threshold_for_detection, py::arg("cfg"),
        py::arg("target_d"));
  m.def(
      "sensing_analyze",
      [](double gamma_bar, double gamma_bar_sp, double i_pk, const sensing::SensingConfig& cfg,
         const std::string& scheme, double ber) {
        const auto r =
            sensing::analyze(make_ss(gamma_bar, gamma_bar_sp, i_pk, scheme, ber, false), cfg);
        py::dict d = solution_dict(r.solution);
        d["se_idle"] = r.ase.se_idle;
        d["se_active"] = r.ase.se_active;
        d["ase"] = r.ase.ase;
        d["throughput"] = r.throughput;
        d["truncated_fraction"] = r.truncated_fraction;
        d["missed_detection_interference"] = r.missed_detection_interference;
        return d;
      },
      py::arg("gamma_bar"), py::arg("gamma_bar_sp"), py::arg("i_pk"), py::arg("cfg"),
      py::arg("scheme") = "cr", py::arg("ber") = 1e-3);

  m.def("preset_names", &presets::names);
  m.def("preset_text", [](const std::string& name) { return std::string(presets::find(name).text); });

  m.def(
      "sweep",
      [](const std::string& config_text) { return sweep_rows(config::parse_config_text(config_text)); },
      py::arg("config_text"), "Run the sweep described by an INI config; one dict per row.");

  m.def(
      "sweep_csv",
      [](const std::string& config_text) {
        std::ostringstream out;
        sweep::write_csv(sweep::run_sweep(config::parse_config_text(config_text)), out);
        return out.str();
      },
      py::arg("config_text"));

  m.def(
      "verify",
      [](const std::string& config_text, std::uint64_t samples, std::optional<double> at_db) {
        const auto report =
            mc::verify_monte_carlo(config::parse_config_text(config_text), samples, at_db);
        py::dict d;
        d["ase_analytic"] = report.ase.analytic;
        d["ase_mc"] = report.ase.mean;
        d["ase_se"] = report.ase.std_error;
        d["power_analytic"] = report.power.analytic;
        d["power_mc"] = report.power.mean;
        d["power_se"] = report.power.std_error;
        d["passed"] = report.pass();
        return d;
      },
      py::arg("config_text"), py::arg("samples") = 1000000, py::arg("at_db") = py::none());
}
