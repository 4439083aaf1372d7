#include "amcrn/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "amcrn/errors.hpp"

namespace amcrn::config {

namespace {

struct Entry {
  std::string value;
  int line;
};

using Entries = std::map<std::string, Entry>;  // "section.key" -> entry

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"scenario", {"crn_type", "scheme", "ber", "users", "seed"}},
      {"channel", {"gamma_bar_ss_db", "gamma_bar_sp_db", "sp_link"}},
      {"ss", {"i_pk_db", "dr_rate"}},
      {"sensing",
       {"tau_ms", "frame_ms", "pi0", "pi1", "d", "eta_norm", "eta", "fs_hz", "sensed_snr_db",
        "sigma_n"}},
      {"sweep", {"mode", "variable", "start_db", "stop_db", "step_db"}},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Entries tokenize(std::string_view text) {
  Entries entries;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(section)) {
        throw ParseError("unknown section [" + section + "]", line_no);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (section.empty()) throw ParseError("key '" + key + "' outside any section", line_no);
    if (key.empty()) throw ParseError("empty key", line_no);
    if (!known_keys().at(section).contains(key)) {
      throw ParseError("unknown key '" + key + "' in [" + section + "]", line_no);
    }
    if (value.empty()) throw ParseError("missing value for '" + key + "'", line_no);
    const std::string full = section + "." + key;
    if (entries.contains(full)) {
      throw ParseError("repeated key '" + key + "' (first on line " +
                           std::to_string(entries.at(full).line) + ")",
                       line_no);
    }
    entries.emplace(full, Entry{value, line_no});
  }
  return entries;
}

class Reader {
 public:
  explicit Reader(Entries entries) : entries_(std::move(entries)) {}

  bool has(const std::string& field) const { return entries_.contains(field); }

  std::optional<double> number(const std::string& field) const {
    const auto it = entries_.find(field);
    if (it == entries_.end()) return std::nullopt;
    const std::string& s = it->second.value;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(out)) {
      throw ParseError(field + ": '" + s + "' is not a finite number", it->second.line);
    }
    return out;
  }

  std::optional<std::int64_t> integer(const std::string& field) const {
    const auto it = entries_.find(field);
    if (it == entries_.end()) return std::nullopt;
    const std::string& s = it->second.value;
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(field + ": '" + s + "' is not an integer", it->second.line);
    }
    return out;
  }

  std::optional<std::string> word(const std::string& field) const {
    const auto it = entries_.find(field);
    if (it == entries_.end()) return std::nullopt;
    return it->second.value;
  }

  double require(const std::string& field, const std::string& why) const {
    const auto v = number(field);
    if (!v) throw ValidationError(field, "required " + why);
    return *v;
  }

 private:
  Entries entries_;
};

template <typename T>
T choose(const std::string& field, const std::string& value,
         std::initializer_list<std::pair<const char*, T>> options) {
  std::string allowed;
  for (const auto& [name, v] : options) {
    if (value == name) return v;
    allowed += allowed.empty() ? name : std::string(", ") + name;
  }
  throw ValidationError(field, "'" + value + "' is not one of " + allowed);
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::vector<double> SweepSpec::grid_db() const {
  const auto n = static_cast<long>(std::floor((stop_db - start_db) / step_db + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) grid.push_back(start_db + static_cast<double>(k) * step_db);
  return grid;
}

ModulationScheme ScenarioConfig::scheme() const {
  const BerTarget target(ber);
  return regions == 0 ? ModulationScheme::continuous(target)
                      : ModulationScheme::discrete(dr_ladder(regions), target);
}

osa::OsaScenario ScenarioConfig::osa_at(double gamma_bar_db) const {
  return {RayleighChannel(db_to_linear(gamma_bar_db)), scheme(), users};
}

ss::SsScenario ScenarioConfig::ss_at(double gamma_bar_db, double i_pk_db_value) const {
  const double mean_sp =
      sp_link == SpLink::kTracking ? db_to_linear(gamma_bar_db) : db_to_linear(gamma_bar_sp_db);
  return {RayleighChannel(db_to_linear(gamma_bar_db)), RayleighChannel(mean_sp),
          db_to_linear(i_pk_db_value), scheme(), dr_rate};
}

double ScenarioConfig::gamma_bar_db_at(double x_db) const {
  return sweep.variable == SweepVariable::kGammaBar ? x_db : gamma_bar_ss_db.value();
}

double ScenarioConfig::i_pk_db_at(double x_db) const {
  return sweep.variable == SweepVariable::kIpk ? x_db : i_pk_db.value();
}

std::string_view to_string(CrnType type) {
  switch (type) {
    case CrnType::kOsa:
      return "osa";
    case CrnType::kSs:
      return "ss";
    case CrnType::kSensing:
      return "sensing";
  }
  return "?";
}

ScenarioConfig parse_config_text(std::string_view text) {
  const Reader in(tokenize(text));
  ScenarioConfig cfg;

  cfg.crn_type = choose<CrnType>("scenario.crn_type", in.word("scenario.crn_type").value_or(""),
                                 {{"osa", CrnType::kOsa},
                                  {"ss", CrnType::kSs},
                                  {"sensing", CrnType::kSensing}});
  cfg.regions = choose<int>("scenario.scheme", in.word("scenario.scheme").value_or(""),
                            {{"cr", 0}, {"dr3", 3}, {"dr4", 4}, {"dr5", 5}});
  cfg.ber = in.number("scenario.ber").value_or(cfg.ber);
  if (!(cfg.ber > 0.0 && cfg.ber < 0.2)) {
    throw ValidationError("scenario.ber", "must lie in (0, 0.2)");
  }
  if (const auto users = in.integer("scenario.users")) {
    if (*users < 1 || *users > 1000) throw ValidationError("scenario.users", "must be in 1..1000");
    cfg.users = static_cast<int>(*users);
  }
  if (const auto seed = in.integer("scenario.seed")) {
    if (*seed < 0) throw ValidationError("scenario.seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(*seed);
  }

  // Sweep first: it decides which scenario fields are required.
  auto& sw = cfg.sweep;
  sw.mode = choose<SweepMode>("sweep.mode", in.word("sweep.mode").value_or("ase"),
                              {{"ase", SweepMode::kAse}, {"policy", SweepMode::kPolicy}});
  const std::string default_variable = sw.mode == SweepMode::kPolicy ? "gamma" : "gamma_bar";
  sw.variable = choose<SweepVariable>(
      "sweep.variable", in.word("sweep.variable").value_or(default_variable),
      {{"gamma_bar", SweepVariable::kGammaBar},
       {"i_pk", SweepVariable::kIpk},
       {"gamma", SweepVariable::kGamma}});
  if ((sw.mode == SweepMode::kPolicy) != (sw.variable == SweepVariable::kGamma)) {
    throw ValidationError("sweep.variable",
                          "policy sweeps run over gamma; ase sweeps over gamma_bar or i_pk");
  }
  if (sw.variable == SweepVariable::kIpk && cfg.crn_type == CrnType::kOsa) {
    throw ValidationError("sweep.variable", "i_pk sweeps need crn_type ss or sensing");
  }
  sw.start_db = in.require("sweep.start_db", "for every sweep");
  sw.stop_db = in.require("sweep.stop_db", "for every sweep");
  sw.step_db = in.number("sweep.step_db").value_or(1.0);
  if (!(sw.step_db > 0.0)) throw ValidationError("sweep.step_db", "must be positive");
  if (sw.stop_db < sw.start_db) throw ValidationError("sweep.stop_db", "must be >= start_db");
  if (sw.grid_db().size() > 100000) throw ValidationError("sweep.step_db", "grid too large");

  cfg.gamma_bar_ss_db = in.number("channel.gamma_bar_ss_db");
  if (!cfg.gamma_bar_ss_db && sw.variable != SweepVariable::kGammaBar) {
    throw ValidationError("channel.gamma_bar_ss_db", "required unless sweeping gamma_bar");
  }
  cfg.gamma_bar_sp_db = in.number("channel.gamma_bar_sp_db").value_or(0.0);
  cfg.sp_link = choose<SpLink>("channel.sp_link", in.word("channel.sp_link").value_or("fixed"),
                               {{"fixed", SpLink::kFixed}, {"tracking", SpLink::kTracking}});
  if (cfg.sp_link == SpLink::kTracking && in.has("channel.gamma_bar_sp_db")) {
    throw ValidationError("channel.gamma_bar_sp_db", "not used when sp_link = tracking");
  }

  if (cfg.crn_type == CrnType::kOsa) return cfg;

  cfg.i_pk_db = in.number("ss.i_pk_db");
  if (!cfg.i_pk_db && sw.variable != SweepVariable::kIpk) {
    throw ValidationError("ss.i_pk_db", "required for ss and sensing scenarios");
  }
  cfg.dr_rate = choose<ss::DrRateAccounting>(
      "ss.dr_rate", in.word("ss.dr_rate").value_or("aware"),
      {{"aware", ss::DrRateAccounting::kTruncationAware},
       {"nominal", ss::DrRateAccounting::kNominal}});

  if (cfg.crn_type == CrnType::kSs) return cfg;

  auto& sc = cfg.sensing;
  sc.tau = in.number("sensing.tau_ms").value_or(2.0) * 1e-3;
  sc.frame = in.number("sensing.frame_ms").value_or(100.0) * 1e-3;
  sc.fs = in.number("sensing.fs_hz").value_or(6e6);
  sc.sigma_n = in.number("sensing.sigma_n").value_or(1.0);
  sc.sensed_snr = db_to_linear(in.require("sensing.sensed_snr_db", "for sensing scenarios"));

  const auto pi0 = in.number("sensing.pi0");
  const auto pi1 = in.number("sensing.pi1");
  if (!pi0 && !pi1) throw ValidationError("sensing.pi0", "pi0 or pi1 is required");
  sc.pi0 = pi0 ? *pi0 : 1.0 - *pi1;
  sc.pi1 = pi1 ? *pi1 : 1.0 - *pi0;
  if (!(sc.pi0 >= 0.0 && sc.pi0 <= 1.0)) throw ValidationError("sensing.pi0", "must be in [0, 1]");
  if (!(sc.pi1 >= 0.0 && sc.pi1 <= 1.0)) throw ValidationError("sensing.pi1", "must be in [0, 1]");
  if (std::abs(sc.pi0 + sc.pi1 - 1.0) > 1e-9) {
    throw ValidationError("sensing.pi1", "pi0 + pi1 must equal 1");
  }
  sc.pi1 = 1.0 - sc.pi0;

  if (!(sc.tau > 0.0 && sc.tau < sc.frame)) {
    throw ValidationError("sensing.tau_ms", "must satisfy 0 < tau_ms < frame_ms");
  }
  if (!(sc.fs > 0.0)) throw ValidationError("sensing.fs_hz", "must be positive");
  if (!(sc.sigma_n > 0.0)) throw ValidationError("sensing.sigma_n", "must be positive");

  const int given = in.has("sensing.d") + in.has("sensing.eta_norm") + in.has("sensing.eta");
  if (given != 1) {
    throw ValidationError("sensing.d", "give exactly one of d, eta_norm or eta");
  }
  if (const auto d = in.number("sensing.d")) {
    if (!(*d > 0.0 && *d < 1.0)) throw ValidationError("sensing.d", "must lie in (0, 1)");
    cfg.detection = *d;
    sc.eta_norm = sensing::threshold_for_detection(sc, *d);
  } else if (const auto eta_norm = in.number("sensing.eta_norm")) {
    sc.eta_norm = *eta_norm;
  } else {
    sc.eta_norm = *in.number("sensing.eta") / (sc.sigma_n * sc.sigma_n);
  }
  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open config file " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  if (file.bad()) throw IoError("error reading config file " + path.string());
  return parse_config_text(text.str());
}

}  // namespace amcrn::config
