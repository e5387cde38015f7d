#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "afc/units.hpp"

namespace afc::cli {

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::string join_errors(const std::vector<ConfigError>& errs) {
  std::ostringstream out;
  out << "invalid configuration:";
  for (const auto& e : errs) out << "\n  " << e.field << ": " << e.message;
  return out.str();
}

}  // namespace

ConfigValidationError::ConfigValidationError(std::vector<ConfigError> errs)
    : std::runtime_error(join_errors(errs)), errors(std::move(errs)) {}

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config: " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_string(buf.str(), path);
}

Config Config::parse_string(const std::string& text, const std::filesystem::path& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream ss(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(line_no) +
                                 ": unterminated section header");
      section = strip(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": expected key = value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (section.empty())
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": key outside any [section]");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

namespace {

// typed getters that accumulate errors instead of throwing one at a time
class Reader {
 public:
  explicit Reader(const Config& cfg) : cfg_(cfg) {}

  std::optional<std::string> raw(const std::string& sec, const std::string& key) {
    seen_.insert(sec + "." + key);
    return cfg_.get(sec, key);
  }

  std::string text(const std::string& sec, const std::string& key, const std::string& dflt) {
    auto v = raw(sec, key);
    return v ? *v : dflt;
  }

  double number(const std::string& sec, const std::string& key, double dflt,
                double lo = -1e308, double hi = 1e308) {
    auto v = raw(sec, key);
    if (!v) return dflt;
    return parse_num(sec + "." + key, *v, lo, hi);
  }

  int integer(const std::string& sec, const std::string& key, int dflt, int lo, int hi) {
    const double d = number(sec, key, dflt, lo, hi);
    if (d != std::floor(d)) {
      errors.push_back({sec + "." + key, "must be an integer"});
      return dflt;
    }
    return static_cast<int>(d);
  }

  bool boolean(const std::string& sec, const std::string& key, bool dflt) {
    auto v = raw(sec, key);
    if (!v) return dflt;
    if (*v == "true") return true;
    if (*v == "false") return false;
    errors.push_back({sec + "." + key, "must be true or false"});
    return dflt;
  }

  std::vector<double> number_list(const std::string& sec, const std::string& key) {
    auto v = raw(sec, key);
    std::vector<double> out;
    if (!v) return out;
    std::istringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_num(sec + "." + key, item));
    return out;
  }

  template <typename T>
  T choice(const std::string& sec, const std::string& key, T dflt,
           std::initializer_list<std::pair<const char*, T>> options) {
    auto v = raw(sec, key);
    if (!v) return dflt;
    std::string allowed;
    for (const auto& [name, val] : options) {
      if (*v == name) return val;
      if (!allowed.empty()) allowed += " | ";
      allowed += name;
    }
    errors.push_back({sec + "." + key, "must be one of: " + allowed});
    return dflt;
  }

  void check_unknown_keys() {
    static const std::set<std::string> known_sections{"scenario", "comb",  "pulse", "train",
                                                      "grid",     "run",   "sweep", "output"};
    for (const auto& [sec, kv] : cfg_.sections()) {
      if (!known_sections.count(sec)) {
        errors.push_back({sec, "unknown section"});
        continue;
      }
      for (const auto& [key, _] : kv) {
        if (!seen_.count(sec + "." + key))
          errors.push_back({sec + "." + key, "unknown key"});
      }
    }
  }

  std::vector<ConfigError> errors;

 private:
  double parse_num(const std::string& field, const std::string& text, double lo = -1e308,
                   double hi = 1e308) {
    const std::string t = strip(text);
    const char* begin = t.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
      errors.push_back({field, "malformed number '" + t + "'"});
      return lo > 0 ? lo : 0.0;
    }
    if (v < lo || v > hi) {
      std::ostringstream msg;
      msg << "value " << v << " outside [" << lo << ", " << hi << "]";
      errors.push_back({field, msg.str()});
      return lo;
    }
    return v;
  }

  const Config& cfg_;
  std::set<std::string> seen_;
};

}  // namespace

Scenario validate_scenario(const Config& config) {
  Reader r(config);
  Scenario s;

  s.type = r.choice<ScenarioType>("scenario", "type", ScenarioType::None,
                                  {{"single_pulse", ScenarioType::SinglePulse},
                                   {"pulse_train", ScenarioType::PulseTrain},
                                   {"delay_sweep", ScenarioType::DelaySweep},
                                   {"width_sweep", ScenarioType::WidthSweep}});
  s.name = r.text("scenario", "name", "run");

  s.family = r.choice<CombFamily>("comb", "family", CombFamily::Lorentzian,
                                  {{"lorentzian", CombFamily::Lorentzian},
                                   {"square", CombFamily::Square},
                                   {"csv", CombFamily::Csv}});
  s.alpha_max_per_m = r.number("comb", "alpha_max_per_m", 1320.0, 0.0, 1e9);
  if (auto hv = r.raw("comb", "hwhm_hz"); hv && *hv == "optimal") {
    s.hwhm_optimal = true;
    s.hwhm_hz = 0;
  } else {
    s.hwhm_hz = r.number("comb", "hwhm_hz", 666666.7, 0.0, 1e12);
  }
  s.burn_beta_hz = r.number("comb", "burn_beta_hz", 120e3, 0.0, 1e12);
  s.burn_mu = r.number("comb", "burn_mu", 2.0, 0.0, 1e6);
  const std::string csv = r.text("comb", "csv_path", "");
  if (!csv.empty()) {
    s.csv_path = csv;
    if (s.csv_path.is_relative() && !config.origin().empty())
      s.csv_path = config.origin().parent_path() / s.csv_path;
  }
  s.csv_allow_single_period = r.boolean("comb", "csv_allow_single_period", false);
  s.period = 1e-9 * r.number("comb", "period_ns", 500.0, 1e-3, 1e9);
  s.length = 1e-3 * r.number("comb", "length_mm", 5.0, 1e-6, 1e6);
  // homogeneous damping defaults to a 35 us cycle (gamma = 2*pi/35us);
  // set gamma_hwhm_hz = 0 explicitly for an undamped medium
  s.gamma = angular(r.number("comb", "gamma_hwhm_hz", 1.0 / 35e-6, 0.0, 1e12));
  s.alignment = r.choice<Alignment>("comb", "alignment", Alignment::InWindow,
                                    {{"on_peak", Alignment::OnPeak},
                                     {"in_window", Alignment::InWindow}});
  s.samples_per_period = r.integer("comb", "samples_per_period", 2048, 8, 1 << 20);
  s.fourier_order = r.integer("comb", "fourier_order", 200, 1, 1 << 19);
  s.force_fourier_order = r.boolean("comb", "force_fourier_order", false);
  s.transfer = r.choice<TransferKind>("comb", "transfer", TransferKind::Analytic,
                                      {{"analytic", TransferKind::Analytic},
                                       {"sampled", TransferKind::Sampled}});

  s.pulse_fwhm = 1e-9 * r.number("pulse", "fwhm_ns", 100.0, 1e-3, 1e9);
  s.pulse_amplitude = r.number("pulse", "amplitude", 1.0, 0.0, 1e12);

  s.n_pulses = r.integer("train", "n_pulses", 10, 1, 1 << 16);
  s.spacing = 1e-9 * r.number("train", "spacing_ns", 500.0, 1e-3, 1e9);
  s.envelope = r.choice<TrainEnvelope>("train", "envelope", TrainEnvelope::Gaussian,
                                       {{"flat", TrainEnvelope::Flat},
                                        {"gaussian", TrainEnvelope::Gaussian}});
  s.envelope_fwhm = 1e-9 * r.number("train", "envelope_fwhm_ns", 2000.0, 1e-3, 1e9);

  s.dt_divisor = r.integer("grid", "dt_divisor", 64, 2, 1 << 16);
  s.window_periods = r.integer("grid", "window_periods", 256, 4, 1 << 16);

  s.echo_orders = r.integer("run", "echo_orders", 10, 0, 1 << 12);
  s.delay_method = r.choice<DelayMethod>("run", "delay_method", DelayMethod::Centroid,
                                         {{"centroid", DelayMethod::Centroid},
                                          {"xcorr", DelayMethod::CrossCorrelation}});

  s.sweep_values = r.number_list("sweep", "values");
  s.gnuplot = r.boolean("output", "gnuplot", false);

  r.check_unknown_keys();

  // cross-field requirements
  if (s.family == CombFamily::Csv && s.csv_path.empty())
    r.errors.push_back({"comb.csv_path", "required for family = csv"});
  if (s.type == ScenarioType::DelaySweep || s.type == ScenarioType::WidthSweep) {
    if (s.sweep_values.empty())
      r.errors.push_back({"sweep.values", "required for sweep scenarios"});
  }
  if (s.type == ScenarioType::WidthSweep) {
    for (double v : s.sweep_values)
      if (!(v > 0) || v >= 3.0)
        r.errors.push_back({"sweep.values", "gamma_t values must lie in (0, 3)"});
  }
  if (s.family == CombFamily::Lorentzian && s.hwhm_hz > 0 &&
      angular(s.hwhm_hz) >= pi / s.period)
    r.errors.push_back({"comb.hwhm_hz", "peaks must be narrower than half the comb spacing"});
  if (s.family == CombFamily::Square && 2.0 * s.burn_beta_hz * s.burn_mu >= 1.0 / s.period)
    r.errors.push_back(
        {"comb.burn_beta_hz", "transparency window 2*beta*mu must stay below 1/period"});

  if (!r.errors.empty()) throw ConfigValidationError(std::move(r.errors));
  return s;
}

}  // namespace afc::cli
