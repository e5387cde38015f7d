#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afc/analysis.hpp"
#include "afc/spectra.hpp"

namespace afc::cli {

struct ConfigError {
  std::string field;  // section.key path
  std::string message;
};

struct ConfigValidationError : std::runtime_error {
  explicit ConfigValidationError(std::vector<ConfigError> errs);
  std::vector<ConfigError> errors;
};

// Key/value file with [section] headers, '#' comments and '.' decimals.
// Parsed values stay strings until the schema pass types them.
class Config {
 public:
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_string(const std::string& text, const std::filesystem::path& origin = {});

  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, const std::string& value);
  const std::filesystem::path& origin() const { return origin_; }
  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::filesystem::path origin_;
};

enum class ScenarioType { None, SinglePulse, PulseTrain, DelaySweep, WidthSweep };
enum class CombFamily { Lorentzian, Square, Csv };
enum class TransferKind { Analytic, Sampled };

// Fully validated, typed scenario description. All frequencies are ordinary
// (Hz) in the file and converted here; lengths in mm, times in ns.
struct Scenario {
  ScenarioType type = ScenarioType::None;
  std::string name = "run";

  CombFamily family = CombFamily::Lorentzian;
  double alpha_max_per_m = 0;
  double hwhm_hz = 0;
  bool hwhm_optimal = false;  // hwhm_hz = "optimal": width 4/((4+d) T) from the depth
  double burn_beta_hz = 0;
  double burn_mu = 0;
  std::filesystem::path csv_path;
  bool csv_allow_single_period = false;
  double period = 0;  // s
  double length = 0;  // m
  double gamma = 0;   // rad/s
  Alignment alignment = Alignment::InWindow;
  int samples_per_period = 2048;
  int fourier_order = 200;
  bool force_fourier_order = false;
  TransferKind transfer = TransferKind::Analytic;

  double pulse_fwhm = 100e-9;  // s
  double pulse_amplitude = 1.0;

  int n_pulses = 10;
  double spacing = 500e-9;  // s
  TrainEnvelope envelope = TrainEnvelope::Gaussian;
  double envelope_fwhm = 2000e-9;  // s

  int dt_divisor = 64;
  int window_periods = 256;

  int echo_orders = 10;
  DelayMethod delay_method = DelayMethod::Centroid;

  std::vector<double> sweep_values;
  bool gnuplot = false;
};

// Schema validation; throws ConfigValidationError carrying every failure.
// A config without a [scenario] type yields type == None (the caller warns
// and exits cleanly).
Scenario validate_scenario(const Config& config);

}  // namespace afc::cli
