#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

#include "config.hpp"
#include "scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;

using afc::cli::Config;
using afc::cli::ConfigValidationError;
using afc::cli::RunResult;
using afc::cli::Scenario;
using afc::cli::ScenarioType;

std::filesystem::path resolve_out_dir(const std::string& flag_value) {
  // the environment variable overrides both the flag and the default
  if (const char* env = std::getenv("AFCSIM_OUTPUT_DIR"); env && *env) return env;
  if (!flag_value.empty()) return flag_value;
  return ".";
}

void print_error_record(const std::string& kind, const std::string& message,
                        const std::vector<afc::cli::ConfigError>& fields = {}) {
  nlohmann::json j;
  j["error"] = kind;
  j["message"] = message;
  if (!fields.empty()) {
    j["fields"] = nlohmann::json::array();
    for (const auto& f : fields) j["fields"].push_back({{"field", f.field}, {"message", f.message}});
  }
  std::cerr << j.dump() << "\n";
}

void print_result(const RunResult& result) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& p : result.outputs) std::cout << p.string() << "\n";
}

int run_command(const std::string& config_path, const std::string& out_flag) {
  Config cfg = Config::parse_file(config_path);
  Scenario scenario = afc::cli::validate_scenario(cfg);
  if (scenario.type == ScenarioType::None) {
    std::cerr << "warning: no scenario defined in " << config_path << "; nothing to do\n";
    return 0;
  }
  print_result(afc::cli::run_scenario(scenario, resolve_out_dir(out_flag)));
  return 0;
}

int sweep_command(const std::string& config_path, const std::string& axis,
                  const std::vector<double>& values, const std::string& out_flag, int jobs) {
  Config cfg = Config::parse_file(config_path);
  print_result(afc::cli::run_sweep(cfg, axis, values, resolve_out_dir(out_flag), jobs));
  return 0;
}

int validate_command(const std::string& config_path) {
  Config cfg = Config::parse_file(config_path);
  Scenario scenario = afc::cli::validate_scenario(cfg);
  if (scenario.type == ScenarioType::None)
    std::cout << "ok (no scenario defined)\n";
  else
    std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-domain simulator for pulse propagation through periodic absorbers"};
  app.require_subcommand(1);

  std::string config_path, out_dir, axis;
  std::vector<double> values;
  int jobs = 0;

  auto* run = app.add_subcommand("run", "execute the scenario defined in a config file");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--out-dir", out_dir, "output directory (default .; AFCSIM_OUTPUT_DIR overrides)");

  auto* sweep = app.add_subcommand("sweep", "re-run the scenario over a numeric config field");
  sweep->add_option("config", config_path, "scenario config file")->required();
  sweep->add_option("--axis", axis, "numeric field path, e.g. comb.alpha_max_per_m")->required();
  sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',');
  sweep->add_option("--out-dir", out_dir, "output directory (default .; AFCSIM_OUTPUT_DIR overrides)");
  sweep->add_option("--jobs", jobs, "parallel points (default: hardware threads)");

  auto* validate = app.add_subcommand("validate", "check a config file without running it");
  validate->add_option("config", config_path, "scenario config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(config_path, out_dir);
    if (validate->parsed()) return validate_command(config_path);
    if (sweep->parsed()) {
      if (jobs <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        jobs = hc > 0 ? static_cast<int>(hc) : 1;
      }
      return sweep_command(config_path, axis, values, out_dir, jobs);
    }
  } catch (const ConfigValidationError& e) {
    print_error_record("config", e.what(), e.errors);
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    print_error_record("physics", e.what());
    return kExitPhysics;
  } catch (const std::exception& e) {
    print_error_record("internal", e.what());
    return 1;
  }
  return 1;
}
