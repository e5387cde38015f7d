#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace afc::cli {

struct RunResult {
  std::vector<std::filesystem::path> outputs;
  std::vector<std::string> warnings;
};

// Execute one scenario, writing its CSV outputs under out_dir. All validation
// happens before any file is created.
RunResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

// Re-run the config's scenario once per axis value (axis is a numeric
// "section.key" path), aggregating one report row per value into
// <name>_sweep.csv. Points may run on several threads; row order always
// follows the value order given.
RunResult run_sweep(const Config& base_config, const std::string& axis,
                    const std::vector<double>& values, const std::filesystem::path& out_dir,
                    int jobs);

}  // namespace afc::cli
