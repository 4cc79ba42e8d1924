#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ramsense/noise.hpp"

// Scenario runner: flat key-value config with [sections], named experiment
// scenarios writing deterministic CSV datasets plus a manifest file.

namespace ramsense::scenarios {

struct RunConfig {
  std::string scenario;
  noise::NoiseParams noise_params;
  int n_qubits = 100;
  double x0 = 0.0;
  std::vector<int> n_list;
  std::string estimator = "ratio";    // ratio | standard
  std::string state = "GHZ";          // GHZ | CSS | OAT
  long nu = 400;
  double total_time = 1.0;
  double b = 3.0;
  std::uint64_t seed = 20240901;
  int threads = 1;
  std::filesystem::path output_dir = "out";

  // raw key/value pairs as parsed ("section.key" -> value), kept for the
  // manifest hash
  std::map<std::string, std::string> raw;
};

struct Diagnostic {
  enum class Level { kError, kWarning, kInfo } level;
  std::string message;
};

// Parse a config file; throws std::runtime_error with a message on syntax or
// type errors.
RunConfig parse_config(const std::filesystem::path& file);

// Non-mutating checks; errors make run() refuse to start.
std::vector<Diagnostic> validate(const RunConfig& config);

// Registered scenario names with one-line descriptions.
std::vector<std::pair<std::string, std::string>> list_scenarios();

// Execute the scenario; returns the process exit status (0 = success) and
// writes CSV files plus manifest.txt into config.output_dir.
int run(const RunConfig& config);

}  // namespace ramsense::scenarios
