#pragma once

// Run specifications, the config grammar, and scenario orchestration for the
// command-line harness.
//
// Config documents are flat `key = value` lines. `#` starts a comment, blank
// lines are ignored, and a repeated key overrides the earlier one (this is how
// --set overrides are applied). Lists are comma separated; reals accept a
// `p/q` fraction form. See README.md for the key table.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ksobs/analysis.hpp"
#include "ksobs/dynamics.hpp"

namespace ksobs {

enum class Scenario { Free, Observe, SweepLambda, SweepS, CpsVerify, SensorsValidate };

Scenario parse_scenario(std::string_view name);
std::string_view to_string(Scenario s);

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitBlowUp = 3,
  kExitVerificationFailure = 4,
};

struct RunSpec {
  Scenario scenario = Scenario::Free;
  ModelParams params;
  int modes = 200;
  double dt = 1e-3;
  double t_end = 20.0;
  int grid_size = 2048;
  std::vector<double> reference{0.0, 0.25, 0.5, 0.75};
  int level = 9;
  double lambda_gain = 0.0;
  std::vector<double> lambda_list;
  std::vector<int> level_list;
  std::string initial_nominal = "bump-nominal";
  std::string initial_estimate = "bump-estimate";
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
  std::optional<FitWindow> fit_window;

  // S_sigma = 4 S in one dimension; derived, never set directly.
  int sensor_count() const noexcept { return static_cast<int>(reference.size()) * level; }
};

// Parses a config document and then each `key=value` override in order.
// Throws ConfigError naming the offending key.
RunSpec parse_config(std::string_view text, std::span<const std::string> overrides = {});

// Initial condition from a named preset:
//   bump-nominal   1 + sin(4 pi x)
//   bump-estimate  cos(2 pi x) (1 + sin(2 pi x))
//   zero            0
//   random          seeded coefficients on modes 1..9
//   modes:j=v,...   explicit coefficients of e_j
SpectralState initial_state(std::string_view preset, int modes, const QuadratureGrid& grid,
                            std::uint64_t seed);

SimulationConfig make_simulation_config(const RunSpec& spec);

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> artifacts;
};

// Executes the scenario, writing artifacts under spec.output_dir and a
// human-readable summary to `log`. Numerical and verification failures are
// reported through the exit code; configuration problems throw ConfigError.
RunOutcome run(const RunSpec& spec, std::ostream& log);

// Worker threads for sweeps, from KSOBS_WORKERS (default: hardware threads).
int worker_count();

inline constexpr double kCpsTolerance = 1e-6;

}  // namespace ksobs
