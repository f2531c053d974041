#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qswitch/hardware.hpp"
#include "qswitch/memswitch.hpp"
#include "qswitch/sweep.hpp"

namespace qswitch {

// -------------------------------------------------------------------------
// Declarative run configuration and deterministic artifact emission. The
// config is a JSON document with two optional sections, "profile" and
// "run"; unknown keys are rejected and every omitted field takes the
// baseline default, so the empty document reproduces the bundled baseline.
// -------------------------------------------------------------------------

struct RunConfig {
  HardwareProfile profile = HardwareProfile::baseline();

  std::pair<int, int> k_range{1, 60};
  std::optional<int> block_size;  // fixed K for the `mem` command
  MemProtocol protocol = MemProtocol::block;
  Estimator estimator;  // auto-select, 1e5 samples, the documented seed
  Objective objective = Objective::utility_ngt;

  std::vector<double> beta_axis;            // frontier grid
  std::vector<double> dominance_beta_axis;  // dominance grid (starts at 0.01)
  std::vector<double> l_axis_km;
  std::vector<double> f_axis_hz;
  std::vector<ScenarioOverride> scenarios;

  std::string out_path;  // empty: summary only, no artifact
  std::string format = "csv";
};

/// The all-defaults configuration (equal to the bundled baseline config).
RunConfig default_config();

/// Parse and fully validate a config document. Throws config_error with the
/// byte position for syntax errors, the key for unknown keys and the field
/// name for invariant violations. Empty input parses as "{}".
RunConfig parse_config(const std::string& text);

/// Canonical JSON serialization of every config field; parsing it back
/// reproduces the config losslessly.
std::string serialize_config(const RunConfig& config);

/// FNV-1a hash (16 hex digits) of the experiment-defining fields: profile,
/// ranges, axes, estimator, seed, objective and scenarios. Execution knobs
/// that cannot change any computed number (workers, output path, format) are
/// excluded.
std::string config_hash(const RunConfig& config);

struct RunResult {
  std::string summary;   // one `key=value ...` line
  std::string artifact;  // serialized CSV/JSON, empty if no output requested
};

/// Execute one command: emax, egs, mem, frontier, sweep-kl, sweep-kf,
/// dominance or compare. Writes the artifact to config.out_path when set and
/// returns the summary line. Model errors propagate as exceptions.
RunResult run_command(const std::string& command, const RunConfig& config);

/// Names accepted by run_command.
const std::vector<std::string>& command_names();

}  // namespace qswitch
