#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qswitch/egs.hpp"
#include "qswitch/hardware.hpp"
#include "qswitch/memswitch.hpp"

namespace qswitch {

// -------------------------------------------------------------------------
// Parameter-sweep engine. Cells are independent and may be evaluated
// concurrently; every stochastic cell draws from a stream derived from
// (master seed, cell index), so a sweep is bitwise reproducible for any
// worker count.
// -------------------------------------------------------------------------

/// One named, ordered grid. labels is non-empty only for categorical axes
/// (scenario names), in which case values holds the indices.
struct Axis {
  std::string name;
  std::string unit;
  std::vector<double> values;
  std::vector<std::string> labels;

  std::size_t size() const { return values.size(); }
};

Axis make_value_axis(std::string name, std::string unit, std::vector<double> values);
Axis make_range_axis(std::string name, std::string unit, double start, double stop,
                     double step);
Axis make_log_axis(std::string name, std::string unit, double lo, double hi, int points);
Axis make_block_axis(std::pair<int, int> k_range);

/// Run provenance carried by every result.
struct RunMetadata {
  HardwareProfile profile;
  std::string estimator;  // "exact", "mc" or "auto"
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string command;      // filled by the CLI layer
  std::string config_hash;  // filled by the CLI layer
};

/// Dense grid of metric values over one or two axes, row-major in axis
/// order, with masked (undefined) cells and per-row/column argmax
/// annotations.
struct SweepResult {
  std::vector<Axis> axes;
  std::vector<std::optional<double>> values;
  std::string metric;
  std::map<std::string, std::vector<int>> annotations;
  RunMetadata metadata;

  std::size_t cell_count() const;
  std::optional<double> at(std::size_t row, std::size_t col) const;
};

/// Per-flow throughput of the block-based memory switch over block size and
/// link length. Annotates the rate-optimal block size for every length
/// ("argmax_k_per_l", smallest argmax on ties).
SweepResult sweep_rate_K_L(const HardwareProfile& profile, const Axis& k_axis,
                           const Axis& l_axis, const Estimator& estimator);

/// End-to-end fidelity of the block-based memory switch over block size and
/// pulse rate. Closed form, no estimator involved.
SweepResult sweep_fidelity_K_fpulse(const HardwareProfile& profile, const Axis& k_axis,
                                    const Axis& f_axis);

struct FrontierPoint {
  double rate_normalized = 0.0;
  double fidelity = 0.0;
};

/// Rate-fidelity operating points of both architectures along a beta sweep.
/// The memory side picks its block size per beta by the chosen objective
/// (negativity utility by default; rate reproduces the throughput maps).
struct FrontierResult {
  std::vector<double> beta;
  std::vector<FrontierPoint> egs;
  std::vector<std::optional<FrontierPoint>> mem;
  std::vector<std::optional<int>> mem_k_star;
  RunMetadata metadata;
};

FrontierResult frontier_vs_beta(const HardwareProfile& profile, const Axis& beta_axis,
                                std::pair<int, int> k_range, const Estimator& estimator,
                                Objective k_choice = Objective::utility_ngt);

/// A named single-group override of the baseline profile: the pulse rate,
/// the link length, or the switch size (N, B) with per-client vectors
/// broadcast to the new N.
struct ScenarioOverride {
  std::string label;
  std::optional<double> pulse_rate;
  std::optional<double> link_length;
  std::optional<std::pair<int, int>> n_and_b;

  HardwareProfile apply(const HardwareProfile& base) const;
};

/// Delta of the negativity utility (mem minus EGS) over beta for each
/// scenario. Positive cells favor the memory architecture.
SweepResult dominance_sweep(const HardwareProfile& profile, const Axis& beta_axis,
                            const std::vector<ScenarioOverride>& scenarios,
                            std::pair<int, int> k_range, const Estimator& estimator);

/// (x - min)/(max - min) over the unmasked entries; masks are preserved and
/// the argmax index is unchanged. Throws degenerate_series_error when fewer
/// than two distinct unmasked values exist.
std::vector<std::optional<double>> minmax_normalize(
    const std::vector<std::optional<double>>& series);

}  // namespace qswitch
