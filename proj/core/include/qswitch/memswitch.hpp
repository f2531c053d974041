#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qswitch/bmatch.hpp"
#include "qswitch/egs.hpp"
#include "qswitch/hardware.hpp"
#include "qswitch/rng.hpp"

namespace qswitch {

// -------------------------------------------------------------------------
// Herald-then-swap switch: per-slot connectivity is a vector of independent
// binomials (one per client), the scheduler extracts the maximum number of
// swaps from each realized state, and the expected throughput is either an
// exact sum over all states or a Monte Carlo estimate with a deterministic,
// worker-count-invariant contract.
// -------------------------------------------------------------------------

/// One realized connectivity state: heralded link pairs per client.
struct ConnectivityState {
  std::vector<int> counts;
};

/// Product-binomial distribution of connectivity states: client i holds
/// Binomial(M_i, p) heralded pairs, independently.
struct ConnectivityDistribution {
  std::vector<int> mem_per_client;
  double link_prob = 0.0;

  void validate() const;
  /// Number of enumerable states, prod(M_i + 1); saturates at 2^63-1.
  std::int64_t state_count() const;
};

/// Effective per-client supply is min(M_i, S_i): a multiplexing frame without
/// a dedicated memory (or vice versa) cannot hold a link pair.
ConnectivityDistribution connectivity_from_profile(const HardwareProfile& profile,
                                                   double link_prob);

/// pi(c) = prod_i C(M_i, c_i) p^c_i (1-p)^(M_i - c_i).
double state_pmf(const ConnectivityDistribution& dist, const ConnectivityState& state);

/// One state draw: M_i independent coin flips per client, in client order.
/// The flip count per state is fixed, so a stream replays identically on any
/// platform.
ConnectivityState sample_state(const ConnectivityDistribution& dist, SplitMix64& rng);

/// Maximum number of swaps the scheduler can extract from state c.
std::int64_t state_emax(const ConnectivityState& state, std::int64_t budget);

inline constexpr std::int64_t kMaxExactStates = 1'000'000;

/// Exact E[E_max] by full enumeration of the state space. Throws size_error
/// when prod(M_i + 1) exceeds kMaxExactStates; callers fall back to the
/// Monte Carlo estimate.
double expected_emax_exact(const ConnectivityDistribution& dist, std::int64_t budget);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo E[E_max]. Per-sample values are accumulated as exact integer
/// sums and divided once at the end, and each sample draws from its own
/// counter-derived stream, so the estimate is bitwise identical for any
/// worker count and any chunking of the sample range.
McEstimate expected_emax_mc(const ConnectivityDistribution& dist, std::int64_t budget,
                            std::int64_t n_samples, std::uint64_t seed,
                            int workers = 1);

enum class MemProtocol { single_attempt, block };

/// Slot duration in seconds. Block: (K-1)/f_pulse + tau_hrld + tau_c + tau_a
/// (the first emission is pipelined into the previous slot). Single-attempt:
/// 1/f_pulse + tau_hrld + tau_c + tau_a and requires K = 1.
double mem_slot_duration(const HardwareProfile& profile, int block_size,
                         MemProtocol protocol);

/// Documented default seed for every stochastic path.
inline constexpr std::uint64_t kDefaultSeed = 0xA11CE;

/// Estimator selection for the expected-throughput computation. auto_select
/// uses the exact sum when the state space is enumerable and Monte Carlo
/// otherwise.
struct Estimator {
  enum class Kind { exact, mc, auto_select };
  Kind kind = Kind::auto_select;
  std::int64_t n_samples = 100'000;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;

  static Estimator exact() { return {Kind::exact, 0, 0, 1}; }
  static Estimator mc(std::int64_t n, std::uint64_t seed_, int workers_ = 1) {
    return {Kind::mc, n, seed_, workers_};
  }
  /// Same estimator with a sub-stream seed, for per-cell decorrelation.
  Estimator with_stream(std::uint64_t index) const {
    Estimator e = *this;
    e.seed = derive_stream(seed, index);
    return e;
  }
};

/// E[E_max] under the chosen estimator.
double expected_emax(const ConnectivityDistribution& dist, std::int64_t budget,
                     const Estimator& estimator);

/// Throughput from explicit components: p_swap / slot * E[E_max]. Exposed so
/// synthetic distributions can be driven directly.
double mem_expected_rate(const ConnectivityDistribution& dist, std::int64_t budget,
                         double p_swap, double slot_seconds,
                         const Estimator& estimator);

/// Link probability of the chosen protocol (single-attempt or block of K).
double mem_link_prob(const HardwareProfile& profile, int block_size,
                     MemProtocol protocol);

/// Maximum expected total throughput of the memory switch, total and
/// per-flow. Fills the rate and slot fields of the metrics.
ArchitectureMetrics mem_max_total_rate(const HardwareProfile& profile, int block_size,
                                       MemProtocol protocol,
                                       const Estimator& estimator);

/// End-to-end Werner parameter and fidelity: four qubits decohere for
/// tau_c + tau_a between herald and swap, and the two end-node qubits wait
/// one more herald delay for the outcome.
FidelityResult mem_fidelity(const HardwareProfile& profile, int block_size,
                            MemProtocol protocol);

/// Rates plus fidelity in one bundle.
ArchitectureMetrics mem_metrics(const HardwareProfile& profile, int block_size,
                                MemProtocol protocol, const Estimator& estimator);

enum class Objective { rate, utility_de, utility_skf, utility_ngt };

struct BlockSizeChoice {
  int k_star = 0;
  double objective_value = 0.0;
};

/// Exhaustive scan of the block size over [k_range.first, k_range.second].
/// rate maximizes the per-flow rate; the utility objectives maximize
/// log(rate_normalized * Q(fidelity)) and skip block sizes where the
/// utility is undefined. Smallest argmax on ties. Throws
/// no_feasible_block_error when every block size is undefined.
BlockSizeChoice optimize_block_size(const HardwareProfile& profile, Objective objective,
                                    std::pair<int, int> k_range,
                                    const Estimator& estimator);

}  // namespace qswitch
