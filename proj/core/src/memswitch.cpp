#include "qswitch/memswitch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "qswitch/errors.hpp"
#include "qswitch/lleg.hpp"
#include "qswitch/utility.hpp"

namespace qswitch {

namespace {

std::int64_t emax_from_sum_max(std::int64_t sum, std::int64_t max_count,
                               std::int64_t budget) {
  return std::min({budget, sum / 2, sum - max_count});
}

double binom_coeff(int n, int k) {
  // memories per client stay small (tens), where this is exact in double
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / i;
  return c;
}

}  // namespace

void ConnectivityDistribution::validate() const {
  if (mem_per_client.size() < 2)
    throw std::invalid_argument("ConnectivityDistribution: need >= 2 clients");
  for (int m : mem_per_client)
    if (m < 0)
      throw std::invalid_argument("ConnectivityDistribution: memories must be >= 0");
  if (!(link_prob >= 0.0 && link_prob <= 1.0))
    throw std::invalid_argument("ConnectivityDistribution: link_prob must lie in [0,1]");
}

std::int64_t ConnectivityDistribution::state_count() const {
  std::int64_t count = 1;
  for (int m : mem_per_client) {
    if (count > std::numeric_limits<std::int64_t>::max() / (m + 1))
      return std::numeric_limits<std::int64_t>::max();
    count *= (m + 1);
  }
  return count;
}

ConnectivityDistribution connectivity_from_profile(const HardwareProfile& profile,
                                                   double link_prob) {
  ConnectivityDistribution dist;
  dist.mem_per_client.resize(profile.n_clients);
  for (int i = 0; i < profile.n_clients; ++i)
    dist.mem_per_client[i] = std::min(profile.mem_per_client[i], profile.multiplex[i]);
  dist.link_prob = link_prob;
  dist.validate();
  return dist;
}

double state_pmf(const ConnectivityDistribution& dist, const ConnectivityState& state) {
  dist.validate();
  if (state.counts.size() != dist.mem_per_client.size())
    throw std::domain_error("state_pmf: state length mismatch");
  const double p = dist.link_prob;
  double pmf = 1.0;
  for (std::size_t i = 0; i < state.counts.size(); ++i) {
    const int m = dist.mem_per_client[i];
    const int c = state.counts[i];
    if (c < 0 || c > m) throw std::domain_error("state_pmf: count out of range");
    pmf *= binom_coeff(m, c) * std::pow(p, c) * std::pow(1.0 - p, m - c);
  }
  return pmf;
}

ConnectivityState sample_state(const ConnectivityDistribution& dist, SplitMix64& rng) {
  ConnectivityState state;
  state.counts.resize(dist.mem_per_client.size());
  for (std::size_t i = 0; i < state.counts.size(); ++i) {
    int c = 0;
    for (int j = 0; j < dist.mem_per_client[i]; ++j)
      c += rng.next_double() < dist.link_prob ? 1 : 0;
    state.counts[i] = c;
  }
  return state;
}

std::int64_t state_emax(const ConnectivityState& state, std::int64_t budget) {
  CapacityVector cv{state.counts, budget};
  return emax_closed_form(cv);
}

double expected_emax_exact(const ConnectivityDistribution& dist, std::int64_t budget) {
  dist.validate();
  if (budget < 0) throw std::invalid_argument("expected_emax_exact: budget must be >= 0");
  if (dist.state_count() > kMaxExactStates)
    throw size_error("expected_emax_exact: state space exceeds 1e6 states");

  const int n = static_cast<int>(dist.mem_per_client.size());
  std::vector<std::vector<double>> pmf(n);
  for (int i = 0; i < n; ++i) {
    const int m = dist.mem_per_client[i];
    pmf[i].resize(m + 1);
    for (int c = 0; c <= m; ++c)
      pmf[i][c] = binom_coeff(m, c) * std::pow(dist.link_prob, c) *
                  std::pow(1.0 - dist.link_prob, m - c);
  }

  // full enumeration in fixed depth-first order (client 0 outermost)
  double total = 0.0;
  std::vector<int> counts(n, 0);
  auto recurse = [&](auto&& self, int i, double prob, std::int64_t sum,
                     std::int64_t maxc) -> void {
    if (i == n) {
      total += prob * static_cast<double>(emax_from_sum_max(sum, maxc, budget));
      return;
    }
    for (int c = 0; c <= dist.mem_per_client[i]; ++c)
      self(self, i + 1, prob * pmf[i][c], sum + c, std::max<std::int64_t>(maxc, c));
  };
  recurse(recurse, 0, 1.0, 0, 0);
  return total;
}

McEstimate expected_emax_mc(const ConnectivityDistribution& dist, std::int64_t budget,
                            std::int64_t n_samples, std::uint64_t seed, int workers) {
  dist.validate();
  if (budget < 0) throw std::invalid_argument("expected_emax_mc: budget must be >= 0");
  if (n_samples < 1) throw std::invalid_argument("expected_emax_mc: need n_samples >= 1");
  if (workers < 1) throw std::invalid_argument("expected_emax_mc: need workers >= 1");

  const int n = static_cast<int>(dist.mem_per_client.size());
  const double p = dist.link_prob;

  // Each sample draws from its own stream keyed by (seed, sample index), so
  // the chunking below does not affect any draw. Sums are integers; the one
  // division happens at the end.
  auto run_chunk = [&](std::int64_t lo, std::int64_t hi, std::int64_t& sum_out,
                       std::int64_t& sumsq_out) {
    std::int64_t sum = 0, sumsq = 0;
    for (std::int64_t s = lo; s < hi; ++s) {
      SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(s)));
      std::int64_t total = 0, maxc = 0;
      for (int i = 0; i < n; ++i) {
        int c = 0;
        for (int j = 0; j < dist.mem_per_client[i]; ++j)
          c += rng.next_double() < p ? 1 : 0;
        total += c;
        maxc = std::max<std::int64_t>(maxc, c);
      }
      const std::int64_t e = emax_from_sum_max(total, maxc, budget);
      sum += e;
      sumsq += e * e;
    }
    sum_out = sum;
    sumsq_out = sumsq;
  };

  const int w = static_cast<int>(std::min<std::int64_t>(workers, n_samples));
  std::vector<std::int64_t> sums(w, 0), sumsqs(w, 0);
  if (w == 1) {
    run_chunk(0, n_samples, sums[0], sumsqs[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (int t = 0; t < w; ++t) {
      const std::int64_t lo = n_samples * t / w;
      const std::int64_t hi = n_samples * (t + 1) / w;
      threads.emplace_back(run_chunk, lo, hi, std::ref(sums[t]), std::ref(sumsqs[t]));
    }
    for (auto& th : threads) th.join();
  }

  std::int64_t sum = 0, sumsq = 0;
  for (int t = 0; t < w; ++t) {
    sum += sums[t];
    sumsq += sumsqs[t];
  }

  McEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  est.mean = static_cast<double>(sum) / static_cast<double>(n_samples);
  if (n_samples > 1) {
    const double s1 = static_cast<double>(sum);
    const double s2 = static_cast<double>(sumsq);
    const double nn = static_cast<double>(n_samples);
    const double var = std::max(0.0, (s2 - s1 * s1 / nn) / (nn - 1.0));
    est.std_error = std::sqrt(var / nn);
  }
  return est;
}

double mem_slot_duration(const HardwareProfile& profile, int block_size,
                         MemProtocol protocol) {
  if (block_size < 1) throw std::domain_error("mem_slot_duration: block size must be >= 1");
  const double tail = profile.herald_delay() + profile.tau_c + profile.tau_a;
  if (protocol == MemProtocol::single_attempt) {
    if (block_size != 1)
      throw std::invalid_argument(
          "mem_slot_duration: the single-attempt protocol has no block size");
    return 1.0 / profile.pulse_rate + tail;
  }
  // first emission pipelined into the previous slot
  return static_cast<double>(block_size - 1) / profile.pulse_rate + tail;
}

double expected_emax(const ConnectivityDistribution& dist, std::int64_t budget,
                     const Estimator& estimator) {
  switch (estimator.kind) {
    case Estimator::Kind::exact:
      return expected_emax_exact(dist, budget);
    case Estimator::Kind::mc:
      return expected_emax_mc(dist, budget, estimator.n_samples, estimator.seed,
                              estimator.workers)
          .mean;
    case Estimator::Kind::auto_select:
      if (dist.state_count() <= kMaxExactStates) return expected_emax_exact(dist, budget);
      return expected_emax_mc(dist, budget, estimator.n_samples, estimator.seed,
                              estimator.workers)
          .mean;
  }
  throw std::invalid_argument("expected_emax: unknown estimator kind");
}

double mem_expected_rate(const ConnectivityDistribution& dist, std::int64_t budget,
                         double p_swap, double slot_seconds,
                         const Estimator& estimator) {
  if (!(slot_seconds > 0.0))
    throw std::domain_error("mem_expected_rate: slot duration must be > 0");
  return p_swap / slot_seconds * expected_emax(dist, budget, estimator);
}

double mem_link_prob(const HardwareProfile& profile, int block_size,
                     MemProtocol protocol) {
  if (protocol == MemProtocol::single_attempt) {
    if (block_size != 1)
      throw std::invalid_argument("mem_link_prob: the single-attempt protocol has no block size");
    return mem_link_success_single(profile);
  }
  return block_success_prob(profile, block_size);
}

ArchitectureMetrics mem_max_total_rate(const HardwareProfile& profile, int block_size,
                                       MemProtocol protocol,
                                       const Estimator& estimator) {
  profile.validate();
  const double p_link = mem_link_prob(profile, block_size, protocol);
  const auto dist = connectivity_from_profile(profile, p_link);

  ArchitectureMetrics m;
  m.architecture = "mem";
  m.slot_duration = mem_slot_duration(profile, block_size, protocol);
  m.rate_total = mem_expected_rate(dist, profile.bsm_budget, profile.p_swap,
                                   m.slot_duration, estimator);
  m.rate_normalized = m.rate_total / profile.n_flows();
  return m;
}

FidelityResult mem_fidelity(const HardwareProfile& profile, int block_size,
                            MemProtocol protocol) {
  profile.validate();
  double w_link;
  if (protocol == MemProtocol::single_attempt) {
    if (block_size != 1)
      throw std::invalid_argument("mem_fidelity: the single-attempt protocol has no block size");
    w_link = single_link_werner(profile, Architecture::mem);
  } else {
    w_link = block_link_werner(profile, block_size);
  }
  const double T = profile.coherence_time;
  const double w = w_link * w_link * profile.q_bsm *
                   std::exp(-4.0 * (profile.tau_c + profile.tau_a) / T) *
                   std::exp(-2.0 * profile.herald_delay() / T);
  return {w, fidelity_from_werner(w)};
}

ArchitectureMetrics mem_metrics(const HardwareProfile& profile, int block_size,
                                MemProtocol protocol, const Estimator& estimator) {
  ArchitectureMetrics m = mem_max_total_rate(profile, block_size, protocol, estimator);
  const FidelityResult f = mem_fidelity(profile, block_size, protocol);
  m.werner_e2e = f.werner;
  m.fidelity_e2e = f.fidelity;
  return m;
}

BlockSizeChoice optimize_block_size(const HardwareProfile& profile, Objective objective,
                                    std::pair<int, int> k_range,
                                    const Estimator& estimator) {
  if (k_range.first < 1 || k_range.second < k_range.first)
    throw std::invalid_argument("optimize_block_size: empty block-size range");

  bool found = false;
  BlockSizeChoice choice;
  for (int k = k_range.first; k <= k_range.second; ++k) {
    const ArchitectureMetrics m =
        mem_max_total_rate(profile, k, MemProtocol::block, estimator);
    double value;
    if (objective == Objective::rate) {
      value = m.rate_normalized;
    } else {
      FidelityResult f;
      try {
        f = mem_fidelity(profile, k, MemProtocol::block);
      } catch (const undefined_conditional_error&) {
        continue;  // no successful links, so no utility either
      }
      UtilityKind kind;
      switch (objective) {
        case Objective::utility_de: kind = UtilityKind::de; break;
        case Objective::utility_skf: kind = UtilityKind::skf; break;
        default: kind = UtilityKind::ngt; break;
      }
      const auto u = log_utility(m.rate_normalized, quality(kind, f.fidelity));
      if (!u) continue;
      value = *u;
    }
    // strict improvement keeps the smallest block size on ties
    if (!found || value > choice.objective_value) {
      found = true;
      choice = {k, value};
    }
  }
  if (!found)
    throw no_feasible_block_error(
        "optimize_block_size: objective undefined for every block size in range");
  return choice;
}

}  // namespace qswitch
