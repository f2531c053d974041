#include "qswitch/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "qswitch/errors.hpp"
#include "qswitch/utility.hpp"

namespace qswitch {

namespace {

const char* estimator_name(const Estimator& e) {
  switch (e.kind) {
    case Estimator::Kind::exact: return "exact";
    case Estimator::Kind::mc: return "mc";
    default: return "auto";
  }
}

RunMetadata make_metadata(const HardwareProfile& profile, const Estimator& est) {
  RunMetadata md;
  md.profile = profile;
  md.estimator = estimator_name(est);
  md.n_samples = est.n_samples;
  md.seed = est.seed;
  md.workers = est.workers;
  return md;
}

// Static chunking over [0, n); each index is evaluated independently and
// written to its own slot, so the partition cannot affect the result. The
// first exception thrown by any cell is rethrown on the calling thread.
template <typename Fn>
void parallel_cells(std::size_t n, int workers, Fn&& fn) {
  const int w = static_cast<int>(std::min<std::size_t>(std::max(workers, 1), n));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  std::vector<std::exception_ptr> errors(w);
  for (int t = 0; t < w; ++t) {
    const std::size_t lo = n * t / w;
    const std::size_t hi = n * (t + 1) / w;
    threads.emplace_back([lo, hi, &fn, &error = errors[t]] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);
}

std::vector<int> per_column_argmax(const SweepResult& result) {
  const std::size_t rows = result.axes[0].size();
  const std::size_t cols = result.axes[1].size();
  std::vector<int> argmax(cols, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    bool found = false;
    double best = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const auto v = result.values[r * cols + c];
      if (!v) continue;
      if (!found || *v > best) {  // strict: smallest row index on ties
        found = true;
        best = *v;
        argmax[c] = static_cast<int>(r);
      }
    }
  }
  return argmax;
}

}  // namespace

Axis make_value_axis(std::string name, std::string unit, std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("axis '" + name + "' must be non-empty");
  return {std::move(name), std::move(unit), std::move(values), {}};
}

Axis make_range_axis(std::string name, std::string unit, double start, double stop,
                     double step) {
  if (!(step > 0.0) || !(stop >= start))
    throw std::invalid_argument("axis '" + name + "': need start <= stop and step > 0");
  std::vector<double> values;
  // count from the span so accumulated rounding cannot drop the endpoint
  const int count = static_cast<int>(std::floor((stop - start) / step + 0.5)) + 1;
  values.reserve(count);
  for (int i = 0; i < count; ++i) values.push_back(start + i * step);
  return make_value_axis(std::move(name), std::move(unit), std::move(values));
}

Axis make_log_axis(std::string name, std::string unit, double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2)
    throw std::invalid_argument("axis '" + name + "': need 0 < lo < hi and >= 2 points");
  std::vector<double> values;
  values.reserve(points);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < points; ++i)
    values.push_back(std::pow(10.0, llo + (lhi - llo) * i / (points - 1)));
  return make_value_axis(std::move(name), std::move(unit), std::move(values));
}

Axis make_block_axis(std::pair<int, int> k_range) {
  if (k_range.first < 1 || k_range.second < k_range.first)
    throw std::invalid_argument("block-size axis: empty range");
  std::vector<double> values;
  values.reserve(k_range.second - k_range.first + 1);
  for (int k = k_range.first; k <= k_range.second; ++k)
    values.push_back(static_cast<double>(k));
  return make_value_axis("k", "attempts", std::move(values));
}

std::size_t SweepResult::cell_count() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

std::optional<double> SweepResult::at(std::size_t row, std::size_t col) const {
  return values[row * axes[1].size() + col];
}

SweepResult sweep_rate_K_L(const HardwareProfile& profile, const Axis& k_axis,
                           const Axis& l_axis, const Estimator& estimator) {
  profile.validate();
  for (double k : k_axis.values)
    if (k < 1.0) throw std::invalid_argument("sweep_rate_K_L: block sizes must be >= 1");
  for (double l : l_axis.values)
    if (!(l > 0.0)) throw std::invalid_argument("sweep_rate_K_L: lengths must be > 0");

  SweepResult result;
  result.axes = {k_axis, l_axis};
  result.metric = "rate_normalized";
  result.metadata = make_metadata(profile, estimator);
  result.values.assign(result.cell_count(), std::nullopt);

  const std::size_t cols = l_axis.size();
  parallel_cells(result.cell_count(), estimator.workers, [&](std::size_t cell) {
    const int k = static_cast<int>(k_axis.values[cell / cols]);
    HardwareProfile p = profile;
    p.link_length = l_axis.values[cell % cols];
    // cells own derived streams; workers=1 inside the cell
    Estimator cell_est = estimator.with_stream(cell);
    cell_est.workers = 1;
    result.values[cell] =
        mem_max_total_rate(p, k, MemProtocol::block, cell_est).rate_normalized;
  });

  result.annotations["argmax_k_per_l"] = per_column_argmax(result);
  return result;
}

SweepResult sweep_fidelity_K_fpulse(const HardwareProfile& profile, const Axis& k_axis,
                                    const Axis& f_axis) {
  profile.validate();
  SweepResult result;
  result.axes = {k_axis, f_axis};
  result.metric = "fidelity_e2e";
  result.metadata = make_metadata(profile, Estimator::exact());
  result.values.assign(result.cell_count(), std::nullopt);

  const std::size_t cols = f_axis.size();
  for (std::size_t cell = 0; cell < result.cell_count(); ++cell) {
    const int k = static_cast<int>(k_axis.values[cell / cols]);
    HardwareProfile p = profile;
    p.pulse_rate = f_axis.values[cell % cols];
    result.values[cell] = mem_fidelity(p, k, MemProtocol::block).fidelity;
  }
  result.annotations["argmax_k_per_f"] = per_column_argmax(result);
  return result;
}

FrontierResult frontier_vs_beta(const HardwareProfile& profile, const Axis& beta_axis,
                                std::pair<int, int> k_range, const Estimator& estimator,
                                Objective k_choice) {
  profile.validate();
  const std::size_t n = beta_axis.size();

  FrontierResult result;
  result.beta = beta_axis.values;
  result.egs.resize(n);
  result.mem.resize(n);
  result.mem_k_star.resize(n);
  result.metadata = make_metadata(profile, estimator);

  parallel_cells(n, estimator.workers, [&](std::size_t i) {
    HardwareProfile p = profile;
    p.beta = beta_axis.values[i];
    const ArchitectureMetrics e = egs_metrics(p);
    result.egs[i] = {e.rate_normalized, e.fidelity_e2e};

    Estimator cell_est = estimator.with_stream(i);
    cell_est.workers = 1;
    try {
      const BlockSizeChoice c = optimize_block_size(p, k_choice, k_range, cell_est);
      const ArchitectureMetrics m =
          mem_metrics(p, c.k_star, MemProtocol::block, cell_est);
      result.mem[i] = FrontierPoint{m.rate_normalized, m.fidelity_e2e};
      result.mem_k_star[i] = c.k_star;
    } catch (const no_feasible_block_error&) {
      result.mem[i] = std::nullopt;
      result.mem_k_star[i] = std::nullopt;
    }
  });
  return result;
}

HardwareProfile ScenarioOverride::apply(const HardwareProfile& base) const {
  HardwareProfile p = base;
  if (pulse_rate) p.pulse_rate = *pulse_rate;
  if (link_length) p.link_length = *link_length;
  if (n_and_b) {
    p.n_clients = n_and_b->first;
    p.bsm_budget = n_and_b->second;
    // per-client vectors broadcast their first entry to the new size
    p.multiplex.assign(p.n_clients, base.multiplex.at(0));
    p.mem_per_client.assign(p.n_clients, base.mem_per_client.at(0));
  }
  p.validate();
  return p;
}

SweepResult dominance_sweep(const HardwareProfile& profile, const Axis& beta_axis,
                            const std::vector<ScenarioOverride>& scenarios,
                            std::pair<int, int> k_range, const Estimator& estimator) {
  profile.validate();
  if (scenarios.empty())
    throw std::invalid_argument("dominance_sweep: need at least one scenario");

  Axis scenario_axis;
  scenario_axis.name = "scenario";
  scenario_axis.unit = "";
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    scenario_axis.values.push_back(static_cast<double>(s));
    scenario_axis.labels.push_back(scenarios[s].label.empty()
                                       ? "scenario" + std::to_string(s)
                                       : scenarios[s].label);
  }

  SweepResult result;
  result.axes = {beta_axis, scenario_axis};
  result.metric = "delta_u_ngt";
  result.metadata = make_metadata(profile, estimator);
  result.values.assign(result.cell_count(), std::nullopt);

  const std::size_t cols = scenarios.size();
  parallel_cells(result.cell_count(), estimator.workers, [&](std::size_t cell) {
    const double beta = beta_axis.values[cell / cols];
    const HardwareProfile p = scenarios[cell % cols].apply(profile);
    Estimator cell_est = estimator.with_stream(cell);
    cell_est.workers = 1;
    const auto du = delta_negativity_utility(p, beta, k_range, cell_est);
    if (du) result.values[cell] = *du;
  });
  return result;
}

std::vector<std::optional<double>> minmax_normalize(
    const std::vector<std::optional<double>>& series) {
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (const auto& v : series) {
    if (!v) continue;
    if (!found) {
      lo = hi = *v;
      found = true;
    } else {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  }
  if (!found || !(hi > lo))
    throw degenerate_series_error(
        "minmax_normalize: need at least two distinct unmasked values");

  std::vector<std::optional<double>> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    if (series[i]) out[i] = (*series[i] - lo) / (hi - lo);
  return out;
}

}  // namespace qswitch
