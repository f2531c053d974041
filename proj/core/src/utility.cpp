#include "qswitch/utility.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qswitch/egs.hpp"
#include "qswitch/errors.hpp"
#include "qswitch/memswitch.hpp"

namespace qswitch {

namespace {

void check_high_fidelity_domain(double fidelity, const char* who) {
  if (!(fidelity >= 0.25 && fidelity <= 1.0))
    throw std::domain_error(std::string(who) + ": fidelity must lie in [0.25,1]");
}

// binary entropy in bits, with 0 log 0 = 0
double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace

double hashing_yield(double fidelity) {
  check_high_fidelity_domain(fidelity, "hashing_yield");
  double v = 1.0;
  if (fidelity > 0.0) v += fidelity * std::log2(fidelity);
  if (fidelity < 1.0) v += (1.0 - fidelity) * std::log2((1.0 - fidelity) / 3.0);
  return std::max(0.0, v);
}

double bb84_key_fraction(double fidelity) {
  check_high_fidelity_domain(fidelity, "bb84_key_fraction");
  const double qber = 2.0 * (1.0 - fidelity) / 3.0;
  return std::max(0.0, 1.0 - 2.0 * binary_entropy(qber));
}

double negativity_q(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0))
    throw std::domain_error("negativity_q: fidelity must lie in [0,1]");
  return std::max(fidelity - 0.5, 0.0);
}

double quality(UtilityKind kind, double fidelity) {
  switch (kind) {
    case UtilityKind::de: return hashing_yield(fidelity);
    case UtilityKind::skf: return bb84_key_fraction(fidelity);
    case UtilityKind::ngt: return negativity_q(fidelity);
  }
  throw std::invalid_argument("quality: unknown utility kind");
}

std::optional<double> log_utility(double rate, double q) {
  if (!(rate >= 0.0)) throw std::domain_error("log_utility: rate must be >= 0");
  if (!(q >= 0.0)) throw std::domain_error("log_utility: quality must be >= 0");
  const double v = rate * q;
  if (v <= 0.0) return std::nullopt;
  return std::log(v);
}

std::optional<double> delta_negativity_utility(const HardwareProfile& profile,
                                               double beta,
                                               std::pair<int, int> k_range,
                                               const Estimator& estimator) {
  HardwareProfile p = profile;
  p.beta = beta;
  p.validate();

  const ArchitectureMetrics e = egs_metrics(p);
  const auto u_egs = log_utility(e.rate_normalized, negativity_q(e.fidelity_e2e));

  std::optional<double> u_mem;
  try {
    const BlockSizeChoice c =
        optimize_block_size(p, Objective::utility_ngt, k_range, estimator);
    u_mem = c.objective_value;
  } catch (const no_feasible_block_error&) {
    u_mem = std::nullopt;
  }

  if (!u_egs || !u_mem) return std::nullopt;
  return *u_mem - *u_egs;
}

}  // namespace qswitch
