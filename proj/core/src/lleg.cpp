#include "qswitch/lleg.hpp"

#include <cmath>
#include <stdexcept>

#include "qswitch/errors.hpp"

namespace qswitch {

namespace {

constexpr int kMaxBlockSize = 1'000'000;

void check_block_size(int block_size) {
  if (block_size < 1) throw std::domain_error("block size must be >= 1");
  if (block_size > kMaxBlockSize)
    throw std::domain_error("block size capped at 1e6 per call");
}

}  // namespace

double egs_link_success(const HardwareProfile& profile) {
  const double eta = half_link_transmittance(profile.attenuation, profile.link_length);
  return pair_emission_prob(profile.beta) * (eta * profile.gate_eff_mem) *
         (eta * profile.gate_eff_switch);
}

double mem_link_success_single(const HardwareProfile& profile) {
  const double eta = half_link_transmittance(profile.attenuation, profile.link_length);
  return pair_emission_prob(profile.beta) * eta * eta * profile.gate_eff_mem *
         profile.gate_eff_mem;
}

BinOutcomeProbs block_bin_probs(const HardwareProfile& profile) {
  const double eta = half_link_transmittance(profile.attenuation, profile.link_length);
  const double eg = eta * profile.gate_eff_mem;
  const double pp = pair_emission_prob(profile.beta);
  BinOutcomeProbs b;
  b.q2 = pp * eg * eg;
  b.q1 = pp * eg * (1.0 - eg);
  b.q0 = 1.0 - pp * (2.0 * eg - eg * eg);
  return b;
}

double block_success_prob(const HardwareProfile& profile, int block_size) {
  check_block_size(block_size);
  const BinOutcomeProbs b = block_bin_probs(profile);
  if (b.q0 >= 1.0) return 0.0;  // source off: every bin is empty
  return b.q2 * (1.0 - std::pow(b.q0, block_size)) / (1.0 - b.q0);
}

double block_link_werner(const HardwareProfile& profile, int block_size) {
  check_block_size(block_size);
  const double p_success = block_success_prob(profile, block_size);
  if (!(p_success > 1e-300))
    throw undefined_conditional_error(
        "block_link_werner: success probability vanishes, conditional Werner "
        "parameter undefined");

  const BinOutcomeProbs b = block_bin_probs(profile);
  const double tau_h = profile.herald_delay();
  const double dt = 1.0 / profile.pulse_rate;
  const double two_over_T = 2.0 / profile.coherence_time;

  // Explicit K-term mixture over the success bin t, with the common factor
  // q2 cancelled against the success probability: the conditional bin
  // weights are q0^(t-1) (1-q0) / (1-q0^K).
  double mix = 0.0;
  double q0_pow = 1.0;  // q0^(t-1)
  for (int t = 1; t <= block_size; ++t) {
    const double wait = tau_h + static_cast<double>(block_size - t) * dt;
    mix += q0_pow * std::exp(-two_over_T * wait);
    q0_pow *= b.q0;
  }
  const double geometric = (1.0 - std::pow(b.q0, block_size)) / (1.0 - b.q0);
  return profile.initial_werner() * mix / geometric;
}

double single_link_werner(const HardwareProfile& profile, Architecture arch) {
  const double tau_h = profile.herald_delay();
  const double two_over_T = 2.0 / profile.coherence_time;
  const double w0 = profile.initial_werner();
  if (arch == Architecture::egs) {
    // only the node-side qubit is stored while the herald travels
    return w0 * std::exp(-tau_h / profile.coherence_time);
  }
  return w0 * std::exp(-two_over_T * tau_h);
}

LinkModel link_model(const HardwareProfile& profile, LinkProtocol protocol,
                     int block_size) {
  switch (protocol) {
    case LinkProtocol::egs_single:
      return {egs_link_success(profile), single_link_werner(profile, Architecture::egs),
              protocol, 1};
    case LinkProtocol::mem_single:
      return {mem_link_success_single(profile),
              single_link_werner(profile, Architecture::mem), protocol, 1};
    case LinkProtocol::mem_block:
      return {block_success_prob(profile, block_size),
              block_link_werner(profile, block_size), protocol, block_size};
  }
  throw std::invalid_argument("link_model: unknown protocol");
}

}  // namespace qswitch
