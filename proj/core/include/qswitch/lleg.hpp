#pragma once

#include "qswitch/hardware.hpp"

namespace qswitch {

// -------------------------------------------------------------------------
// Link-level entanglement generation: per-slot success probabilities and
// Werner parameters for the midpoint-source protocols. Three variants:
// single-attempt feeding an all-photonic switch, single-attempt feeding a
// memory switch, and block-based with K pooled attempts per slot (first
// successful bin is kept).
// -------------------------------------------------------------------------

enum class Architecture { egs, mem };

enum class LinkProtocol { egs_single, mem_single, mem_block };

/// Per-bin outcome probabilities of one block attempt. q1 is the probability
/// of exactly one specified side being captured, so q0 + 2*q1 + q2 = 1.
struct BinOutcomeProbs {
  double q0;  // empty bin
  double q1;  // exactly one (specified) photon captured
  double q2;  // both photons captured
};

/// Success probability and heralded-pair Werner parameter of one protocol.
struct LinkModel {
  double success_prob;
  double werner;
  LinkProtocol protocol;
  int block_size;  // 1 for the single-attempt protocols
};

/// p_i = p_pair(beta) * (eta g_m) * (eta g_sw): one photon latches onto the
/// node memory, the partner must reach a station.
double egs_link_success(const HardwareProfile& profile);

/// p_i = p_pair(beta) * eta^2 * g_m^2: both photons latch onto memories.
double mem_link_success_single(const HardwareProfile& profile);

BinOutcomeProbs block_bin_probs(const HardwareProfile& profile);

/// Probability that the first non-empty bin of a K-bin block delivers both
/// photons: q2 * (1 - q0^K)/(1 - q0). Strictly increasing in K while
/// p_pair > 0; zero when the source is off.
double block_success_prob(const HardwareProfile& profile, int block_size);

/// Werner parameter of a heralded block link: the mixture over success bins
/// t, each waiting (K - t) attempt periods plus the heralding delay in
/// memory. Equals single_link_werner(mem) exactly at K = 1. Throws
/// undefined_conditional_error when the success probability vanishes.
double block_link_werner(const HardwareProfile& profile, int block_size);

/// Single-attempt link Werner parameter. EGS stores only the node-side qubit
/// during heralding (w0 * e^(-tau_hrld/T)); the memory switch stores both
/// sides (w0 * e^(-2 tau_hrld/T)).
double single_link_werner(const HardwareProfile& profile, Architecture arch);

/// Bundle of (p, w) for one protocol choice.
LinkModel link_model(const HardwareProfile& profile, LinkProtocol protocol,
                     int block_size = 1);

}  // namespace qswitch
