#pragma once

#include <string>

#include "qswitch/hardware.hpp"

namespace qswitch {

// -------------------------------------------------------------------------
// All-photonic switch: stations are bound to client pairs for an epoch and
// fire blindly every slot, so the end-to-end success probability is a plain
// product and the throughput is a closed form.
// -------------------------------------------------------------------------

/// One operating point of either architecture.
struct ArchitectureMetrics {
  double rate_total = 0.0;       // end-to-end pairs per second, all flows
  double rate_normalized = 0.0;  // pairs per second per flow
  double werner_e2e = 0.0;
  double fidelity_e2e = 0.0;
  double slot_duration = 0.0;  // seconds
  std::string architecture;    // "egs" or "mem"
};

struct FidelityResult {
  double werner = 0.0;
  double fidelity = 0.0;
};

/// p_e2e = p_link^2 * xi^2 * p_BSA: both links succeed, both detectors fire,
/// the analyzer projects.
double egs_e2e_prob(const HardwareProfile& profile);

/// Maximum total throughput: p_e2e * f_pulse * E_max(S, B), optionally
/// scaled by an active-duty factor in [0, 1] (calibration overhead at epoch
/// boundaries; 1 = negligible). Only the rate and slot fields are filled.
ArchitectureMetrics egs_max_total_rate(const HardwareProfile& profile,
                                       double duty_factor = 1.0);

/// End-to-end Werner parameter w_link^2 * q_BSM * e^(-2 tau_hrld / T) and
/// the corresponding fidelity. Independent of f_pulse, S, B.
FidelityResult egs_fidelity(const HardwareProfile& profile);

/// Rates plus fidelity in one bundle.
ArchitectureMetrics egs_metrics(const HardwareProfile& profile,
                                double duty_factor = 1.0);

}  // namespace qswitch
