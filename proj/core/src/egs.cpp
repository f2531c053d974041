#include "qswitch/egs.hpp"

#include <cmath>
#include <stdexcept>

#include "qswitch/bmatch.hpp"
#include "qswitch/lleg.hpp"

namespace qswitch {

double egs_e2e_prob(const HardwareProfile& profile) {
  const double p_link = egs_link_success(profile);
  return p_link * p_link * profile.detector_eff * profile.detector_eff * profile.p_bsa;
}

ArchitectureMetrics egs_max_total_rate(const HardwareProfile& profile,
                                       double duty_factor) {
  profile.validate();
  if (!(duty_factor >= 0.0 && duty_factor <= 1.0))
    throw std::domain_error("duty_factor must lie in [0,1]");
  const CapacityVector cv{profile.multiplex, profile.bsm_budget};
  const double emax = static_cast<double>(emax_closed_form(cv));

  ArchitectureMetrics m;
  m.architecture = "egs";
  m.slot_duration = 1.0 / profile.pulse_rate;
  m.rate_total = egs_e2e_prob(profile) * profile.pulse_rate * emax * duty_factor;
  m.rate_normalized = m.rate_total / profile.n_flows();
  return m;
}

FidelityResult egs_fidelity(const HardwareProfile& profile) {
  profile.validate();
  const double w_link = single_link_werner(profile, Architecture::egs);
  // the end-node qubits wait one more herald delay for the BSM outcome
  const double w = w_link * w_link * profile.q_bsm *
                   std::exp(-2.0 * profile.herald_delay() / profile.coherence_time);
  return {w, fidelity_from_werner(w)};
}

ArchitectureMetrics egs_metrics(const HardwareProfile& profile, double duty_factor) {
  ArchitectureMetrics m = egs_max_total_rate(profile, duty_factor);
  const FidelityResult f = egs_fidelity(profile);
  m.werner_e2e = f.werner;
  m.fidelity_e2e = f.fidelity;
  return m;
}

}  // namespace qswitch
