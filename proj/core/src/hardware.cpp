#include "qswitch/hardware.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qswitch {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool is_prob(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

double pair_emission_prob(double beta) {
  if (!(beta >= 0.0)) throw std::domain_error("pair_emission_prob: beta must be >= 0");
  return beta * (beta + 2.0) / ((beta + 1.0) * (beta + 1.0));
}

double initial_fidelity(double beta) {
  if (!(beta >= 0.0)) throw std::domain_error("initial_fidelity: beta must be >= 0");
  return 2.0 / ((beta + 1.0) * (beta + 2.0));
}

double werner_from_fidelity(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0))
    throw std::domain_error("werner_from_fidelity: fidelity must lie in [0,1]");
  return (4.0 * fidelity - 1.0) / 3.0;
}

double fidelity_from_werner(double werner) {
  if (!(werner >= -1.0 / 3.0 && werner <= 1.0))
    throw std::domain_error("fidelity_from_werner: werner must lie in [-1/3,1]");
  return (1.0 + 3.0 * werner) / 4.0;
}

double half_link_transmittance(double alpha_db_per_km, double length_km) {
  if (!(alpha_db_per_km >= 0.0))
    throw std::domain_error("half_link_transmittance: attenuation must be >= 0");
  if (!(length_km > 0.0))
    throw std::domain_error("half_link_transmittance: length must be > 0");
  return std::pow(10.0, -alpha_db_per_km * (length_km / 2.0) / 10.0);
}

double heralding_delay(double length_km, double light_speed_m_per_s) {
  if (!(length_km > 0.0)) throw std::domain_error("heralding_delay: length must be > 0");
  if (!(light_speed_m_per_s > 0.0))
    throw std::domain_error("heralding_delay: light speed must be > 0");
  return (1000.0 * length_km) / light_speed_m_per_s;
}

void HardwareProfile::validate() const {
  require(n_clients >= 2, "n_clients must be >= 2");
  require(multiplex.size() == static_cast<size_t>(n_clients),
          "multiplex must have one entry per client");
  require(mem_per_client.size() == static_cast<size_t>(n_clients),
          "mem_per_client must have one entry per client");
  for (int s : multiplex) require(s >= 1, "multiplex entries must be >= 1");
  for (int m : mem_per_client) require(m >= 1, "mem_per_client entries must be >= 1");
  // B = 0 is degenerate but meaningful (a switch with no stations idles).
  require(bsm_budget >= 0, "bsm_budget must be >= 0");
  require(is_prob(detector_eff), "detector_eff must lie in [0,1]");
  require(is_prob(p_bsa), "p_bsa must lie in [0,1]");
  require(is_prob(p_swap), "p_swap must lie in [0,1]");
  require(std::isfinite(attenuation) && attenuation >= 0.0, "attenuation must be >= 0");
  require(std::isfinite(link_length) && link_length > 0.0, "link_length must be > 0");
  require(is_prob(gate_eff_mem), "gate_eff_mem must lie in [0,1]");
  require(is_prob(gate_eff_switch), "gate_eff_switch must lie in [0,1]");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be >= 0");
  require(std::isfinite(light_speed) && light_speed > 0.0, "light_speed must be > 0");
  require(std::isfinite(tau_c) && tau_c >= 0.0, "tau_c must be >= 0");
  require(std::isfinite(tau_a) && tau_a >= 0.0, "tau_a must be >= 0");
  require(std::isfinite(pulse_rate) && pulse_rate > 0.0, "pulse_rate must be > 0");
  require(std::isfinite(coherence_time) && coherence_time > 0.0,
          "coherence_time must be > 0");
  require(is_prob(q_bsm), "q_bsm must lie in [0,1]");
}

HardwareProfile HardwareProfile::baseline() {
  HardwareProfile p;
  p.multiplex.assign(p.n_clients, 3);
  p.mem_per_client.assign(p.n_clients, 3);
  return p;
}

}  // namespace qswitch
