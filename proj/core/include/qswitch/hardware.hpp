#pragma once

#include <vector>

namespace qswitch {

// -------------------------------------------------------------------------
// SPDC source model and Werner-state algebra.
//
// Unit conventions everywhere in the library: seconds, Hz, km, dB/km, m/s.
// All conversions to seconds happen at one place (heralding_delay).
// -------------------------------------------------------------------------

/// Probability that the source emits at least one photon pair in an attempt:
/// beta*(beta+2)/(beta+1)^2. Strictly increasing in beta, in [0, 1).
double pair_emission_prob(double beta);

/// Fidelity of the emitted pair conditioned on emission: 2/((beta+1)(beta+2)).
/// Strictly decreasing in beta; equals 1 at beta = 0.
double initial_fidelity(double beta);

/// Werner parameter of a state with fidelity F: w = (4F - 1)/3.
double werner_from_fidelity(double fidelity);

/// Fidelity of a Werner state: F = (1 + 3w)/4.
double fidelity_from_werner(double werner);

/// Transmittance of half a link of length_km at alpha dB/km:
/// 10^(-alpha*(L/2)/10). The source sits at the link midpoint.
double half_link_transmittance(double alpha_db_per_km, double length_km);

/// One-way classical notification latency over a link in seconds:
/// (1000*L)/v_f for L in km and v_f in m/s.
double heralding_delay(double length_km, double light_speed_m_per_s);

/// Full parameter set of one operating point: topology, optics, timing and
/// noise knobs shared by both switch architectures.
struct HardwareProfile {
  int n_clients = 6;                    // N
  std::vector<int> multiplex;           // S_i, one entry per client
  std::vector<int> mem_per_client;      // M_i, one entry per client
  int bsm_budget = 8;                   // B
  double detector_eff = 0.9;            // xi
  double p_bsa = 0.5;                   // optical BSA success probability
  double p_swap = 1.0;                  // memory-memory swap success probability
  double attenuation = 0.2;             // dB/km
  double link_length = 1.0;             // km, node to switch
  double gate_eff_mem = 0.85;           // g_m
  double gate_eff_switch = 0.85;        // g_sw
  double beta = 0.03;                   // source tuning parameter
  double light_speed = 2.0e8;           // m/s in fiber
  double tau_c = 2.0e-6;                // s, connectivity acquisition
  double tau_a = 3.0e-6;                // s, control and actuation
  double pulse_rate = 1.0e7;            // Hz
  double coherence_time = 5.0e-4;       // s, memory coherence time T
  double q_bsm = 0.97;                  // depolarizing parameter of the swap

  /// Throws std::invalid_argument naming the offending field. All library
  /// operations assume a validated profile.
  void validate() const;

  /// F = N(N-1)/2 unordered client pairs.
  int n_flows() const { return n_clients * (n_clients - 1) / 2; }

  /// tau_hrld = L/v_f in seconds.
  double herald_delay() const { return heralding_delay(link_length, light_speed); }

  /// Werner parameter of a fresh pair: w0(beta).
  double initial_werner() const { return werner_from_fidelity(initial_fidelity(beta)); }

  /// The default operating point: 6 clients, S_i = M_i = 3, B = 8, 1 km
  /// links, 10 MHz SPDC sources at beta = 0.03.
  static HardwareProfile baseline();
};

}  // namespace qswitch
