#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "qswitch/hardware.hpp"

namespace qswitch {

struct Estimator;  // memswitch.hpp

// -------------------------------------------------------------------------
// Application-level quality functions Q(F) and the proportional-fair
// utility U = log(R * Q(F)). Sweeps routinely cross the separability
// threshold, so an undefined utility is a masked value (nullopt), not an
// error.
// -------------------------------------------------------------------------

enum class UtilityKind { de, skf, ngt };

/// Hashing yield of a Werner state (asymptotic one-way distillable
/// entanglement): max{0, 1 + F log2 F + (1-F) log2((1-F)/3)}. Positive only
/// above F ~ 0.8107. Domain: F in [0.25, 1].
double hashing_yield(double fidelity);

/// Asymptotic BB84 secret-key fraction max{0, 1 - 2 h(e)} with QBER
/// e = 2(1-F)/3. Positive only above F ~ 0.8350. Domain: F in [0.25, 1].
double bb84_key_fraction(double fidelity);

/// Scaled negativity above the separability threshold: max{F - 1/2, 0}.
double negativity_q(double fidelity);

/// Q(F) for the chosen utility kind.
double quality(UtilityKind kind, double fidelity);

/// ln(R * Q) when R * Q > 0, nullopt when the product vanishes.
std::optional<double> log_utility(double rate, double q);

/// U_NGT(mem at the utility-optimal block size) - U_NGT(EGS), both evaluated
/// at the given beta. nullopt when either side is undefined.
std::optional<double> delta_negativity_utility(const HardwareProfile& profile,
                                               double beta,
                                               std::pair<int, int> k_range,
                                               const Estimator& estimator);

}  // namespace qswitch
