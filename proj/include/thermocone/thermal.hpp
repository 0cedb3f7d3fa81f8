#pragma once

#include <limits>
#include <vector>

#include "thermocone/system.hpp"

namespace thermocone {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One sample (beta, log Z, E, S) of the thermal curve. beta may be +-inf.
struct ThermalPoint {
  double beta = 0.0;
  double log_z = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
};

/// log Z_beta split as -beta*shift + log_z_shifted, where shift is E_min for
/// beta >= 0 and E_max otherwise, so log_z_shifted never overflows.
struct ShiftedLogPartition {
  double shift = 0.0;
  double log_z_shifted = 0.0;

  double log_z(double beta) const { return -beta * shift + log_z_shifted; }
};

ShiftedLogPartition shifted_log_partition(const HamiltonianSpec& h, double beta);

/// Largest |beta| used for solver brackets: 750 over the smallest spacing
/// between adjacent levels, or +inf for a trivial Hamiltonian.
double beta_cap(const HamiltonianSpec& h);

/// Occupation probability of each level (not each basis state) in tau_beta.
std::vector<double> thermal_level_populations(const HamiltonianSpec& h, double beta);

ThermalPoint thermal_point(const HamiltonianSpec& h, double beta);

/// Unique beta with E(tau_beta) = energy, for energy strictly inside
/// (E_min, E_max). Returns +-inf when the energy is closer to an end of the
/// spectrum than the bracket [-beta_cap, beta_cap] can resolve.
double beta_from_energy(const HamiltonianSpec& h, double energy);

enum class BetaBranch { Positive, Negative };

/// beta on the requested sign branch with S(tau_beta) = entropy. The branch
/// floor is log g_0 (positive) or log g_max (negative); at or below it a
/// DomainError with code "boundary" is raised.
double beta_from_entropy(const HamiltonianSpec& h, double entropy, BetaBranch branch);

/// Var_{tau_beta}(H); zero at beta = +-inf.
double energy_variance(const HamiltonianSpec& h, double beta);

}  // namespace thermocone
