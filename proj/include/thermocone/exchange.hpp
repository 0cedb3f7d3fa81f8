#pragma once

#include "thermocone/diagram.hpp"

namespace thermocone {

/// Chord slope (S1 - S2)/(E1 - E2) between tau_beta1 and tau_beta2. Falls back
/// to the tangent slope at the midpoint when |beta1 - beta2| is below
/// 1e-6 (1 + max|beta_i|).
double beta_eff(const HamiltonianSpec& h, double beta1, double beta2);

/// System goes rho -> sigma while m copies of a reservoir go from tau_beta1 to
/// tau_beta2 and a battery on the same qudit absorbs the work.
struct ExchangeSpec {
  QuantumState rho;
  QuantumState sigma;
  double beta1 = 1.0;
  double beta2 = 1.0;
};

/// Per-copy results. Positive `work` is extracted; `heat` is provided by the
/// reservoir. battery_charging is false when work is injected (ell < 0).
struct ExchangeResult {
  double m_over_n = 0.0;
  double ell_over_n = 0.0;
  double beta_eff = 0.0;
  double work = 0.0;
  double heat = 0.0;
  double work_athermality = 0.0;  // same work via A_{beta_eff}
  bool battery_charging = true;
};

double reservoir_ratio(const HamiltonianSpec& h, const ExchangeSpec& spec);
ExchangeResult work_heat(const HamiltonianSpec& h, const ExchangeSpec& spec);

/// Work to take rho to sigma at equal energy: (S(rho) - S(sigma)) / beta_eff.
double erasure_work(const HamiltonianSpec& h, const QuantumState& rho, const QuantumState& sigma,
                    double beta1, double beta2);

struct ReservoirEstimate {
  double leading = 0.0;  // (S(sigma) - S(rho)) / (beta1 Var eps)
  double exact = 0.0;    // reservoir_ratio at beta2 = beta1 + eps
};

ReservoirEstimate reservoir_size_for_epsilon(const HamiltonianSpec& h, const QuantumState& rho,
                                             const QuantumState& sigma, double beta1,
                                             double epsilon);

struct EngineResult {
  double eta_engine = 0.0;
  double eta_refrigerator = 0.0;
  double work = 0.0;
  double heat_hot = 0.0;
  double heat_cold = 0.0;
};

/// Finite-reservoir heat engine between tau_cold -> tau_less_cold (n copies)
/// and tau_hot -> tau_less_hot; quantities per copy of the cold reservoir.
EngineResult engine_efficiencies(const HamiltonianSpec& h, double beta_cold,
                                 double beta_less_cold, double beta_less_hot, double beta_hot);

}  // namespace thermocone
