#include "thermocone/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermocone {

namespace {

constexpr double kTangentThreshold = 1e-6;
constexpr double kEntropyEqual = 1e-12;

void require_nontrivial(const HamiltonianSpec& h) {
  if (h.is_trivial())
    throw DomainError("degenerate_hamiltonian",
                      "Hamiltonian is proportional to the identity; temperatures are undefined");
}

void require_finite(double beta, const char* name) {
  if (!std::isfinite(beta)) {
    std::ostringstream os;
    os << name << " must be finite, got " << beta;
    throw ValidationError("beta", os.str());
  }
}

}  // namespace

double beta_eff(const HamiltonianSpec& h, double beta1, double beta2) {
  require_nontrivial(h);
  require_finite(beta1, "beta1");
  require_finite(beta2, "beta2");
  const double scale = 1.0 + std::max(std::abs(beta1), std::abs(beta2));
  if (std::abs(beta1 - beta2) < kTangentThreshold * scale) return (beta1 + beta2) / 2.0;
  const auto t1 = thermal_point(h, beta1);
  const auto t2 = thermal_point(h, beta2);
  return (t1.entropy - t2.entropy) / (t1.energy - t2.energy);
}

double reservoir_ratio(const HamiltonianSpec& h, const ExchangeSpec& spec) {
  require_nontrivial(h);
  require_finite(spec.beta1, "beta1");
  require_finite(spec.beta2, "beta2");
  const auto x_rho = macrostate_of(spec.rho, h);
  const auto x_sigma = macrostate_of(spec.sigma, h);
  const double ds_system = x_sigma.entropy - x_rho.entropy;
  if (std::abs(ds_system) <= kEntropyEqual) return 0.0;

  const double ds_reservoir =
      thermal_point(h, spec.beta1).entropy - thermal_point(h, spec.beta2).entropy;
  if (ds_reservoir == 0.0 || (ds_system > 0) != (ds_reservoir > 0)) {
    std::ostringstream os;
    os << "S(sigma) - S(rho) = " << ds_system << " but S(tau_beta1) - S(tau_beta2) = "
       << ds_reservoir << "; the reservoir must "
       << (ds_system > 0 ? "give up" : "absorb")
       << " entropy, so choose beta2 with S(tau_beta2) "
       << (ds_system > 0 ? "below" : "above") << " S(tau_beta1)";
    throw DomainError("direction", os.str());
  }
  return ds_system / ds_reservoir;
}

ExchangeResult work_heat(const HamiltonianSpec& h, const ExchangeSpec& spec) {
  ExchangeResult out;
  out.m_over_n = reservoir_ratio(h, spec);
  const auto x_rho = macrostate_of(spec.rho, h);
  const auto x_sigma = macrostate_of(spec.sigma, h);
  out.beta_eff = beta_eff(h, spec.beta1, spec.beta2);

  const double de = x_rho.energy - x_sigma.energy;
  const double ds = x_rho.entropy - x_sigma.entropy;
  if (out.m_over_n == 0.0) {
    out.heat = 0.0;
    out.work = de;
    out.work_athermality = de;
  } else {
    out.heat = -ds / out.beta_eff;
    out.work = de - ds / out.beta_eff;
    out.work_athermality =
        (athermality(h, x_rho, out.beta_eff) - athermality(h, x_sigma, out.beta_eff)) /
        out.beta_eff;
  }
  out.ell_over_n = out.work / h.gap();
  out.battery_charging = out.ell_over_n >= 0.0;
  return out;
}

double erasure_work(const HamiltonianSpec& h, const QuantumState& rho, const QuantumState& sigma,
                    double beta1, double beta2) {
  require_nontrivial(h);
  const auto x_rho = macrostate_of(rho, h);
  const auto x_sigma = macrostate_of(sigma, h);
  if (std::abs(x_rho.energy - x_sigma.energy) > 1e-9 * h.gap()) {
    std::ostringstream os;
    os << "erasure needs equal energies, got E(rho) = " << x_rho.energy
       << " and E(sigma) = " << x_sigma.energy;
    throw DomainError("energy_mismatch", os.str());
  }
  const double ds = x_rho.entropy - x_sigma.entropy;
  if (ds == 0.0) return 0.0;
  return ds / beta_eff(h, beta1, beta2);
}

ReservoirEstimate reservoir_size_for_epsilon(const HamiltonianSpec& h, const QuantumState& rho,
                                             const QuantumState& sigma, double beta1,
                                             double epsilon) {
  require_nontrivial(h);
  require_finite(beta1, "beta1");
  if (!std::isfinite(epsilon) || epsilon == 0.0)
    throw ValidationError("epsilon", "epsilon must be finite and nonzero");
  const auto x_rho = macrostate_of(rho, h);
  const auto x_sigma = macrostate_of(sigma, h);
  const double ds = x_sigma.entropy - x_rho.entropy;
  if (std::abs(ds) <= kEntropyEqual) return {0.0, 0.0};
  const double var = energy_variance(h, beta1);
  if (var == 0.0 || beta1 == 0.0)
    throw DomainError("zero_variance", "beta1 * Var(H) vanishes; the expansion is undefined");
  ReservoirEstimate out;
  out.leading = ds / (beta1 * var * epsilon);
  out.exact = reservoir_ratio(h, {rho, sigma, beta1, beta1 + epsilon});
  return out;
}

EngineResult engine_efficiencies(const HamiltonianSpec& h, double beta_cold,
                                 double beta_less_cold, double beta_less_hot, double beta_hot) {
  require_nontrivial(h);
  for (double b : {beta_cold, beta_less_cold, beta_less_hot, beta_hot}) require_finite(b, "beta");
  if (!(beta_cold > beta_less_cold && beta_less_cold > beta_less_hot &&
        beta_less_hot > beta_hot)) {
    std::ostringstream os;
    os << "need beta_cold > beta_less_cold > beta_less_hot > beta_hot, got " << beta_cold
       << ", " << beta_less_cold << ", " << beta_less_hot << ", " << beta_hot;
    throw DomainError("ordering", os.str());
  }
  const double b_cold = beta_eff(h, beta_cold, beta_less_cold);
  const double b_hot = beta_eff(h, beta_hot, beta_less_hot);
  const auto tc = thermal_point(h, beta_cold);
  const auto tlc = thermal_point(h, beta_less_cold);

  EngineResult out;
  out.eta_engine = 1.0 - b_hot / b_cold;
  out.eta_refrigerator = 1.0 / (b_cold / b_hot - 1.0);
  out.heat_hot = (tlc.entropy - tc.entropy) / b_hot;
  out.work = (tc.energy - tlc.energy) - (tc.entropy - tlc.entropy) / b_hot;
  out.heat_cold = tlc.energy - tc.energy;
  return out;
}

}  // namespace thermocone
