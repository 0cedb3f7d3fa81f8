#include "thermocone/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermocone {

namespace {

// Width of the final beta bracket, in units of 750/(E_max - E_min). This
// pins E(tau_beta) far below 1e-10.
constexpr double kBetaResolution = 1e-15;

double beta_resolution(const HamiltonianSpec& h) { return kBetaResolution * 750.0 / h.gap(); }

double log_d(const HamiltonianSpec& h) { return std::log(static_cast<double>(h.dimension())); }

struct Moments {
  ShiftedLogPartition lz;
  double energy;
  double variance;
};

Moments moments(const HamiltonianSpec& h, double beta) {
  const auto& levels = h.levels();
  const double shift = beta >= 0 ? h.e_min() : h.e_max();
  double z = 0.0, first = 0.0;
  for (const auto& lv : levels) {
    const double w = static_cast<double>(lv.degeneracy) * std::exp(-beta * (lv.energy - shift));
    z += w;
    first += w * (lv.energy - shift);
  }
  const double mean_shifted = first / z;
  double second = 0.0;
  for (const auto& lv : levels) {
    const double w = static_cast<double>(lv.degeneracy) * std::exp(-beta * (lv.energy - shift));
    const double dev = lv.energy - shift - mean_shifted;
    second += w * dev * dev;
  }
  return {{shift, std::log(z)}, shift + mean_shifted, second / z};
}

void require_finite_beta(double beta) {
  if (std::isnan(beta)) throw ValidationError("beta", "beta must not be NaN");
}

}  // namespace

double beta_cap(const HamiltonianSpec& h) {
  if (h.is_trivial()) return kInfinity;
  double spacing = h.gap();
  const auto& lv = h.levels();
  for (std::size_t i = 1; i < lv.size(); ++i) spacing = std::min(spacing, lv[i].energy - lv[i - 1].energy);
  return 750.0 / spacing;
}

ShiftedLogPartition shifted_log_partition(const HamiltonianSpec& h, double beta) {
  require_finite_beta(beta);
  if (std::isinf(beta)) {
    const auto& lv = beta > 0 ? h.levels().front() : h.levels().back();
    return {lv.energy, std::log(static_cast<double>(lv.degeneracy))};
  }
  return moments(h, beta).lz;
}

std::vector<double> thermal_level_populations(const HamiltonianSpec& h, double beta) {
  require_finite_beta(beta);
  const auto& levels = h.levels();
  std::vector<double> out(levels.size(), 0.0);
  if (std::isinf(beta)) {
    out[beta > 0 ? 0 : levels.size() - 1] = 1.0;
    return out;
  }
  const auto lz = shifted_log_partition(h, beta);
  for (std::size_t i = 0; i < levels.size(); ++i)
    out[i] = static_cast<double>(levels[i].degeneracy) *
             std::exp(-beta * (levels[i].energy - lz.shift) - lz.log_z_shifted);
  return out;
}

ThermalPoint thermal_point(const HamiltonianSpec& h, double beta) {
  require_finite_beta(beta);
  if (std::isinf(beta)) {
    const bool ground = beta > 0;
    const auto& lv = ground ? h.levels().front() : h.levels().back();
    const double log_g = std::log(static_cast<double>(lv.degeneracy));
    // log Z = -beta E + log g diverges unless the plateau energy is zero.
    double log_z = log_g;
    if (lv.energy != 0.0) log_z = (ground ? -1.0 : 1.0) * (lv.energy > 0 ? 1.0 : -1.0) * kInfinity;
    return {beta, log_z, lv.energy, log_g};
  }
  const auto m = moments(h, beta);
  double entropy = beta * (m.energy - m.lz.shift) + m.lz.log_z_shifted;
  entropy = std::clamp(entropy, 0.0, log_d(h));
  return {beta, m.lz.log_z(beta), m.energy, entropy};
}

double energy_variance(const HamiltonianSpec& h, double beta) {
  require_finite_beta(beta);
  if (std::isinf(beta) || h.is_trivial()) return 0.0;
  return std::max(moments(h, beta).variance, 0.0);
}

double beta_from_energy(const HamiltonianSpec& h, double energy) {
  if (h.is_trivial())
    throw DomainError("degenerate_hamiltonian",
                      "Hamiltonian is proportional to the identity; beta is undefined");
  if (!(energy > h.e_min() && energy < h.e_max())) {
    std::ostringstream os;
    os << "energy " << energy << " is outside the open interval (" << h.e_min() << ", "
       << h.e_max() << ")";
    throw DomainError("range", os.str());
  }
  const double cap = beta_cap(h);
  auto f = [&](double b) { return moments(h, b).energy - energy; };
  // E(tau_beta) decreases in beta.
  if (f(cap) >= 0.0) return kInfinity;
  if (f(-cap) <= 0.0) return -kInfinity;
  return solve_root_bracketed<double>(f, {-cap, cap, beta_resolution(h)});
}

double beta_from_entropy(const HamiltonianSpec& h, double entropy, BetaBranch branch) {
  const bool positive = branch == BetaBranch::Positive;
  const auto& edge = positive ? h.levels().front() : h.levels().back();
  const double floor = std::log(static_cast<double>(edge.degeneracy));
  const double top = log_d(h);
  if (!std::isfinite(entropy) || entropy > top + 1e-12) {
    std::ostringstream os;
    os << "entropy " << entropy << " exceeds log d = " << top;
    throw DomainError("range", os.str());
  }
  if (entropy <= floor) {
    std::ostringstream os;
    os << "entropy " << entropy << " is at or below the " << (positive ? "ground" : "top")
       << "-level plateau log g = " << floor;
    throw DomainError("boundary", os.str());
  }
  if (entropy >= top) return 0.0;

  const double cap = beta_cap(h);
  const double sign = positive ? 1.0 : -1.0;
  // S(tau_beta) decreases in |beta| on each branch.
  auto f = [&](double b) { return thermal_point(h, sign * b).entropy - entropy; };
  if (f(cap) >= 0.0) return sign * kInfinity;
  return sign * solve_root_bracketed<double>(f, {0.0, cap, beta_resolution(h)});
}

}  // namespace thermocone
