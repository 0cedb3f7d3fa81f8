#include "thermocone/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermocone {

namespace {

double log_count(std::size_t g) { return std::log(static_cast<double>(g)); }

}  // namespace

double athermality(const HamiltonianSpec& h, const Macrostate& x, double beta) {
  const auto lz = shifted_log_partition(h, beta);
  return beta * (x.energy - lz.shift) - x.entropy + lz.log_z_shifted;
}

double athermality(const HamiltonianSpec& h, const ConePoint& y, double beta) {
  const auto lz = shifted_log_partition(h, beta);
  return beta * (y.energy - y.size * lz.shift) - y.entropy + y.size * lz.log_z_shifted;
}

double max_entropy_at_energy(const HamiltonianSpec& h, double energy) {
  if (!(energy >= h.e_min() && energy <= h.e_max())) {
    std::ostringstream os;
    os << "energy " << energy << " is outside [" << h.e_min() << ", " << h.e_max() << "]";
    throw DomainError("range", os.str());
  }
  if (h.is_trivial()) return log_count(h.dimension());
  if (energy == h.e_min()) return log_count(h.ground_degeneracy());
  if (energy == h.e_max()) return log_count(h.top_degeneracy());
  const double beta = beta_from_energy(h, energy);
  return thermal_point(h, beta).entropy;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "inside";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
  }
  return "outside";
}

const char* to_string(Facet f) {
  switch (f) {
    case Facet::Entropy: return "entropy";
    case Facet::Athermality: return "athermality";
    case Facet::GroundEdge: return "ground_edge";
    case Facet::TopEdge: return "top_edge";
  }
  return "entropy";
}

Membership diagram_contains(const HamiltonianSpec& h, const Macrostate& x, double tol) {
  if (!(tol >= 0.0)) throw ValidationError("tolerance", "membership tolerance must be >= 0");
  const double e = x.energy, s = x.entropy;
  if (!std::isfinite(e) || !std::isfinite(s)) return Membership::Outside;
  if (e < h.e_min() - tol || e > h.e_max() + tol || s < -tol) return Membership::Outside;
  const double s_max = max_entropy_at_energy(h, std::clamp(e, h.e_min(), h.e_max()));
  if (s > s_max + tol) return Membership::Outside;
  const bool near = std::abs(s) <= tol || std::abs(s - s_max) <= tol ||
                    std::abs(e - h.e_min()) <= tol || std::abs(e - h.e_max()) <= tol;
  return near ? Membership::Boundary : Membership::Inside;
}

FacetGrid::FacetGrid(const HamiltonianSpec& h, std::vector<double> betas, double refine_tol)
    : h_(h), betas_(std::move(betas)), refine_tol_(refine_tol) {
  if (betas_.empty()) throw ValidationError("grid", "facet grid needs at least one beta");
  for (double b : betas_)
    if (!std::isfinite(b)) throw ValidationError("grid", "facet grid betas must be finite");
  std::sort(betas_.begin(), betas_.end());
  betas_.erase(std::unique(betas_.begin(), betas_.end()), betas_.end());
  partitions_.reserve(betas_.size());
  for (double b : betas_) partitions_.push_back(shifted_log_partition(h_, b));
}

FacetSlack FacetGrid::check(const Macrostate& x) const {
  FacetSlack best{x.entropy, Facet::Entropy, 0.0};
  const double ground = x.energy - h_.e_min();
  const double top = h_.e_max() - x.energy;
  if (ground < best.slack) best = {ground, Facet::GroundEdge, kInfinity};
  if (top < best.slack) best = {top, Facet::TopEdge, -kInfinity};

  std::size_t arg = 0;
  double value = kInfinity;
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    const auto& lz = partitions_[i];
    const double a = betas_[i] * (x.energy - lz.shift) - x.entropy + lz.log_z_shifted;
    if (a < value) {
      value = a;
      arg = i;
    }
  }
  double arg_beta = betas_[arg];
  if (betas_.size() >= 3) {
    // A_beta(x) is convex in beta (log Z is), so the neighbouring cells hold the minimum.
    const double lo = betas_[arg == 0 ? 0 : arg - 1];
    const double hi = betas_[std::min(arg + 1, betas_.size() - 1)];
    const auto refined = golden_section_minimize<double>(
        [&](double b) { return athermality(h_, x, b); }, lo, hi, refine_tol_);
    if (refined.minimum < value) {
      value = refined.minimum;
      arg_beta = refined.argmin;
    }
  }
  if (value < best.slack) best = {value, Facet::Athermality, arg_beta};
  return best;
}

FacetSlack facet_check(const HamiltonianSpec& h, const Macrostate& x,
                       std::span<const double> beta_grid) {
  return FacetGrid(h, std::vector<double>(beta_grid.begin(), beta_grid.end())).check(x);
}

WeightedMacrostate combine_macrostates(std::span<const WeightedMacrostate> parts) {
  if (parts.empty()) throw ValidationError("empty", "cannot combine an empty list of macrostates");
  double n = 0.0, e = 0.0, s = 0.0;
  for (const auto& p : parts) {
    if (!(p.copies > 0.0) || !std::isfinite(p.copies))
      throw ValidationError("copies", "every part needs a positive finite copy count");
    n += p.copies;
    e += p.copies * p.macro.energy;
    s += p.copies * p.macro.entropy;
  }
  return {{e / n, s / n}, n};
}

DecompositionWeights decompose(const HamiltonianSpec& h, const Macrostate& x, double beta) {
  if (diagram_contains(h, x) == Membership::Outside) {
    std::ostringstream os;
    os << "macrostate (" << x.energy << ", " << x.entropy << ") is outside the diagram";
    throw ValidationError("not_in_diagram", os.str());
  }
  const auto t = thermal_point(h, beta);
  Eigen::Matrix3d a;
  a << t.energy, h.e_min(), h.e_max(),
       t.entropy, 0.0, 0.0,
       1.0, 1.0, 1.0;
  const Eigen::Vector3d rhs(x.energy, x.entropy, 1.0);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
  lu.setThreshold(1e-12);
  if (lu.rank() < 3) {
    std::ostringstream os;
    os << "thermal point at beta=" << beta
       << " and the two pure energy eigenstates are affinely dependent";
    throw DomainError("singular", os.str());
  }
  const Eigen::Vector3d c = lu.solve(rhs);
  const char* names[] = {"c_beta", "c_min", "c_max"};
  for (int i = 0; i < 3; ++i) {
    if (c(i) < -1e-12) {
      std::ostringstream os;
      os << "weight " << names[i] << " = " << c(i) << " is negative; beta=" << beta
         << " cannot decompose this macrostate";
      throw DomainError("infeasible", os.str());
    }
  }
  return {c(0), c(1), c(2)};
}

double w_max(const HamiltonianSpec& h, const Macrostate& x) {
  if (diagram_contains(h, x) == Membership::Outside) {
    std::ostringstream os;
    os << "macrostate (" << x.energy << ", " << x.entropy << ") is outside the diagram";
    throw ValidationError("not_in_diagram", os.str());
  }
  const double entropy = std::min(x.entropy, log_count(h.dimension()));
  if (entropy <= log_count(h.ground_degeneracy())) return x.energy - h.e_min();
  const double beta = beta_from_entropy(h, entropy, BetaBranch::Positive);
  // Members sit at or above the positive-beta branch; clamp rounding noise.
  return std::max(0.0, x.energy - thermal_point(h, beta).energy);
}

double w_max(const HamiltonianSpec& h, const QuantumState& s) {
  return w_max(h, macrostate_of(s, h));
}

std::vector<ThermalPoint> sample_thermal_curve(const HamiltonianSpec& h, double beta_min,
                                               double beta_max, std::size_t samples) {
  if (samples == 0) throw ValidationError("samples", "need at least one sample");
  if (!(beta_min <= beta_max) || std::isnan(beta_min) || std::isnan(beta_max))
    throw ValidationError("beta_range", "beta_min must not exceed beta_max");
  std::vector<ThermalPoint> out;
  out.reserve(samples);
  for (double b : linspace<double>(beta_min, beta_max, samples)) out.push_back(thermal_point(h, b));
  return out;
}

}  // namespace thermocone
