#pragma once

#include <span>
#include <vector>

#include "thermocone/system.hpp"
#include "thermocone/thermal.hpp"

namespace thermocone {

/// A_beta(x) = beta x_E - x_S + log Z_beta, evaluated in shifted form so that
/// it stays finite for large |beta|.
double athermality(const HamiltonianSpec& h, const Macrostate& x, double beta);
/// Homogeneous version: beta y_E - y_S + y_n log Z_beta.
double athermality(const HamiltonianSpec& h, const ConePoint& y, double beta);

/// Upper boundary of the diagram: S(tau_beta) at the energy E.
double max_entropy_at_energy(const HamiltonianSpec& h, double energy);

enum class Membership { Inside, Boundary, Outside };

inline bool is_member(Membership m) { return m != Membership::Outside; }
const char* to_string(Membership m);

/// Boundary test: E_min <= x_E <= E_max and 0 <= x_S <= S_max(x_E).
/// Points within `tol` of any of these bounds are reported as Boundary.
Membership diagram_contains(const HamiltonianSpec& h, const Macrostate& x, double tol = 1e-9);

enum class Facet { Entropy, Athermality, GroundEdge, TopEdge };
const char* to_string(Facet f);

/// Smallest facet slack and where it is attained. `beta` is meaningful only
/// for the Athermality facet.
struct FacetSlack {
  double slack = 0.0;
  Facet facet = Facet::Entropy;
  double beta = 0.0;
};

/// Facet form of the diagram on a fixed beta grid: min over x_S, the two
/// energy-edge monotones and A_beta(x) for grid betas, with golden-section
/// refinement around the best grid beta. log Z is precomputed per grid point
/// so that many macrostates can be checked cheaply.
class FacetGrid {
 public:
  FacetGrid(const HamiltonianSpec& h, std::vector<double> betas, double refine_tol = 1e-10);

  FacetSlack check(const Macrostate& x) const;

 private:
  HamiltonianSpec h_;
  std::vector<double> betas_;
  std::vector<ShiftedLogPartition> partitions_;
  double refine_tol_;
};

FacetSlack facet_check(const HamiltonianSpec& h, const Macrostate& x,
                       std::span<const double> beta_grid);

/// A normalised macrostate together with its amount of substance n.
struct WeightedMacrostate {
  Macrostate macro;
  double copies = 1.0;
};

/// n-weighted convex combination; the result carries n_total.
WeightedMacrostate combine_macrostates(std::span<const WeightedMacrostate> parts);

struct DecompositionWeights {
  double c_beta = 0.0;
  double c_min = 0.0;
  double c_max = 0.0;
};

/// Writes x as c_beta x(tau_beta) + c_min x(|E_min>) + c_max x(|E_max>).
/// Throws DomainError "infeasible" if a weight is negative, naming it.
DecompositionWeights decompose(const HamiltonianSpec& h, const Macrostate& x, double beta);

/// Maximal work per copy extractable with no reservoir: x_E - E(tau_b) where
/// S(tau_b) = x_S, b >= 0; x_E - E_min once x_S <= log g_0.
double w_max(const HamiltonianSpec& h, const Macrostate& x);
double w_max(const HamiltonianSpec& h, const QuantumState& s);

/// `samples` thermal points at equally spaced beta in [beta_min, beta_max].
std::vector<ThermalPoint> sample_thermal_curve(const HamiltonianSpec& h, double beta_min,
                                               double beta_max, std::size_t samples);

}  // namespace thermocone
