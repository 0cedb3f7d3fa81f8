#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "thermocone/numerics.hpp"

namespace thermocone {

struct EnergyLevel {
  double energy = 0.0;
  std::size_t degeneracy = 1;
};

/// A single-qudit Hamiltonian given by its spectrum: strictly ascending
/// energies with explicit degeneracies. The basis of matrix-form states is the
/// energy eigenbasis, ordered by ascending energy.
class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(std::vector<EnergyLevel> levels);

  /// Groups equal entries of an arbitrary list of diagonal energies.
  static HamiltonianSpec from_diagonal(std::vector<double> energies);

  const std::vector<EnergyLevel>& levels() const noexcept { return levels_; }
  std::size_t dimension() const noexcept { return dimension_; }
  double e_min() const noexcept { return levels_.front().energy; }
  double e_max() const noexcept { return levels_.back().energy; }
  double gap() const noexcept { return e_max() - e_min(); }
  std::size_t ground_degeneracy() const noexcept { return levels_.front().degeneracy; }
  std::size_t top_degeneracy() const noexcept { return levels_.back().degeneracy; }
  /// True when H is proportional to the identity (zero energy variance in every state).
  bool is_trivial() const noexcept { return levels_.size() == 1; }

  /// Energies of the basis states, length dimension().
  RealVector<double> diagonal() const;
  /// Index of the energy level each basis state belongs to.
  std::vector<std::size_t> level_of_basis() const;

  HamiltonianSpec shifted(double offset) const;

 private:
  std::vector<EnergyLevel> levels_;
  std::size_t dimension_ = 0;
};

/// Normalised macrostate: energy and entropy (nats) per copy.
struct Macrostate {
  double energy = 0.0;
  double entropy = 0.0;
};

/// Point (y_E, y_S, y_n) of the energy-entropy-size space.
struct ConePoint {
  double energy = 0.0;
  double entropy = 0.0;
  double size = 0.0;

  ConePoint& operator+=(const ConePoint& o) {
    energy += o.energy;
    entropy += o.entropy;
    size += o.size;
    return *this;
  }
  friend ConePoint operator+(ConePoint a, const ConePoint& b) { return a += b; }
  friend ConePoint operator-(const ConePoint& a, const ConePoint& b) {
    return {a.energy - b.energy, a.entropy - b.entropy, a.size - b.size};
  }
  friend ConePoint operator*(double s, const ConePoint& a) {
    return {s * a.energy, s * a.entropy, s * a.size};
  }
  friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

/// Density matrix in the energy eigenbasis.
struct MatrixForm {
  HermitianMatrix rho;
};

/// Spectrum of the density matrix together with its average energy.
struct SpectralForm {
  std::vector<double> eigenvalues;
  double energy = 0.0;
};

/// Bare macrostate; the state is known only up to asymptotic equivalence.
struct MacroForm {
  Macrostate macro;
};

/// A state on `copies` copies of the qudit (a nonnegative real "amount of
/// substance"); the representation describes a single copy.
struct QuantumState {
  std::variant<MatrixForm, SpectralForm, MacroForm> representation;
  double copies = 1.0;

  static QuantumState matrix(HermitianMatrix rho, double copies = 1.0) {
    return {MatrixForm{std::move(rho)}, copies};
  }
  static QuantumState spectral(std::vector<double> eigenvalues, double energy,
                               double copies = 1.0) {
    return {SpectralForm{std::move(eigenvalues), energy}, copies};
  }
  static QuantumState macro(Macrostate x, double copies = 1.0) { return {MacroForm{x}, copies}; }
};

/// Diagonal density matrix with the given populations.
HermitianMatrix diagonal_density(std::span<const double> populations);

QuantumState maximally_mixed(const HamiltonianSpec& h, double copies = 1.0);
/// Pure state on the first basis vector of level `level_index`.
QuantumState pure_level(const HamiltonianSpec& h, std::size_t level_index, double copies = 1.0);

/// Checks all representation invariants against `h`. Matrix form: Hermitian,
/// unit trace within 1e-10, eigenvalues >= -1e-10. Spectral form: entries in
/// [-1e-10, 1] summing to 1 within 1e-10; tiny negatives are clipped and the
/// list renormalised. Macro form: must lie in the energy-entropy diagram.
QuantumState validate_state(const QuantumState& s, const HamiltonianSpec& h);

/// Entropy in nats of a probability vector, with 0 log 0 = 0. Entries
/// slightly below zero are clipped and the vector renormalised.
double shannon_entropy_nats(std::span<const double> probabilities);

/// Energy and entropy per copy (validates first).
Macrostate macrostate_of(const QuantumState& s, const HamiltonianSpec& h);

/// y = n (x_E, x_S, 1).
ConePoint cone_point_of(const QuantumState& s, const HamiltonianSpec& h);
/// Cone point of the tensor product of the given states (sum of their points).
ConePoint cone_point_of(std::span<const QuantumState> factors, const HamiltonianSpec& h);

}  // namespace thermocone
