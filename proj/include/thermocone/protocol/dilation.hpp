#pragma once

#include <string>

#include "thermocone/protocol/sumset.hpp"
#include "thermocone/system.hpp"

namespace thermocone::protocol {

struct DilationOptions {
  std::size_t max_dimension = 256;  // system dimension times ancilla dimension
  double coherence_tol = 1e-12;     // off-block entries below this count as zero
};

/// One application of the energy-preserving construction.
struct DilationStage {
  std::string mode;  // "case1" (target incoherent) or "case2" (input incoherent)
  std::size_t ancilla_dimension = 0;
  std::size_t total_dimension = 0;
  double residual = 0.0;               // largest entry of V~ or U~ across total energies
  double unitarity_error = 0.0;        // max |U~ U~^dag - 1|
  double support_weight = 0.0;         // Tr[V~ (rho x eta) V~^dag]
  double expected_support_weight = 0.0;  // |M| / |M -+ L|
};

struct DilationReport {
  std::string mode;  // "case1", "case2" or "two_step"
  std::vector<DilationStage> stages;
  std::size_t total_dimension = 0;
  double residual = 0.0;
  double distance = 0.0;  // trace norm of output - sigma
  double delta = 0.0;
  double precondition_distance = 0.0;  // || U rho U^dag - sigma ||_1
  HermitianMatrix output;
};

/// True if P_lambda m P_mu vanishes (within tol) for all distinct levels.
bool energy_incoherent(const HamiltonianSpec& h, const HermitianMatrix& m, double tol = 1e-12);

/// Sum of singular values.
double trace_norm(const HermitianMatrix& m);

/// Builds an energy-preserving unitary on system x ancilla that sends rho
/// close to sigma. Uses case 1 when sigma has no coherence across energy
/// levels, else case 2 when rho has none, else routes through the diagonal
/// state with rho's spectrum. Energies of h must be rationals.
DilationReport build_energy_preserving_dilation(const HamiltonianSpec& h, const HermitianMatrix& u,
                                                const QuantumState& rho, const QuantumState& sigma,
                                                const LevelSet& m, double delta,
                                                const DilationOptions& options = {});

}  // namespace thermocone::protocol
