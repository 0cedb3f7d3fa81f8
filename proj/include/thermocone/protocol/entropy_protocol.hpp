#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thermocone/protocol/coarse_graining.hpp"
#include "thermocone/protocol/typicality.hpp"

namespace thermocone::protocol {

struct ProtocolOptions {
  std::optional<std::size_t> ancilla_bits;  // default: round(3 sqrt(n log2 n) H(p))
  double entropy_tolerance = 1e-3;          // bits
  std::uint64_t max_atoms = std::uint64_t{1} << 24;
  TypicalSetOptions typical;
};

struct ProtocolReport {
  std::size_t n = 0;
  std::size_t ancilla_bits = 0;
  double entropy_p = 0.0;  // bits per symbol
  double entropy_q = 0.0;
  double p_typ = 0.0;
  double q_typ = 0.0;
  std::uint64_t typical_sources = 0;  // |T_p|
  std::uint64_t typical_targets = 0;  // |T_q|
  /// Total variation between the protocol output and q^n. Typical inputs go
  /// through the coarse-graining map; atypical inputs are left in place.
  double distance = 0.0;
  /// Total variation between f_*(p_typ x r_1) and q_typ, and its lemma bound.
  double typical_distance = 0.0;
  double lemma_bound = 0.0;
  /// Register ancilla: largest fibre and the fibre-size bound.
  std::uint64_t max_fiber = 0;
  double fiber_bound = 0.0;
  std::vector<std::string> warnings;
};

std::size_t default_ancilla_bits(std::size_t n, double entropy_bits);

/// Classical entropy-conversion protocol p^n -> q^n on the typical sets,
/// with uniform ancilla bits. p and q live on the same alphabet and must have
/// equal Shannon entropy within options.entropy_tolerance.
ProtocolReport run_entropy_protocol(const Distribution& p, const Distribution& q, std::size_t n,
                                    const ProtocolOptions& options = {});

}  // namespace thermocone::protocol
