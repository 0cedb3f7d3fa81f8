#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "thermocone/protocol/distribution.hpp"

namespace thermocone::protocol {

/// `count` source atoms that all carry probability `weight`.
struct AtomGroup {
  double weight = 0.0;
  std::uint64_t count = 1;
};

/// `count` atoms of group `group` are sent to target `target`.
struct Allocation {
  std::size_t group = 0;
  std::size_t target = 0;
  std::uint64_t count = 0;
};

struct GreedyResult {
  std::vector<Allocation> allocations;
  std::vector<double> covered;             // pushforward mass per target
  std::vector<std::uint64_t> fiber_sizes;  // atoms of positive weight per target
};

/// Greedy coarse-graining: atoms are taken in group order and each goes to
/// the target with the largest remaining deficit q_y - covered(y). Deficits
/// are compared after rounding down to multiples of 2^-40, ties going to the
/// lowest target index, so equal targets fill in a stable round-robin order.
/// Runs of identical atoms are placed in batches: the leading target takes
/// atoms until its deficit falls below the runner-up's.
GreedyResult greedy_coarse_grain(std::span<const AtomGroup> groups, std::span<const double> targets);

struct CoarseGrainMap {
  std::vector<std::size_t> assignment;  // source index -> target index
  std::vector<std::size_t> fiber_sizes;
  Distribution pushforward;
};

struct CoarseGrainReport {
  CoarseGrainMap map;
  double distance = 0.0;     // total variation: sum_y max(0, f_*(p)_y - q_y)
  double l1_bound = 0.0;     // 2^{H_0(q) - H_inf(p)}
  double fiber_bound = 0.0;  // 2^{H_-inf(p)} (2^{-H_inf(q)} + 2^{-H_inf(p)})
  std::size_t max_fiber = 0;
  bool l1_holds = false;
  bool fiber_holds = false;
};

/// Total variation distance sum_i max(0, a_i - b_i) for normalised a, b.
double total_variation(std::span<const double> a, std::span<const double> b);

/// Map X -> Y from the greedy pass with one atom per source outcome, taken in
/// order of decreasing probability. q must have full support.
CoarseGrainReport build_coarse_graining(const Distribution& p, const Distribution& q);

}  // namespace thermocone::protocol
