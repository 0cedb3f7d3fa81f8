#include "thermocone/protocol/entropy_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace thermocone::protocol {

namespace {

double sequence_probability(const Distribution& p, const std::vector<std::size_t>& counts) {
  double prob = 1.0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0) prob *= std::pow(p[i], static_cast<double>(counts[i]));
  return prob;
}

}  // namespace

std::size_t default_ancilla_bits(std::size_t n, double entropy_bits) {
  if (n <= 1) return 0;
  const double nn = static_cast<double>(n);
  return static_cast<std::size_t>(std::llround(3.0 * std::sqrt(nn * std::log2(nn)) * entropy_bits));
}

ProtocolReport run_entropy_protocol(const Distribution& p, const Distribution& q, std::size_t n,
                                    const ProtocolOptions& options) {
  validate(p);
  validate(q);
  if (p.size() != q.size())
    throw ValidationError("dimension", "p and q must be defined on the same alphabet");
  if (n == 0) throw ValidationError("n", "the protocol needs n >= 1");
  if (!(options.entropy_tolerance >= 0.0))
    throw ValidationError("tolerance", "entropy tolerance must be >= 0");

  ProtocolReport r;
  r.n = n;
  r.entropy_p = shannon_bits(p.probabilities);
  r.entropy_q = shannon_bits(q.probabilities);
  const double gap = std::abs(r.entropy_p - r.entropy_q);
  if (gap > options.entropy_tolerance) {
    std::ostringstream os;
    os << "H(p) = " << r.entropy_p << " and H(q) = " << r.entropy_q << " bits differ by " << gap
       << ", above the tolerance " << options.entropy_tolerance;
    throw DomainError("entropy_mismatch", os.str());
  }
  if (gap > 1e-6) {
    std::ostringstream os;
    os << "entropies differ by " << gap << " bits";
    r.warnings.push_back(os.str());
  }

  r.ancilla_bits = options.ancilla_bits.value_or(default_ancilla_bits(n, r.entropy_p));
  if (r.ancilla_bits >= 62) throw DomainError("cap_exceeded", "too many ancilla bits");

  const auto tp = typical_set(p, n, options.typical);
  const auto tq = typical_set(q, n, options.typical);
  if (tp.empty() || tq.empty()) {
    std::ostringstream os;
    os << "the strongly typical set of " << (tp.empty() ? "p" : "q") << " is empty at n = " << n;
    throw DomainError("empty_typical_set", os.str());
  }
  r.p_typ = tp.p_typ;
  r.q_typ = tq.p_typ;
  r.typical_sources = tp.sequence_count;
  r.typical_targets = tq.sequence_count;

  const std::uint64_t ancilla_values = std::uint64_t{1} << r.ancilla_bits;
  if (tp.sequence_count > options.max_atoms / ancilla_values ||
      tq.sequence_count > options.max_atoms) {
    std::ostringstream os;
    os << "|T_p| * 2^bits = " << tp.sequence_count << " * 2^" << r.ancilla_bits
       << " exceeds the enumeration cap " << options.max_atoms;
    throw DomainError("cap_exceeded", os.str());
  }

  // Sources: one group per typical type class, largest atoms first.
  std::vector<std::size_t> order(tp.types.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tp.types[a].sequence_probability > tp.types[b].sequence_probability;
  });
  const double anc = static_cast<double>(ancilla_values);
  std::vector<AtomGroup> groups;
  groups.reserve(order.size());
  for (std::size_t i : order)
    groups.push_back({tp.types[i].sequence_probability / (tp.p_typ * anc),
                      tp.types[i].multiplicity * ancilla_values});

  // Targets: every sequence of T_q, grouped by type class.
  std::vector<double> targets;
  targets.reserve(tq.sequence_count);
  for (const auto& c : tq.types)
    targets.insert(targets.end(), c.multiplicity, c.sequence_probability / tq.p_typ);

  const auto g = greedy_coarse_grain(groups, targets);

  r.typical_distance = total_variation(g.covered, targets);
  const double h_inf_src = tp.h_inf + static_cast<double>(r.ancilla_bits);
  const double h_neg_inf_src = tp.h_neg_inf + static_cast<double>(r.ancilla_bits);
  r.lemma_bound = std::exp2(tq.h_0 - h_inf_src);
  r.fiber_bound = std::exp2(h_neg_inf_src) * (std::exp2(-tq.h_inf) + std::exp2(-h_inf_src));
  r.max_fiber = *std::max_element(g.fiber_sizes.begin(), g.fiber_sizes.end());

  // Distance over all of Y^n, walking type classes in the enumeration order
  // shared with typical_set.
  double l1 = 0.0;
  std::size_t q_cursor = 0;
  std::size_t target_offset = 0;
  for_each_type(n, p.size(), [&](const std::vector<std::size_t>& counts) {
    const double pp = sequence_probability(p, counts);
    const double qq = sequence_probability(q, counts);
    const bool in_p = pp > 0.0 && counts_typical(counts, tp.windows, n);
    const double left_in_place = in_p ? 0.0 : pp;
    if (q_cursor < tq.types.size() && tq.types[q_cursor].counts == counts) {
      const std::uint64_t m = tq.types[q_cursor].multiplicity;
      for (std::uint64_t k = 0; k < m; ++k)
        l1 += std::abs(tp.p_typ * g.covered[target_offset + k] + left_in_place - qq);
      target_offset += m;
      ++q_cursor;
    } else if (pp > 0.0 || qq > 0.0) {
      l1 += static_cast<double>(multinomial(counts)) * std::abs(left_in_place - qq);
    }
  });
  r.distance = 0.5 * l1;
  return r;
}

}  // namespace thermocone::protocol
