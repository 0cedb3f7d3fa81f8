#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "thermocone/protocol/distribution.hpp"

namespace thermocone::protocol {

/// All length-n sequences with symbol counts `counts`.
struct TypeClass {
  std::vector<std::size_t> counts;
  std::uint64_t multiplicity = 0;     // n! / prod counts_i!
  double sequence_probability = 0.0;  // prod p_i^{counts_i}
};

/// Strongly typical set of p^n: counts n_i within
/// [(n - sqrt(n ln n)) p_i, (n + sqrt(n ln n)) p_i] for every symbol.
struct TypicalSet {
  std::size_t n = 0;
  std::vector<std::pair<double, double>> windows;
  std::vector<TypeClass> types;  // ordered by descending counts vector
  std::uint64_t sequence_count = 0;
  double p_typ = 0.0;

  // Renyi entropies (bits) of the conditional distribution p_typ on T_p.
  double h_inf = 0.0;
  double h_0 = 0.0;
  double h_neg_inf = 0.0;

  bool empty() const noexcept { return types.empty(); }
};

struct TypicalSetOptions {
  std::size_t max_type_classes = 1'000'000;
};

/// Window test with a 1e-12 n slack against rounding of the endpoints.
bool counts_typical(std::span<const std::size_t> counts, std::span<const std::pair<double, double>> windows,
                    std::size_t n);

std::vector<std::pair<double, double>> typical_windows(const Distribution& p, std::size_t n);

/// n! / prod k_i!, exact; throws DomainError "overflow" past 2^64.
std::uint64_t multinomial(std::span<const std::size_t> counts);

/// Calls visit(counts) for every composition of n into d parts, in
/// descending lexicographic order of the counts vector.
template <typename Visit>
void for_each_type(std::size_t n, std::size_t d, Visit&& visit) {
  std::vector<std::size_t> counts(d, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t remaining) -> void {
    if (i + 1 == d) {
      counts[i] = remaining;
      visit(static_cast<const std::vector<std::size_t>&>(counts));
      return;
    }
    for (std::size_t k = remaining + 1; k-- > 0;) {
      counts[i] = k;
      self(self, i + 1, remaining - k);
    }
  };
  rec(rec, 0, n);
}

TypicalSet typical_set(const Distribution& p, std::size_t n, const TypicalSetOptions& options = {});

/// The four inequalities H_0 >= H_inf >= nS(1 - f) and H_0 <= H_-inf <= nS(1 + f)
/// with f = sqrt(ln n / n), evaluated on the conditional typical distribution.
struct TypicalityBounds {
  double h_inf = 0.0;
  double h_0 = 0.0;
  double h_neg_inf = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_holds = false;
  bool upper_holds = false;
};

TypicalityBounds typicality_bounds(const TypicalSet& t, const Distribution& p);

}  // namespace thermocone::protocol
