#include "thermocone/protocol/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace thermocone::protocol {

namespace {
__extension__ using U128 = unsigned __int128;
}  // namespace

std::vector<std::pair<double, double>> typical_windows(const Distribution& p, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double spread = n > 1 ? std::sqrt(nn * std::log(nn)) : 0.0;
  std::vector<std::pair<double, double>> w;
  w.reserve(p.size());
  for (double pi : p.probabilities) w.emplace_back((nn - spread) * pi, (nn + spread) * pi);
  return w;
}

bool counts_typical(std::span<const std::size_t> counts,
                    std::span<const std::pair<double, double>> windows, std::size_t n) {
  const double slack = 1e-12 * static_cast<double>(std::max<std::size_t>(n, 1));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double k = static_cast<double>(counts[i]);
    if (k < windows[i].first - slack || k > windows[i].second + slack) return false;
  }
  return true;
}

std::uint64_t multinomial(std::span<const std::size_t> counts) {
  // Product of binomials C(k_1 + ... + k_i, k_i), each built incrementally.
  U128 result = 1;
  std::size_t total = 0;
  for (std::size_t k : counts) {
    for (std::size_t j = 1; j <= k; ++j) {
      ++total;
      result = result * total;
      if (result % j != 0) throw DomainError("overflow", "multinomial arithmetic failed");
      result /= j;
      if (result > std::numeric_limits<std::uint64_t>::max())
        throw DomainError("overflow", "multinomial coefficient exceeds 2^64");
    }
  }
  return static_cast<std::uint64_t>(result);
}

TypicalSet typical_set(const Distribution& p, std::size_t n, const TypicalSetOptions& options) {
  validate(p);
  if (n == 0) throw ValidationError("n", "typical sets need n >= 1");
  TypicalSet t;
  t.n = n;
  t.windows = typical_windows(p, n);

  for_each_type(n, p.size(), [&](const std::vector<std::size_t>& counts) {
    if (!counts_typical(counts, t.windows, n)) return;
    double prob = 1.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] > 0) prob *= std::pow(p[i], static_cast<double>(counts[i]));
    if (prob == 0.0) return;
    if (t.types.size() >= options.max_type_classes) {
      std::ostringstream os;
      os << "more than " << options.max_type_classes << " typical type classes";
      throw DomainError("cap_exceeded", os.str());
    }
    const std::uint64_t m = multinomial(counts);
    t.types.push_back({counts, m, prob});
    t.sequence_count += m;
    t.p_typ += static_cast<double>(m) * prob;
  });

  if (!t.empty()) {
    double p_max = 0.0, p_min = 1.0;
    for (const auto& c : t.types) {
      p_max = std::max(p_max, c.sequence_probability);
      p_min = std::min(p_min, c.sequence_probability);
    }
    t.h_inf = -std::log2(p_max / t.p_typ);
    t.h_0 = std::log2(static_cast<double>(t.sequence_count));
    t.h_neg_inf = -std::log2(p_min / t.p_typ);
  }
  return t;
}

TypicalityBounds typicality_bounds(const TypicalSet& t, const Distribution& p) {
  if (t.empty()) throw DomainError("empty_typical_set", "the typical set is empty");
  const double n = static_cast<double>(t.n);
  const double f = std::sqrt(std::log(n) / n);
  const double ns = n * shannon_bits(p.probabilities);
  TypicalityBounds b;
  b.h_inf = t.h_inf;
  b.h_0 = t.h_0;
  b.h_neg_inf = t.h_neg_inf;
  b.lower = ns * (1.0 - f);
  b.upper = ns * (1.0 + f);
  b.lower_holds = b.h_0 >= b.h_inf && b.h_inf >= b.lower;
  b.upper_holds = b.h_0 <= b.h_neg_inf && b.h_neg_inf <= b.upper;
  return b;
}

}  // namespace thermocone::protocol
