#include "thermocone/protocol/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermocone::protocol {

void validate(const Distribution& p) {
  if (p.probabilities.empty()) throw ValidationError("empty", "distribution has no entries");
  if (!p.labels.empty() && p.labels.size() != p.size())
    throw ValidationError("dimension", "label count does not match the number of probabilities");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = p[i];
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream os;
      os << "probability " << i << " = " << v << " is not a finite nonnegative number";
      throw ValidationError("probability", os.str());
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << total << ", expected 1";
    throw ValidationError("normalization", os.str());
  }
}

Distribution make_distribution(std::vector<double> probabilities) {
  Distribution p{std::move(probabilities), {}};
  validate(p);
  return p;
}

double shannon_bits(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return std::max(h, 0.0);
}

RenyiReport renyi(const Distribution& p) {
  validate(p);
  double p_max = 0.0, p_min = 1.0;
  std::size_t support = 0;
  for (double v : p.probabilities) {
    if (v <= 0.0) continue;
    ++support;
    p_max = std::max(p_max, v);
    p_min = std::min(p_min, v);
  }
  if (support == 0) throw ValidationError("empty_support", "distribution has empty support");
  RenyiReport r;
  r.h_inf = -std::log2(p_max);
  r.h_1 = shannon_bits(p.probabilities);
  r.h_0 = std::log2(static_cast<double>(support));
  r.h_neg_inf = -std::log2(p_min);
  // Deterministic distributions give -0.0 here; normalise for printing.
  for (double* v : {&r.h_inf, &r.h_1, &r.h_0, &r.h_neg_inf})
    if (*v == 0.0) *v = 0.0;
  return r;
}

}  // namespace thermocone::protocol
