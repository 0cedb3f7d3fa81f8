#pragma once

#include <span>
#include <string>
#include <vector>

#include "thermocone/error.hpp"

namespace thermocone::protocol {

/// Finite probability vector. Labels are optional and only carried along.
struct Distribution {
  std::vector<double> probabilities;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return probabilities.size(); }
  double operator[](std::size_t i) const { return probabilities[i]; }
};

/// Entries finite and >= 0, sum 1 within 1e-12, labels empty or one per entry.
void validate(const Distribution& p);

/// Validates and wraps.
Distribution make_distribution(std::vector<double> probabilities);

/// Renyi entropies in bits; max/min are taken over the support only.
struct RenyiReport {
  double h_inf = 0.0;
  double h_1 = 0.0;
  double h_0 = 0.0;
  double h_neg_inf = 0.0;
};

RenyiReport renyi(const Distribution& p);

double shannon_bits(std::span<const double> p);

}  // namespace thermocone::protocol
