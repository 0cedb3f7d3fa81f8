#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "thermocone/error.hpp"

namespace thermocone::protocol {

/// Reduced fraction with positive denominator. Arithmetic that would not fit
/// in 64 bits throws DomainError "overflow".
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Parses "3", "-5/2" or a finite decimal such as "0.25".
  static Rational parse(const std::string& text);
  /// Nearest fraction with denominator <= max_den; throws ValidationError
  /// "not_rational" if it misses x by more than tol.
  static Rational from_double(double x, std::int64_t max_den = 1'000'000, double tol = 1e-12);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational abs(const Rational& r);

/// Sorted set of distinct rationals.
class LevelSet {
 public:
  LevelSet() = default;
  explicit LevelSet(std::vector<Rational> values);

  const std::vector<Rational>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  /// max |a| over the set (zero for the empty set).
  Rational norm() const;

  friend bool operator==(const LevelSet&, const LevelSet&) = default;

 private:
  std::vector<Rational> values_;
};

LevelSet minkowski_sum(const LevelSet& a, const LevelSet& b);
LevelSet minkowski_difference(const LevelSet& a, const LevelSet& b);
/// L + ... + L (k terms); k = 0 gives {0}.
LevelSet k_fold(const LevelSet& l, std::size_t k);

struct SumsetGrowthReport {
  std::vector<std::size_t> sizes;  // |kL| for k = 1..k
  double exponent = 0.0;           // least-squares slope of log|kL| against log k
  std::size_t k = 0;
  double ratio_sum = 0.0;         // |kL + L| / |kL|
  double ratio_difference = 0.0;  // |kL - L| / |kL|
};

/// Smallest k <= k_max with |kL + L| <= (1 + delta)|kL| and
/// |kL - L| <= (1 + delta)|kL|; DomainError "no_doubling_k" otherwise.
SumsetGrowthReport find_doubling_k(const LevelSet& l, double delta, std::size_t k_max);

/// Slope of the least-squares line through (log k, log sizes[k-1]).
double growth_exponent(const std::vector<std::size_t>& sizes);

}  // namespace thermocone::protocol
