#include "thermocone/protocol/sumset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace thermocone::protocol {

namespace {

__extension__ using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw DomainError("overflow", "rational arithmetic overflowed 64 bits");
  return static_cast<std::int64_t>(v);
}

Wide gcd_wide(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(Wide num, Wide den) {
  if (den == 0) throw ValidationError("rational", "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ValidationError("rational", "zero denominator");
  Wide n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const Wide g = gcd_wide(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

Rational Rational::parse(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw ValidationError("rational", "cannot parse '" + text + "' as a rational number");
  };
  if (text.empty()) return fail();
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != s.size()) fail();
    return v;
  };
  if (slash != std::string::npos)
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_int(text));
  const std::string frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 18 || !std::all_of(frac.begin(), frac.end(), ::isdigit))
    return fail();
  std::string whole = text.substr(0, dot);
  const bool negative = !whole.empty() && whole[0] == '-';
  if (whole.empty() || whole == "-" || whole == "+") whole += "0";
  Wide den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const Wide magnitude = static_cast<Wide>(std::abs(parse_int(whole))) * den + parse_int(frac);
  return make(negative ? -magnitude : magnitude, den);
}

Rational Rational::from_double(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) throw ValidationError("not_rational", "value is not finite");
  // Continued-fraction convergents.
  Wide h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (std::abs(a) > 9.0e15) break;
    const Wide ai = static_cast<Wide>(a);
    const Wide h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol * std::max(1.0, std::abs(x)) * 1e-3)
      break;
    const double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  if (k1 == 0 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "energy " << x << " is not a rational with denominator <= " << max_den;
    throw ValidationError("not_rational", os.str());
  }
  return make(h1, k1);
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
              static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a) { return make(-static_cast<Wide>(a.num_), a.den_); }

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Wide l = static_cast<Wide>(a.num_) * b.den_;
  const Wide r = static_cast<Wide>(b.num_) * a.den_;
  return l < r ? std::strong_ordering::less
               : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

LevelSet::LevelSet(std::vector<Rational> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

Rational LevelSet::norm() const {
  Rational best(0);
  for (const auto& v : values_) best = std::max(best, abs(v));
  return best;
}

LevelSet minkowski_sum(const LevelSet& a, const LevelSet& b) {
  std::vector<Rational> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.values())
    for (const auto& y : b.values()) out.push_back(x + y);
  return LevelSet(std::move(out));
}

LevelSet minkowski_difference(const LevelSet& a, const LevelSet& b) {
  std::vector<Rational> neg;
  neg.reserve(b.size());
  for (const auto& y : b.values()) neg.push_back(-y);
  return minkowski_sum(a, LevelSet(std::move(neg)));
}

LevelSet k_fold(const LevelSet& l, std::size_t k) {
  LevelSet acc(std::vector<Rational>{Rational(0)});
  for (std::size_t i = 0; i < k; ++i) acc = minkowski_sum(acc, l);
  return acc;
}

double growth_exponent(const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(static_cast<double>(sizes[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

SumsetGrowthReport find_doubling_k(const LevelSet& l, double delta, std::size_t k_max) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta", "delta must lie in (0, 1)");
  if (l.empty()) throw ValidationError("empty", "level set is empty");
  if (k_max == 0) throw ValidationError("k_max", "k_max must be >= 1");
  SumsetGrowthReport report;
  LevelSet kl = l;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) kl = minkowski_sum(kl, l);
    report.sizes.push_back(kl.size());
    const double base = static_cast<double>(kl.size());
    const double plus = static_cast<double>(minkowski_sum(kl, l).size());
    const double minus = static_cast<double>(minkowski_difference(kl, l).size());
    const double bound = (1.0 + delta) * base * (1.0 + 1e-12);
    if (plus <= bound && minus <= bound) {
      report.k = k;
      report.ratio_sum = plus / base;
      report.ratio_difference = minus / base;
      report.exponent = growth_exponent(report.sizes);
      return report;
    }
  }
  std::ostringstream os;
  os << "no k <= " << k_max << " satisfies the doubling condition with delta = " << delta;
  throw DomainError("no_doubling_k", os.str());
}

}  // namespace thermocone::protocol
