#include "thermocone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermocone {

namespace {

struct Candidate {
  double value = kInfinity;
  Facet facet = Facet::Entropy;
  double beta = 0.0;

  void offer(double v, Facet f, double b) {
    if (!std::isnan(v) && v < value) *this = {v, f, b};
  }
};

bool finite_point(const ConePoint& y) {
  return std::isfinite(y.energy) && std::isfinite(y.entropy) && std::isfinite(y.size);
}

// inf over beta of A_beta(rho)/A_beta(sigma) where A_beta(sigma) > threshold.
void athermality_ratio(const HamiltonianSpec& h, const ConePoint& rho, const ConePoint& sigma,
                       double threshold, const RateOptions& opt, Candidate& best) {
  auto ratio_at = [&](double beta) {
    const double den = athermality(h, sigma, beta);
    if (!(den > threshold)) return std::nan("");
    return athermality(h, rho, beta) / den;
  };

  if (h.is_trivial()) {
    // Every beta gives the same monotone, log d - x_S per copy.
    best.offer(ratio_at(0.0), Facet::Athermality, 0.0);
    return;
  }

  // beta = sinh(u) / gap out to beta_cap, so near-degenerate spectra still
  // resolve their large-beta facets.
  const double gap = h.gap();
  const double umax = std::asinh(beta_cap(h) * gap);
  auto beta_of_u = [gap](double u) { return std::sinh(u) / gap; };

  const std::size_t n = std::max({opt.grid_points, std::size_t{3},
                                  static_cast<std::size_t>(2.0 * umax / 0.005) + 1});
  const auto grid = linspace<double>(-umax, umax, n);
  try {
    const auto m = minimize_scalar<double>([&](double u) { return ratio_at(beta_of_u(u)); }, grid,
                                           opt.refine_tol);
    best.offer(m.minimum, Facet::Athermality, beta_of_u(m.argmin));
  } catch (const DomainError&) {
    // Every grid beta had a vanishing denominator.
  }
}

}  // namespace

Membership cone_contains(const HamiltonianSpec& h, const ConePoint& y, double tol) {
  if (!(tol >= 0.0)) throw ValidationError("tolerance", "membership tolerance must be >= 0");
  if (!finite_point(y)) return Membership::Outside;
  if (y.size < -tol) return Membership::Outside;
  if (y.size <= tol)
    return std::abs(y.entropy) <= tol && std::abs(y.energy) <= tol ? Membership::Boundary
                                                                   : Membership::Outside;
  const Macrostate x{y.energy / y.size, y.entropy / y.size};
  return diagram_contains(h, x, tol / y.size);
}

EdgeMonotones edge_monotones(const HamiltonianSpec& h, const ConePoint& y) {
  return {y.energy - y.size * h.e_min(), y.size * h.e_max() - y.energy};
}

bool dominates(const HamiltonianSpec& h, const ConePoint& y_rho, const ConePoint& y_sigma,
               double tol) {
  return is_member(cone_contains(h, y_rho - y_sigma, tol));
}

RateResult r_max(const HamiltonianSpec& h, const ConePoint& y_rho, const ConePoint& y_sigma,
                 const RateOptions& opt) {
  if (!(opt.tol > 0.0) || !(opt.membership_tol >= 0.0) || !(opt.refine_tol > 0.0))
    throw ValidationError("tolerance", "rate tolerances must be positive");
  if (y_sigma.energy == 0.0 && y_sigma.entropy == 0.0 && y_sigma.size == 0.0)
    throw ValidationError("zero_target", "target point y_sigma is zero");
  for (const auto* y : {&y_rho, &y_sigma}) {
    if (!is_member(cone_contains(h, *y))) {
      std::ostringstream os;
      os << (y == &y_rho ? "y_rho" : "y_sigma") << " = (" << y->energy << ", " << y->entropy
         << ", " << y->size << ") is not in the cone";
      throw ValidationError("not_in_cone", os.str());
    }
  }
  if (!(y_sigma.size > 1e-9))
    throw ValidationError("zero_target", "target point y_sigma has zero size");

  RateResult out;

  // Bisection. The size coordinate alone caps r: beyond hi, y_n < -membership_tol.
  double lo = 0.0;
  double hi = (y_rho.size + 2.0 * opt.membership_tol) / y_sigma.size + 1e-12;
  while (hi - lo > opt.tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (is_member(cone_contains(h, y_rho - mid * y_sigma, opt.membership_tol)))
      lo = mid;
    else
      hi = mid;
  }
  out.rate_bisect = lo;

  // Monotone ratios, skipping vanishing denominators.
  const double threshold = 1e-12 * std::max(1.0, y_sigma.size);
  Candidate best;
  if (y_sigma.entropy > threshold)
    best.offer(y_rho.entropy / y_sigma.entropy, Facet::Entropy, 0.0);
  const auto er = edge_monotones(h, y_rho);
  const auto es = edge_monotones(h, y_sigma);
  if (es.ground > threshold) best.offer(er.ground / es.ground, Facet::GroundEdge, kInfinity);
  if (es.top > threshold) best.offer(er.top / es.top, Facet::TopEdge, -kInfinity);
  athermality_ratio(h, y_rho, y_sigma, threshold, opt, best);

  out.rate_monotone = std::max(best.value, 0.0);
  out.argmin = best.facet;
  out.argmin_beta = best.beta;
  out.agreement_gap = std::abs(out.rate_bisect - out.rate_monotone);
  return out;
}

}  // namespace thermocone
