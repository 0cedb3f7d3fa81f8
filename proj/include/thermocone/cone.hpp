#pragma once

#include "thermocone/diagram.hpp"

namespace thermocone {

/// Membership in Therm(H). `tol` is absolute, in the units of y.
Membership cone_contains(const HamiltonianSpec& h, const ConePoint& y, double tol = 1e-9);

struct EdgeMonotones {
  double ground = 0.0;  // y_E - y_n E_min
  double top = 0.0;     // y_n E_max - y_E
};

EdgeMonotones edge_monotones(const HamiltonianSpec& h, const ConePoint& y);

/// y_rho - y_sigma lies in Therm(H).
bool dominates(const HamiltonianSpec& h, const ConePoint& y_rho, const ConePoint& y_sigma,
               double tol = 1e-9);

struct RateOptions {
  double tol = 1e-9;              // bisection width in r
  double membership_tol = 1e-12;  // cone tolerance used by the bisection
  std::size_t grid_points = 2048;
  double refine_tol = 1e-12;
};

struct RateResult {
  double rate_bisect = 0.0;
  double rate_monotone = 0.0;
  Facet argmin = Facet::Entropy;  // which monotone ratio attains rate_monotone
  double argmin_beta = 0.0;       // for Facet::Athermality
  double agreement_gap = 0.0;
};

/// Optimal asymptotic rate of y_rho into y_sigma, by bisection on cone
/// membership and independently as the minimal ratio of extremal monotones.
RateResult r_max(const HamiltonianSpec& h, const ConePoint& y_rho, const ConePoint& y_sigma,
                 const RateOptions& options = {});

}  // namespace thermocone
