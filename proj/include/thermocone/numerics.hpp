#pragma once

// Small dependency-free numerical kernels: Hermitian eigenvalues by cyclic
// Jacobi rotations, bracketed scalar root finding and grid-seeded golden
// section minimization. Everything is templated on the real scalar type.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <type_traits>
#include <vector>

#include "thermocone/error.hpp"

namespace thermocone {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Dense complex matrix used for density matrices, Hamiltonians and unitaries.
using HermitianMatrix = ComplexMatrix<double>;

/// Throws ValidationError naming the first entry that violates
/// m(i,j) == conj(m(j,i)) by more than `tol` (scaled by max(1, max |m_ij|)).
template <typename Derived>
void check_hermitian(const Eigen::MatrixBase<Derived>& m,
                     typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = 1e-12) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw ValidationError("non_square", os.str());
  }
  if (m.rows() == 0) throw ValidationError("dimension", "matrix has dimension 0");
  const Real scale = std::max<Real>(Real(1), m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      const auto a = std::complex<Real>(m(i, j));
      const auto b = std::complex<Real>(m(j, i));
      if (std::abs(a - std::conj(b)) > tol * scale || !std::isfinite(std::abs(a))) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << a << " is not the conjugate of entry ("
           << j << "," << i << ") = " << b;
        throw ValidationError("non_hermitian", os.str());
      }
    }
  }
}

namespace detail {

template <typename Real>
Real off_diagonal_norm(const ComplexMatrix<Real>& a) {
  Real sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Cyclic complex Jacobi: each (p,q) rotation first removes the phase of
/// a(p,q) and then applies the real symmetric Jacobi rotation. Sweeps stop once
/// the off-diagonal Frobenius norm drops below `rel_tol * ||m||_F`.
template <typename Derived>
RealVector<typename Eigen::NumTraits<typename Derived::Scalar>::Real> eigvals_hermitian(
    const Eigen::MatrixBase<Derived>& m,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real rel_tol = 1e-13) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Complex = std::complex<Real>;
  check_hermitian(m);

  ComplexMatrix<Real> a = m.template cast<Complex>();
  const Eigen::Index d = a.rows();
  const Real norm = a.norm();
  RealVector<Real> out(d);
  if (norm == Real(0)) {
    out.setZero();
    return out;
  }

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= rel_tol * norm) break;
    for (Eigen::Index p = 0; p < d - 1; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const Complex apq = a(p, q);
        const Real mag = std::abs(apq);
        if (mag == Real(0)) continue;
        const Complex phase_conj = std::conj(apq) / mag;
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        const Real theta = (aqq - app) / (Real(2) * mag);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                       (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p,q) plane.
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * phase_conj;
        const Complex gqq = c * phase_conj;
        for (Eigen::Index k = 0; k < d; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = Complex(0);
        a(q, p) = Complex(0);
        a(p, p) = Complex(a(p, p).real());
        a(q, q) = Complex(a(q, q).real());
      }
    }
  }

  for (Eigen::Index i = 0; i < d; ++i) out(i) = a(i, i).real();
  std::sort(out.data(), out.data() + d);
  return out;
}

/// Closed search interval for a sign change; `tolerance` is the target width.
template <typename Real = double>
struct Bracket {
  Real lo;
  Real hi;
  Real tolerance;
};

/// Root of `f` inside `b`, to within `b.tolerance` in the argument.
///
/// Regula falsi with a forced bisection every third step, so the bracket
/// width at least halves every three iterations; capped at 200 iterations.
template <typename Real, typename F>
Real solve_root_bracketed(F&& f, Bracket<Real> b) {
  if (!(b.lo < b.hi)) throw ValidationError("bracket", "bracket requires lo < hi");
  if (!(b.tolerance > Real(0))) throw ValidationError("bracket", "bracket tolerance must be > 0");

  Real lo = b.lo, hi = b.hi;
  Real flo = f(lo), fhi = f(hi);
  if (flo == Real(0)) return lo;
  if (fhi == Real(0)) return hi;
  if (std::isnan(flo) || std::isnan(fhi) || (flo > 0) == (fhi > 0)) {
    std::ostringstream os;
    os << "f has the same sign at both ends of [" << lo << ", " << hi << "] (" << flo << ", "
       << fhi << ")";
    throw DomainError("bracket", os.str());
  }

  constexpr int kMaxIterations = 400;
  for (int iter = 0; iter < kMaxIterations && hi - lo > b.tolerance; ++iter) {
    const Real mid = lo + (hi - lo) / Real(2);
    Real x = mid;
    if (iter % 3 != 2) {
      const Real secant = hi - fhi * (hi - lo) / (fhi - flo);
      if (secant > lo && secant < hi) x = secant;
    }
    const Real fx = f(x);
    if (fx == Real(0)) return x;
    if ((fx > 0) == (flo > 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

template <typename Real = double>
struct ScalarMinimum {
  Real argmin;
  Real minimum;
};

/// Golden-section search for a minimum of a unimodal `f` on [a, b].
template <typename Real, typename F>
ScalarMinimum<Real> golden_section_minimize(F&& f, Real a, Real b, Real tol) {
  const Real inv_phi = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real c = b - inv_phi * (b - a);
  Real d = a + inv_phi * (b - a);
  Real fc = f(c), fd = f(d);
  for (int iter = 0; iter < 500 && (b - a) > tol; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const Real x = (a + b) / Real(2);
  const Real fx = f(x);
  ScalarMinimum<Real> best{x, fx};
  if (fc < best.minimum) best = {c, fc};
  if (fd < best.minimum) best = {d, fd};
  return best;
}

/// Minimum of `f` over an increasing grid, refined by golden section on the
/// two cells around the best sample. The result is never worse than the best
/// grid sample. NaN samples are skipped.
template <typename Real, typename F>
ScalarMinimum<Real> minimize_scalar(F&& f, std::span<const Real> grid, Real refine_tol) {
  if (grid.size() < 3) throw ValidationError("grid", "minimize_scalar needs at least 3 grid points");
  if (!(refine_tol > Real(0))) throw ValidationError("grid", "refine_tol must be > 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ValidationError("grid", "grid must be strictly increasing");

  std::size_t best = grid.size();
  Real best_value = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Real v = f(grid[i]);
    if (!std::isnan(v) && (best == grid.size() || v < best_value)) {
      best = i;
      best_value = v;
    }
  }
  if (best == grid.size()) throw DomainError("grid", "objective is NaN on every grid point");

  const Real lo = grid[best == 0 ? 0 : best - 1];
  const Real hi = grid[std::min(best + 1, grid.size() - 1)];
  ScalarMinimum<Real> result{grid[best], best_value};
  const auto refined = golden_section_minimize<Real>(f, lo, hi, refine_tol);
  if (!std::isnan(refined.minimum) && refined.minimum < result.minimum) result = refined;
  return result;
}

template <typename Real, typename F>
ScalarMinimum<Real> minimize_scalar(F&& f, const std::vector<Real>& grid, Real refine_tol) {
  return minimize_scalar<Real>(std::forward<F>(f), std::span<const Real>(grid), refine_tol);
}

/// `count` equally spaced points covering [lo, hi] inclusive.
template <typename Real = double>
std::vector<Real> linspace(Real lo, Real hi, std::size_t count) {
  std::vector<Real> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * Real(i) / Real(count - 1);
  return out;
}

}  // namespace thermocone
