#include "thermocone/protocol/dilation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermocone::protocol {

namespace {

using Complex = std::complex<double>;

enum class Mode { Case1, Case2 };

struct StageResult {
  DilationStage stage;
  HermitianMatrix output;  // reduced state on the system
};

std::size_t index_of(const std::vector<Rational>& sorted, const Rational& v) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  return static_cast<std::size_t>(it - sorted.begin());
}

StageResult run_stage(const std::vector<Rational>& basis_energy, const LevelSet& levels,
                      const HermitianMatrix& u, const HermitianMatrix& rho, const LevelSet& m,
                      Mode mode, const DilationOptions& opt) {
  const LevelSet ancilla =
      mode == Mode::Case1 ? minkowski_difference(m, levels) : minkowski_sum(m, levels);
  const auto& anc = ancilla.values();
  const std::size_t d = basis_energy.size();
  const std::size_t a = anc.size();
  const std::size_t n = d * a;
  if (n > opt.max_dimension) {
    std::ostringstream os;
    os << "joint dimension " << d << " x " << a << " = " << n << " exceeds the cap "
       << opt.max_dimension;
    throw DomainError("cap_exceeded", os.str());
  }
  const auto at = [a](std::size_t sys, std::size_t anc_index) {
    return static_cast<Eigen::Index>(sys * a + anc_index);
  };

  // Energy-preserving partial isometry.
  HermitianMatrix v = HermitianMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& h : m.values()) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Complex uij = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (uij == Complex(0)) continue;
        const Rational& lambda = basis_energy[i];
        const Rational& mu = basis_energy[j];
        const Rational out = mode == Mode::Case1 ? h - lambda : h + mu;
        const Rational in = mode == Mode::Case1 ? h - mu : h + lambda;
        v(at(i, index_of(anc, out)), at(j, index_of(anc, in))) += uij;
      }
    }
  }

  // Group the joint basis by total energy and take the polar factor per block.
  std::vector<Rational> total(n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < a; ++k) total[i * a + k] = basis_energy[i] + anc[k];
  std::vector<Rational> energies = total;
  std::sort(energies.begin(), energies.end());
  energies.erase(std::unique(energies.begin(), energies.end()), energies.end());

  HermitianMatrix ut = HermitianMatrix::Zero(v.rows(), v.cols());
  for (const auto& e : energies) {
    std::vector<Eigen::Index> ids;
    for (std::size_t k = 0; k < n; ++k)
      if (total[k] == e) ids.push_back(static_cast<Eigen::Index>(k));
    const auto b = static_cast<Eigen::Index>(ids.size());
    HermitianMatrix block(b, b);
    for (Eigen::Index r = 0; r < b; ++r)
      for (Eigen::Index c = 0; c < b; ++c) block(r, c) = v(ids[r], ids[c]);
    HermitianMatrix polar;
    if (block.norm() == 0.0) {
      polar = HermitianMatrix::Identity(b, b);
    } else {
      Eigen::JacobiSVD<HermitianMatrix> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
      polar = svd.matrixU() * svd.matrixV().adjoint();
    }
    for (Eigen::Index r = 0; r < b; ++r)
      for (Eigen::Index c = 0; c < b; ++c) ut(ids[r], ids[c]) = polar(r, c);
  }

  StageResult res;
  auto& st = res.stage;
  st.mode = mode == Mode::Case1 ? "case1" : "case2";
  st.ancilla_dimension = a;
  st.total_dimension = n;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (total[r] != total[c])
        st.residual = std::max({st.residual, std::abs(v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))),
                                std::abs(ut(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)))});
  st.unitarity_error =
      (ut * ut.adjoint() - HermitianMatrix::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff();

  // rho x eta with eta the uniform superposition over ancilla levels.
  const HermitianMatrix eta = HermitianMatrix::Constant(static_cast<Eigen::Index>(a),
                                                        static_cast<Eigen::Index>(a),
                                                        Complex(1.0 / static_cast<double>(a)));
  HermitianMatrix joint(v.rows(), v.cols());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      joint.block(at(i, 0), at(j, 0), static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) =
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * eta;

  st.support_weight = (v * joint * v.adjoint()).trace().real();
  st.expected_support_weight = static_cast<double>(m.size()) / static_cast<double>(a);

  const HermitianMatrix out = ut * joint * ut.adjoint();
  res.output = HermitianMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < a; ++k)
        res.output(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += out(at(i, k), at(j, k));
  return res;
}

const HermitianMatrix& matrix_of(const QuantumState& s, const char* name) {
  const auto* mf = std::get_if<MatrixForm>(&s.representation);
  if (!mf) {
    std::ostringstream os;
    os << name << " must be given as a density matrix";
    throw ValidationError("matrix_required", os.str());
  }
  return mf->rho;
}

}  // namespace

bool energy_incoherent(const HamiltonianSpec& h, const HermitianMatrix& m, double tol) {
  const auto level = h.level_of_basis();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (level[static_cast<std::size_t>(i)] != level[static_cast<std::size_t>(j)] &&
          std::abs(m(i, j)) > tol)
        return false;
  return true;
}

double trace_norm(const HermitianMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<HermitianMatrix> svd(m);
  return svd.singularValues().sum();
}

DilationReport build_energy_preserving_dilation(const HamiltonianSpec& h, const HermitianMatrix& u,
                                                const QuantumState& rho, const QuantumState& sigma,
                                                const LevelSet& m, double delta,
                                                const DilationOptions& options) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta", "delta must lie in (0, 1)");
  if (m.empty()) throw ValidationError("empty", "the level set M is empty");
  const auto d = static_cast<Eigen::Index>(h.dimension());
  if (u.rows() != d || u.cols() != d) {
    std::ostringstream os;
    os << "unitary is " << u.rows() << "x" << u.cols() << ", expected " << d << "x" << d;
    throw ValidationError("dimension", os.str());
  }
  const double unitary_err = (u.adjoint() * u - HermitianMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unitary_err > 1e-10) {
    std::ostringstream os;
    os << "U is not unitary: max |U^dag U - 1| = " << unitary_err;
    throw ValidationError("non_unitary", os.str());
  }
  validate_state(rho, h);
  validate_state(sigma, h);
  const HermitianMatrix& r = matrix_of(rho, "rho");
  const HermitianMatrix& s = matrix_of(sigma, "sigma");

  std::vector<Rational> basis_energy;
  std::vector<Rational> level_values;
  for (const auto& lv : h.levels()) {
    const Rational e = Rational::from_double(lv.energy);
    level_values.push_back(e);
    basis_energy.insert(basis_energy.end(), lv.degeneracy, e);
  }
  const LevelSet levels(level_values);

  const double bound = (1.0 + delta) * static_cast<double>(m.size()) * (1.0 + 1e-12);
  const auto plus = minkowski_sum(m, levels).size();
  const auto minus = minkowski_difference(m, levels).size();
  if (static_cast<double>(plus) > bound || static_cast<double>(minus) > bound) {
    std::ostringstream os;
    os << "|M + L| = " << plus << ", |M - L| = " << minus << " exceed (1 + delta)|M| with |M| = "
       << m.size() << ", delta = " << delta;
    throw DomainError("doubling", os.str());
  }
  if (levels.norm() > m.norm()) {
    std::ostringstream os;
    os << "||L|| = " << levels.norm().to_string() << " exceeds ||M|| = " << m.norm().to_string();
    throw DomainError("norm", os.str());
  }

  DilationReport report;
  report.delta = delta;
  report.precondition_distance = trace_norm(u * r * u.adjoint() - s);
  if (report.precondition_distance > delta + 1e-12) {
    std::ostringstream os;
    os << "|| U rho U^dag - sigma ||_1 = " << report.precondition_distance << " exceeds delta = "
       << delta;
    throw DomainError("precondition", os.str());
  }

  HermitianMatrix out;
  if (energy_incoherent(h, s, options.coherence_tol)) {
    report.mode = "case1";
    auto st = run_stage(basis_energy, levels, u, r, m, Mode::Case1, options);
    report.stages.push_back(st.stage);
    out = st.output;
  } else if (energy_incoherent(h, r, options.coherence_tol)) {
    report.mode = "case2";
    auto st = run_stage(basis_energy, levels, u, r, m, Mode::Case2, options);
    report.stages.push_back(st.stage);
    out = st.output;
  } else {
    // rho -> diag(spectrum of rho) -> sigma.
    report.mode = "two_step";
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> es(r);
    const HermitianMatrix& vecs = es.eigenvectors();
    auto first = run_stage(basis_energy, levels, vecs.adjoint(), r, m, Mode::Case1, options);
    auto second = run_stage(basis_energy, levels, u * vecs, first.output, m, Mode::Case2, options);
    report.stages.push_back(first.stage);
    report.stages.push_back(second.stage);
    out = second.output;
  }

  for (const auto& st : report.stages) {
    report.residual = std::max(report.residual, st.residual);
    report.total_dimension = std::max(report.total_dimension, st.total_dimension);
  }
  report.distance = trace_norm(out - s);
  report.output = std::move(out);
  return report;
}

}  // namespace thermocone::protocol
