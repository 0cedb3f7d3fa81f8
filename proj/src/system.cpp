#include "thermocone/system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "thermocone/diagram.hpp"

namespace thermocone {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kNegativeTol = 1e-10;

std::string describe_dims(std::size_t got, std::size_t want) {
  std::ostringstream os;
  os << "state has dimension " << got << " but the Hamiltonian has dimension " << want;
  return os.str();
}

std::vector<double> clip_and_normalize(std::span<const double> p) {
  std::vector<double> out(p.begin(), p.end());
  double total = 0.0;
  for (double& v : out) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (total > 0.0)
    for (double& v : out) v /= total;
  return out;
}

std::vector<double> spectrum_of(const QuantumState& s) {
  if (const auto* m = std::get_if<MatrixForm>(&s.representation)) {
    const auto ev = eigvals_hermitian(m->rho);
    return clip_and_normalize(std::span<const double>(ev.data(), ev.size()));
  }
  const auto& sp = std::get<SpectralForm>(s.representation);
  return clip_and_normalize(sp.eigenvalues);
}

void check_copies(double n) {
  if (!std::isfinite(n) || n <= 0.0) {
    std::ostringstream os;
    os << "copy count must be a positive finite real, got " << n;
    throw ValidationError("copies", os.str());
  }
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(std::vector<EnergyLevel> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw ValidationError("hamiltonian", "Hamiltonian needs at least one level");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const auto& lv = levels_[i];
    if (!std::isfinite(lv.energy))
      throw ValidationError("hamiltonian", "level energies must be finite");
    if (lv.degeneracy < 1) throw ValidationError("hamiltonian", "degeneracies must be >= 1");
    if (i > 0 && !(lv.energy > levels_[i - 1].energy))
      throw ValidationError("hamiltonian", "level energies must be strictly ascending");
    dimension_ += lv.degeneracy;
  }
}

HamiltonianSpec HamiltonianSpec::from_diagonal(std::vector<double> energies) {
  std::sort(energies.begin(), energies.end());
  std::vector<EnergyLevel> levels;
  for (double e : energies) {
    if (!levels.empty() && levels.back().energy == e)
      ++levels.back().degeneracy;
    else
      levels.push_back({e, 1});
  }
  return HamiltonianSpec(std::move(levels));
}

RealVector<double> HamiltonianSpec::diagonal() const {
  RealVector<double> out(static_cast<Eigen::Index>(dimension_));
  Eigen::Index k = 0;
  for (const auto& lv : levels_)
    for (std::size_t g = 0; g < lv.degeneracy; ++g) out(k++) = lv.energy;
  return out;
}

std::vector<std::size_t> HamiltonianSpec::level_of_basis() const {
  std::vector<std::size_t> out;
  out.reserve(dimension_);
  for (std::size_t l = 0; l < levels_.size(); ++l)
    out.insert(out.end(), levels_[l].degeneracy, l);
  return out;
}

HamiltonianSpec HamiltonianSpec::shifted(double offset) const {
  auto lv = levels_;
  for (auto& l : lv) l.energy += offset;
  return HamiltonianSpec(std::move(lv));
}

HermitianMatrix diagonal_density(std::span<const double> populations) {
  const auto d = static_cast<Eigen::Index>(populations.size());
  HermitianMatrix rho = HermitianMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) rho(i, i) = populations[static_cast<std::size_t>(i)];
  return rho;
}

QuantumState maximally_mixed(const HamiltonianSpec& h, double copies) {
  const auto d = static_cast<Eigen::Index>(h.dimension());
  return QuantumState::matrix(HermitianMatrix::Identity(d, d) / static_cast<double>(d), copies);
}

QuantumState pure_level(const HamiltonianSpec& h, std::size_t level_index, double copies) {
  if (level_index >= h.levels().size())
    throw ValidationError("dimension", "level index out of range");
  std::size_t offset = 0;
  for (std::size_t l = 0; l < level_index; ++l) offset += h.levels()[l].degeneracy;
  const auto d = static_cast<Eigen::Index>(h.dimension());
  HermitianMatrix rho = HermitianMatrix::Zero(d, d);
  rho(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(offset)) = 1.0;
  return QuantumState::matrix(std::move(rho), copies);
}

double shannon_entropy_nats(std::span<const double> probabilities) {
  const auto p = clip_and_normalize(probabilities);
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s -= v * std::log(v);
  return std::max(s, 0.0);
}

QuantumState validate_state(const QuantumState& s, const HamiltonianSpec& h) {
  check_copies(s.copies);
  const std::size_t d = h.dimension();

  if (const auto* m = std::get_if<MatrixForm>(&s.representation)) {
    if (static_cast<std::size_t>(m->rho.rows()) != d || m->rho.rows() != m->rho.cols())
      throw ValidationError("dimension", describe_dims(static_cast<std::size_t>(m->rho.rows()), d));
    check_hermitian(m->rho);
    const double tr = m->rho.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
      std::ostringstream os;
      os << "density matrix has trace " << tr << ", expected 1";
      throw ValidationError("trace", os.str());
    }
    const auto ev = eigvals_hermitian(m->rho);
    if (ev(0) < -kNegativeTol) {
      std::ostringstream os;
      os << "density matrix has eigenvalue " << ev(0) << " below -1e-10";
      throw ValidationError("negative_eigenvalue", os.str());
    }
    return s;
  }

  if (const auto* sp = std::get_if<SpectralForm>(&s.representation)) {
    if (sp->eigenvalues.size() != d)
      throw ValidationError("dimension", describe_dims(sp->eigenvalues.size(), d));
    double total = 0.0;
    for (double v : sp->eigenvalues) {
      if (!std::isfinite(v) || v < -kNegativeTol || v > 1.0 + kNegativeTol) {
        std::ostringstream os;
        os << "spectral entry " << v << " outside [-1e-10, 1]";
        throw ValidationError("negative_eigenvalue", os.str());
      }
      total += v;
    }
    if (std::abs(total - 1.0) > kTraceTol) {
      std::ostringstream os;
      os << "spectrum sums to " << total << ", expected 1";
      throw ValidationError("trace", os.str());
    }
    QuantumState out{SpectralForm{clip_and_normalize(sp->eigenvalues), sp->energy}, s.copies};
    const Macrostate x{sp->energy, shannon_entropy_nats(std::get<SpectralForm>(out.representation).eigenvalues)};
    if (diagram_contains(h, x) == Membership::Outside) {
      std::ostringstream os;
      os << "spectrum with energy " << sp->energy << " has macrostate (" << x.energy << ", "
         << x.entropy << ") outside the energy-entropy diagram";
      throw ValidationError("not_in_diagram", os.str());
    }
    return out;
  }

  const auto& x = std::get<MacroForm>(s.representation).macro;
  if (diagram_contains(h, x) == Membership::Outside) {
    std::ostringstream os;
    os << "macrostate (" << x.energy << ", " << x.entropy
       << ") lies outside the energy-entropy diagram";
    throw ValidationError("not_in_diagram", os.str());
  }
  return s;
}

Macrostate macrostate_of(const QuantumState& s, const HamiltonianSpec& h) {
  const auto v = validate_state(s, h);
  if (const auto* mf = std::get_if<MacroForm>(&v.representation)) return mf->macro;

  double energy = 0.0;
  if (const auto* m = std::get_if<MatrixForm>(&v.representation)) {
    energy = (h.diagonal().cast<std::complex<double>>().asDiagonal() * m->rho).trace().real();
  } else {
    energy = std::get<SpectralForm>(v.representation).energy;
  }
  energy = std::clamp(energy, h.e_min(), h.e_max());
  const double entropy = std::min(shannon_entropy_nats(spectrum_of(v)),
                                  std::log(static_cast<double>(h.dimension())));
  return {energy, entropy};
}

ConePoint cone_point_of(const QuantumState& s, const HamiltonianSpec& h) {
  check_copies(s.copies);
  const auto x = macrostate_of(s, h);
  return {s.copies * x.energy, s.copies * x.entropy, s.copies};
}

ConePoint cone_point_of(std::span<const QuantumState> factors, const HamiltonianSpec& h) {
  ConePoint y;
  for (const auto& f : factors) y += cone_point_of(f, h);
  return y;
}

}  // namespace thermocone
