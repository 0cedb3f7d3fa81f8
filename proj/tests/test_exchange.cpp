#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "thermocone/exchange.hpp"

using namespace thermocone;

namespace {

QuantumState pops(std::vector<double> p) { return QuantumState::matrix(diagonal_density(p)); }

// Closed-form chord slope for the qubit.
double qubit_beta_eff(double b1, double b2) {
  return static_cast<double>((oracle::qubit_entropy(b1) - oracle::qubit_entropy(b2)) /
                             (oracle::qubit_energy(b1) - oracle::qubit_energy(b2)));
}

}  // namespace

TEST_CASE("effective inverse temperature") {
  const auto h = qubit();
  CHECK(beta_eff(h, 1.0, 2.0) == doctest::Approx(1.448319936058).epsilon(1e-11));
  CHECK(beta_eff(h, 2.0, 1.0) == doctest::Approx(1.448319936058).epsilon(1e-11));
  CHECK(beta_eff(h, 1.0, 2.0) == doctest::Approx(qubit_beta_eff(1.0, 2.0)).epsilon(1e-12));
  CHECK(beta_eff(h, 0.5, 1.0) == doctest::Approx(0.742585345670).epsilon(1e-11));
  CHECK(beta_eff(h, 2.0, 1.5) == doctest::Approx(1.735419067053).epsilon(1e-11));
  CHECK(beta_eff(h, 1.3, 1.3) == 1.3);
  CHECK(beta_eff(h, 1.3, 1.3 + 1e-9) == doctest::Approx(1.3));
  CHECK(error_code<DomainError>([] { beta_eff(HamiltonianSpec({{0.0, 2}}), 1.0, 2.0); }) ==
        "degenerate_hamiltonian");
}

TEST_CASE("effective temperature is symmetric and strictly between") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ub(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 5);
    const double b1 = ub(rng), b2 = ub(rng);
    if (std::abs(b1 - b2) < 1e-3) continue;
    const double be = beta_eff(h, b1, b2);
    CHECK(be == doctest::Approx(beta_eff(h, b2, b1)).epsilon(1e-13));
    CHECK(be > std::min(b1, b2));
    CHECK(be < std::max(b1, b2));
  }
}

TEST_CASE("reservoir ratio") {
  const auto h = qubit();
  const auto rho = pops({0.75, 0.25});
  const auto sigma = maximally_mixed(h);
  CHECK(reservoir_ratio(h, {rho, rho, 1.0, 2.0}) == 0.0);
  CHECK(reservoir_ratio(h, {rho, sigma, 1.0, 2.0}) == doctest::Approx(0.603183870689).epsilon(1e-11));
  CHECK(error_code<DomainError>([&] { reservoir_ratio(h, {rho, sigma, 2.0, 1.0}); }) == "direction");
}

TEST_CASE("work and heat") {
  const auto h = qubit();
  const auto rho = pops({0.75, 0.25});
  const auto sigma = maximally_mixed(h);
  auto r = work_heat(h, {rho, rho, 1.0, 2.0});
  CHECK(r.work == 0.0);
  CHECK(r.heat == 0.0);

  r = work_heat(h, {rho, sigma, 1.0, 2.0});
  CHECK(r.heat == doctest::Approx(0.090319847628).epsilon(1e-11));
  CHECK(r.work == doctest::Approx(-0.159680152372).epsilon(1e-11));
  CHECK(r.heat - r.work == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r.work_athermality == doctest::Approx(r.work).epsilon(1e-12));
  CHECK_FALSE(r.battery_charging);
  CHECK(r.ell_over_n == doctest::Approx(r.work));
}

TEST_CASE("small reservoir change recovers the free-energy formula") {
  const auto h = qubit();
  const auto rho = pops({0.75, 0.25});
  const auto sigma = maximally_mixed(h);
  const double beta = 1.0, eps = 1e-4;
  const auto r = work_heat(h, {rho, sigma, beta, beta + eps});
  const double standard = (athermality(h, macrostate_of(rho, h), beta) -
                           athermality(h, macrostate_of(sigma, h), beta)) / beta;
  CHECK(std::abs(r.work - standard) < 10 * eps);
}

TEST_CASE("first law and shift invariance on random exchanges") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ub(0.2, 3.0), u01(0.0, 1.0);
  int checked = 0;
  while (checked < 100) {
    const auto h = oracle::random_hamiltonian(rng, 4);
    std::vector<double> a(h.dimension()), b(h.dimension());
    double sa = 0, sb = 0;
    for (auto& v : a) sa += (v = u01(rng));
    for (auto& v : b) sb += (v = u01(rng));
    for (auto& v : a) v /= sa;
    for (auto& v : b) v /= sb;
    const auto rho = pops(a), sigma = pops(b);
    double b1 = ub(rng), b2 = ub(rng);
    const double ds = macrostate_of(sigma, h).entropy - macrostate_of(rho, h).entropy;
    // Order the betas so that the reservoir moves in the required direction.
    if ((ds > 0) != (b1 < b2)) std::swap(b1, b2);
    const auto r = work_heat(h, {rho, sigma, b1, b2});
    const double de = macrostate_of(sigma, h).energy - macrostate_of(rho, h).energy;
    CHECK(std::abs((r.heat - r.work) - de) < 1e-12);
    CHECK(std::abs(r.work - r.work_athermality) < 1e-10);

    const auto hs = h.shifted(0.37);
    const auto rs = work_heat(hs, {rho, sigma, b1, b2});
    CHECK(std::abs(rs.work - r.work) < 1e-9);
    CHECK(std::abs(rs.heat - r.heat) < 1e-9);
    CHECK(std::abs(rs.m_over_n - r.m_over_n) < 1e-9);
    ++checked;
  }
}

TEST_CASE("erasure") {
  const auto h = qubit();
  const auto mixed = maximally_mixed(h);
  const auto pure = QuantumState::macro({0.5, 0.0});
  CHECK(erasure_work(h, mixed, pure, 2.0, 1.0) == doctest::Approx(0.478587060292).epsilon(1e-11));
  CHECK(erasure_work(h, mixed, mixed, 2.0, 1.0) == 0.0);
  CHECK(erasure_work(h, mixed, pure, 1.0, 1.0 + 1e-6) ==
        doctest::Approx(std::log(2.0) / 1.0).epsilon(1e-6));
  CHECK(error_code<DomainError>([&] { erasure_work(h, mixed, pure_level(h, 0), 2.0, 1.0); }) ==
        "energy_mismatch");
}

TEST_CASE("reservoir size expansion") {
  const auto h = qubit();
  const auto rho = pops({0.75, 0.25});
  const auto sigma = maximally_mixed(h);
  auto est = reservoir_size_for_epsilon(h, rho, sigma, 1.0, 0.01);
  CHECK(est.leading == doctest::Approx(66.5331).epsilon(1e-5));
  est = reservoir_size_for_epsilon(h, rho, sigma, 1.0, 1e-3);
  CHECK(std::abs(est.exact - est.leading) / est.leading < 0.02);
  est = reservoir_size_for_epsilon(h, rho, rho, 1.0, 1e-3);
  CHECK(est.leading == 0.0);
  CHECK(error_code<DomainError>([&] { reservoir_size_for_epsilon(h, rho, sigma, 0.0, 0.01); }) ==
        "zero_variance");
  CHECK(error_code<ValidationError>([&] { reservoir_size_for_epsilon(h, rho, sigma, 1.0, 0.0); }) ==
        "epsilon");
}

TEST_CASE("engine efficiencies") {
  const auto h = qubit();
  auto e = engine_efficiencies(h, 2.0, 1.5, 1.0, 0.5);
  CHECK(e.eta_engine == doctest::Approx(0.572100272627).epsilon(1e-11));
  CHECK(e.eta_refrigerator == doctest::Approx(0.747945330297).epsilon(1e-11));
  const double bc = qubit_beta_eff(2.0, 1.5), bh = qubit_beta_eff(0.5, 1.0);
  CHECK(e.eta_engine == doctest::Approx(1.0 - bh / bc).epsilon(1e-12));
  CHECK(e.eta_refrigerator == doctest::Approx(1.0 / (bc / bh - 1.0)).epsilon(1e-12));
  CHECK(e.work == doctest::Approx(e.heat_hot - e.heat_cold).epsilon(1e-12));

  e = engine_efficiencies(h, 2.0, 2.0 - 1e-4, 0.5 + 1e-4, 0.5);
  CHECK(e.eta_engine == doctest::Approx(0.75).epsilon(1e-3));
  CHECK(error_code<DomainError>([&] { engine_efficiencies(h, 0.5, 1.0, 1.5, 2.0); }) == "ordering");
}

TEST_CASE("engine stays below Carnot") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> ub(0.05, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 4);
    std::vector<double> b{ub(rng), ub(rng), ub(rng), ub(rng)};
    std::sort(b.rbegin(), b.rend());
    if (b[0] - b[1] < 1e-3 || b[1] - b[2] < 1e-3 || b[2] - b[3] < 1e-3) continue;
    const auto e = engine_efficiencies(h, b[0], b[1], b[2], b[3]);
    CHECK(e.eta_engine < 1.0 - b[3] / b[0]);
    CHECK(e.eta_refrigerator < 1.0 / (b[1] / b[2] - 1.0));
  }
}
