#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "thermocone/thermal.hpp"

using namespace thermocone;

TEST_CASE("qubit thermal points") {
  const auto h = qubit();
  auto t = thermal_point(h, 0.0);
  CHECK(t.energy == doctest::Approx(0.5));
  CHECK(t.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(t.log_z == doctest::Approx(std::log(2.0)));

  t = thermal_point(h, 1.0);
  CHECK(t.energy == doctest::Approx(0.268941421370).epsilon(1e-11));
  CHECK(t.entropy == doctest::Approx(0.582203108888).epsilon(1e-11));

  t = thermal_point(h, kInfinity);
  CHECK(t.energy == 0.0);
  CHECK(t.entropy == 0.0);
  t = thermal_point(h, -kInfinity);
  CHECK(t.energy == 1.0);
  CHECK(t.entropy == 0.0);
}

TEST_CASE("thermal points match direct sums on random spectra") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 6);
    for (double beta : {-4.0, -1.3, -0.2, 0.0, 0.7, 2.5, 6.0}) {
      const auto t = thermal_point(h, beta);
      const auto o = oracle::gibbs(h, beta);
      CHECK(t.log_z == doctest::Approx(static_cast<double>(o.log_z)).epsilon(1e-12));
      CHECK(t.energy == doctest::Approx(static_cast<double>(o.energy)).epsilon(1e-12));
      CHECK(t.entropy == doctest::Approx(static_cast<double>(o.entropy)).epsilon(1e-11));
      CHECK(energy_variance(h, beta) == doctest::Approx(static_cast<double>(o.variance)).epsilon(1e-10));
    }
  }
}

TEST_CASE("large beta stays finite") {
  const auto h = HamiltonianSpec({{0.0, 2}, {1.0, 1}, {5.0, 3}});
  for (double beta : {1e3, 1e5, -1e3, -1e5}) {
    const auto t = thermal_point(h, beta);
    CHECK(std::isfinite(t.energy));
    CHECK(std::isfinite(t.entropy));
  }
  CHECK(thermal_point(h, 1e5).entropy == doctest::Approx(std::log(2.0)));
  CHECK(thermal_point(h, -1e5).entropy == doctest::Approx(std::log(3.0)));
  CHECK(thermal_point(h, kInfinity).entropy == doctest::Approx(std::log(2.0)));
  CHECK(thermal_point(h, -kInfinity).energy == 5.0);
  const auto p = shifted_log_partition(h, 1e5);
  CHECK(p.shift == 0.0);
  CHECK(p.log_z_shifted == doctest::Approx(std::log(2.0)));
}

TEST_CASE("beta from energy") {
  const auto h = qubit();
  CHECK(std::abs(beta_from_energy(h, 0.5)) < 1e-12);
  CHECK(beta_from_energy(h, 0.25) == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  CHECK(beta_from_energy(h, 0.268941421370) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(error_code<DomainError>([&] { beta_from_energy(h, 1.5); }) == "range");
  CHECK(error_code<DomainError>([] { beta_from_energy(HamiltonianSpec({{1.0, 2}}), 1.0); }) ==
        "degenerate_hamiltonian");
  CHECK(error_code<DomainError>([&] { beta_from_energy(h, 0.0); }) == "range");
}

TEST_CASE("beta from entropy") {
  const auto h = qubit();
  CHECK(beta_from_entropy(h, std::log(2.0), BetaBranch::Positive) == 0.0);
  CHECK(beta_from_entropy(h, std::log(2.0), BetaBranch::Negative) == 0.0);
  const double s1 = thermal_point(h, 1.0).entropy;
  CHECK(beta_from_entropy(h, s1, BetaBranch::Positive) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(beta_from_entropy(h, s1, BetaBranch::Negative) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(error_code<DomainError>([&] { beta_from_entropy(h, 0.9, BetaBranch::Positive); }) == "range");
  CHECK(error_code<DomainError>([&] { beta_from_entropy(h, 0.0, BetaBranch::Positive); }) == "boundary");
}

TEST_CASE("round trips on random spectra") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 5);
    for (double beta : {-3.0, -0.5, 0.4, 1.0, 3.0}) {
      const auto t = thermal_point(h, beta);
      CHECK(beta_from_energy(h, t.energy) == doctest::Approx(beta).epsilon(1e-8));
      const auto branch = beta > 0 ? BetaBranch::Positive : BetaBranch::Negative;
      CHECK(beta_from_entropy(h, t.entropy, branch) == doctest::Approx(beta).epsilon(1e-8));
    }
  }
}

TEST_CASE("entropy is maximal at infinite temperature") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 6);
    const double s0 = thermal_point(h, 0.0).entropy;
    CHECK(s0 == doctest::Approx(std::log(static_cast<double>(h.dimension()))).epsilon(1e-15));
    for (double beta : {-2.0, -0.01, 0.01, 2.0}) CHECK(thermal_point(h, beta).entropy < s0);
  }
}

TEST_CASE("dS/dE equals beta and -dE/dbeta equals the variance") {
  std::mt19937_64 rng(13);
  const double step = 1e-4;
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 5);
    for (double beta : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
      const auto a = thermal_point(h, beta + step), b = thermal_point(h, beta - step);
      CHECK((a.entropy - b.entropy) / (a.energy - b.energy) == doctest::Approx(beta).epsilon(1e-3));
      CHECK(-(a.energy - b.energy) / (2 * step) ==
            doctest::Approx(energy_variance(h, beta)).epsilon(1e-4));
    }
  }
}

TEST_CASE("variance examples") {
  const auto h = qubit();
  CHECK(energy_variance(h, 0.0) == doctest::Approx(0.25));
  CHECK(energy_variance(h, 1.0) == doctest::Approx(0.196611933241).epsilon(1e-11));
  CHECK(energy_variance(HamiltonianSpec({{2.0, 3}}), 1.0) == 0.0);
  CHECK(energy_variance(h, kInfinity) == 0.0);
  CHECK(beta_cap(h) == 750.0);
  // Set by the closest pair of levels, not the full width.
  CHECK(beta_cap(HamiltonianSpec::from_diagonal({0.0, 1e-3, 2.0})) == doctest::Approx(7.5e5));
}

TEST_CASE("beta from energy near a nearly degenerate ground") {
  const auto h = HamiltonianSpec::from_diagonal({0.0, 1e-4, 1.5});
  // Ground pair split by 1e-4: beta = 2e4 leaves both ground levels occupied.
  const double e = thermal_point(h, 2e4).energy;
  CHECK(beta_from_energy(h, e) == doctest::Approx(2e4).epsilon(1e-9));
}

TEST_CASE("level populations") {
  const auto pops = thermal_level_populations(HamiltonianSpec({{0.0, 1}, {1.0, 2}}), 0.0);
  CHECK(pops[0] == doctest::Approx(1.0 / 3));
  CHECK(pops[1] == doctest::Approx(2.0 / 3));
}
