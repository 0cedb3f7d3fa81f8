#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "thermocone/cone.hpp"

using namespace thermocone;

namespace {

// Random cone point: a random mixture macrostate scaled by n in (0.2, 3).
ConePoint random_member(std::mt19937_64& rng, const HamiltonianSpec& h) {
  std::exponential_distribution<double> ex(1.0);
  std::uniform_real_distribution<double> un(0.2, 3.0);
  const auto e = h.diagonal();
  std::vector<double> p(h.dimension());
  double s = 0;
  for (auto& v : p) s += (v = std::pow(ex(rng), 2.0));
  double energy = 0;
  for (std::size_t i = 0; i < p.size(); ++i) energy += (p[i] /= s) * e(static_cast<Eigen::Index>(i));
  const double n = un(rng);
  return {n * energy, n * shannon_entropy_nats(p), n};
}

}  // namespace

TEST_CASE("cone membership examples") {
  const auto h = qubit();
  CHECK(is_member(cone_contains(h, {0, 0, 0})));
  const auto t = thermal_point(h, 1.0);
  CHECK(is_member(cone_contains(h, 2.5 * ConePoint{t.energy, t.entropy, 1.0})));
  CHECK(cone_contains(h, {0.5, 0.2, 0.0}) == Membership::Outside);
  CHECK(cone_contains(h, {0.5, 0.2, 1.0}) == Membership::Inside);
  CHECK(cone_contains(h, {1.0, 0.4, 2.0}) == Membership::Inside);
  CHECK(cone_contains(h, {0.5, 0.8, 1.0}) == Membership::Outside);
  CHECK(cone_contains(h, {-0.1, 0.0, -1.0}) == Membership::Outside);
}

TEST_CASE("edge monotones") {
  const auto h = qubit();
  auto m = edge_monotones(h, {0.0, 0.0, 1.0});
  CHECK(m.ground == 0.0);
  CHECK(m.top == 1.0);
  m = edge_monotones(h, {1.0, 0.0, 1.0});
  CHECK(m.ground == 1.0);
  CHECK(m.top == 0.0);
  m = edge_monotones(h, {0.5, std::log(2.0), 1.0});
  CHECK(m.ground == 0.5);
  CHECK(m.top == 0.5);
}

TEST_CASE("dominance") {
  const auto h = qubit();
  const ConePoint y{0.4, 0.3, 1.0};
  CHECK(dominates(h, y, y));
  CHECK(dominates(h, {1.0, 0.0, 1.0}, {0.5, 0.0, 0.5}));
  CHECK_FALSE(dominates(h, {0.5, std::log(2.0), 1.0}, {0.5, 0.0, 1.0}));
}

TEST_CASE("dominance is transitive") {
  std::mt19937_64 rng(31);
  const auto h = HamiltonianSpec::from_diagonal({0.0, 0.4, 1.0});
  int checked = 0;
  for (int trial = 0; trial < 20000 && checked < 100; ++trial) {
    const auto a = random_member(rng, h), b = random_member(rng, h), c = random_member(rng, h);
    if (dominates(h, a, b, 0.0) && dominates(h, b, c, 0.0)) {
      CHECK(dominates(h, a, c, 1e-12));
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("rate examples") {
  const auto h = qubit();
  const ConePoint rho{0.5, 0.2, 1.0}, sigma{0.5, 0.0, 1.0};
  auto r = r_max(h, rho, sigma);
  const double closed = 1.0 - 0.2 / std::log(2.0);
  CHECK(std::abs(r.rate_bisect - closed) < 1e-8);
  CHECK(std::abs(r.rate_monotone - closed) < 1e-8);
  CHECK(r.agreement_gap < 1e-6);
  CHECK(r.argmin == Facet::Athermality);
  CHECK(std::abs(r.argmin_beta) < 1e-4);

  r = r_max(h, rho, rho);
  CHECK(r.rate_bisect == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.rate_monotone == doctest::Approx(1.0).epsilon(1e-8));

  const auto t = thermal_point(h, 1.0);
  r = r_max(h, {t.energy, t.entropy, 1.0}, sigma);
  CHECK(r.rate_bisect < 1e-8);
  CHECK(r.rate_monotone < 1e-6);

  r = r_max(h, {1.0, 0.0, 1.0}, {0.5, 0.3, 1.0});
  CHECK(r.rate_bisect < 1e-8);
  CHECK(r.rate_monotone < 1e-8);

  CHECK(error_code<ValidationError>([&] { r_max(h, rho, {0, 0, 0}); }) == "zero_target");
  CHECK(error_code<ValidationError>([&] { r_max(h, {0.5, 0.9, 1.0}, sigma); }) == "not_in_cone");
}

TEST_CASE("rate scaling and reciprocity") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 4);
    const auto a = random_member(rng, h), b = random_member(rng, h);
    const double ab = r_max(h, a, b).rate_bisect;
    const double ba = r_max(h, b, a).rate_bisect;
    CHECK(ab * ba <= 1.0 + 1e-8);
    CHECK(r_max(h, 2.5 * a, b).rate_bisect == doctest::Approx(2.5 * ab).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("reciprocity is tight for proportional points") {
  const auto h = HamiltonianSpec::from_diagonal({0.0, 0.5, 2.0});
  const ConePoint a{0.6, 0.5, 1.0};
  const ConePoint b = 3.0 * a;
  const double prod = r_max(h, a, b).rate_bisect * r_max(h, b, a).rate_bisect;
  CHECK(prod == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("trivial hamiltonian") {
  const HamiltonianSpec h({{1.0, 3}});
  const ConePoint rho{1.0, 0.5, 1.0}, sigma{1.0, 1.0, 1.0};
  const auto r = r_max(h, rho, sigma);
  CHECK(r.rate_bisect == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(r.agreement_gap < 1e-6);
}

TEST_CASE("rate agrees on a nearly degenerate ground") {
  // Two ground levels 3.6e-5 apart; the binding facet sits near beta ~ 1e5.
  const auto h = HamiltonianSpec::from_diagonal({0.161814, 1.577982, 0.161778});
  const auto a = cone_point_of(QuantumState::matrix(diagonal_density(std::vector<double>{0.5, 5e-4, 0.4995}), 0.9), h);
  const auto b = cone_point_of(QuantumState::matrix(diagonal_density(std::vector<double>{0.1, 0.7, 0.2}), 1.7), h);
  const auto r = r_max(h, a, b);
  CHECK(r.agreement_gap < 1e-6);
}
