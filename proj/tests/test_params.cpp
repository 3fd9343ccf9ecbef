#include <doctest.h>

#include <random>

#include "piezolab/params.hpp"
#include "piezolab/state.hpp"

using namespace piezolab;

TEST_CASE("effective stiffness") {
  BeamParameters p;
  p.alpha1 = 1.0; p.gamma = 1.0; p.beta = 1.0;
  CHECK(p.effective_stiffness() == doctest::Approx(2.0).epsilon(1e-15));
  p.alpha1 = 3.0; p.gamma = 0.0; p.beta = 7.0;
  CHECK(p.effective_stiffness() == doctest::Approx(3.0).epsilon(1e-15));
  p.alpha1 = 2.0; p.gamma = 2.0; p.beta = 0.5;
  CHECK(p.effective_stiffness() == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("dissipation rate") {
  BeamParameters p;
  CHECK(dissipation_rate(0.0, 0.0, p) == 0.0);
  p.xi1 = 2.0; p.xi2 = 3.0;
  CHECK(dissipation_rate(1.0, 2.0, p) == doctest::Approx(-14.0));
  p.xi1 = 0.0; p.xi2 = 0.0;
  CHECK(dissipation_rate(0.3, -17.0, p) == 0.0);

  // sign-flip invariance
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  BeamParameters q;
  q.xi1 = 0.7; q.xi2 = 1.9;
  for (int i = 0; i < 50; ++i) {
    const double u = dist(rng), eta = dist(rng);
    CHECK(dissipation_rate(u, eta, q) == dissipation_rate(-u, -eta, q));
    CHECK(dissipation_rate(u, eta, q) <= 0.0);
  }
}

TEST_CASE("validate") {
  BeamParameters p;
  CHECK(validate(p).ok());
  CHECK(validate(p).warnings.empty());

  p.rho = 0.0;
  auto rep = validate(p);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.errors[0] == "rho must be > 0");

  BeamParameters q;
  q.m1 = -1.0;
  rep = validate(q);
  REQUIRE(rep.errors.size() == 1);
  CHECK(rep.errors[0] == "m1 must be >= 0");

  // every violation is reported, not just the first
  BeamParameters bad;
  bad.rho = -1.0; bad.beta = 0.0; bad.xi2 = -0.5;
  rep = validate(bad);
  CHECK(rep.errors.size() == 3);
  CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);

  BeamParameters warned;
  warned.gamma = 0.0; warned.xi1 = warned.xi2 = 0.0; warned.m1 = warned.m2 = 0.0;
  rep = validate(warned);
  CHECK(rep.ok());
  CHECK(rep.warnings.size() == 3);
}

TEST_CASE("energy of sampled states") {
  const Mesh mesh = build_mesh(8, 1.0);
  BeamParameters p;

  SUBCASE("zero state") {
    const auto e = energy(SampledState::zero(9), mesh, p);
    CHECK(e.total == 0.0);
    CHECK(e.kinetic_v == 0.0);
    CHECK(e.tip_p == 0.0);
  }

  SUBCASE("linear displacement, exact elastic and coupling split") {
    // V = x with alpha1 = beta = gamma = 1: V_x = 1 so the elastic and
    // coupling terms each integrate to 1/2
    auto s = SampledState::zero(9);
    s.v = mesh.nodes;
    const auto e = energy(s, mesh, p);
    CHECK(e.elastic == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e.magnetic_coupling == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e.total == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("constant velocity with tip mass") {
    BeamParameters q;
    q.rho = 2.0; q.m1 = 0.7;
    auto s = SampledState::zero(9);
    s.v_t.setOnes();
    s.tip_u = s.v_t(8);
    const auto e = energy(s, mesh, q);
    CHECK(e.kinetic_v == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.tip_v == doctest::Approx(0.5 * 0.7).epsilon(1e-14));
    CHECK(e.total == doctest::Approx(1.0 + 0.5 * 0.7).epsilon(1e-14));
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(energy(SampledState::zero(5), mesh, p),
                    std::invalid_argument);
  }

  SUBCASE("non-negative, zero only for the zero state") {
    std::mt19937 rng(3);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 20; ++trial) {
      auto s = SampledState::zero(9);
      for (int i = 1; i < 9; ++i) {
        s.v(i) = dist(rng);
        s.p(i) = dist(rng);
        s.v_t(i) = dist(rng);
        s.p_t(i) = dist(rng);
      }
      s.v_t(0) = dist(rng);
      s.tip_u = s.v_t(8);
      s.tip_eta = s.p_t(8);
      const auto e = energy(s, mesh, p);
      CHECK(e.total > 0.0);
      CHECK(e.total ==
            doctest::Approx(e.kinetic_v + e.kinetic_p + e.elastic +
                            e.magnetic_coupling + e.tip_v + e.tip_p));
    }
  }
}

TEST_CASE("stiffness coupling identity") {
  // alpha|vx|^2 - 2 gamma beta vx px + beta|px|^2
  //   = alpha1|vx|^2 + beta|gamma vx - px|^2 for alpha = alpha1 + gamma^2 beta
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha1 = pos(rng), beta = pos(rng), gamma = pos(rng);
    const double alpha = alpha1 + gamma * gamma * beta;
    const double vx = dist(rng), px = dist(rng);
    const double lhs = alpha * vx * vx - 2.0 * gamma * beta * vx * px + beta * px * px;
    const double mix = gamma * vx - px;
    const double rhs = alpha1 * vx * vx + beta * mix * mix;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("material matrix positive definite") {
  // [[alpha, -gb], [-gb, beta]] for alpha1, beta > 0
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pos(0.05, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha1 = pos(rng), beta = pos(rng), gamma = pos(rng);
    const double alpha = alpha1 + gamma * gamma * beta;
    const double gb = gamma * beta;
    const double trace = alpha + beta;
    const double det = alpha * beta - gb * gb;  // = alpha1 * beta > 0
    CHECK(det > 0.0);
    CHECK(trace > 0.0);
    CHECK(det == doctest::Approx(alpha1 * beta).epsilon(1e-12));
  }
}
