#include <array>
#include <cmath>

#include "doctest.h"
#include "slipball/family.hpp"
#include "slipball/oracle.hpp"
#include "slipball/sphcalc.hpp"
#include "test_support.hpp"

using namespace slipball;
using slipball::testing::kPi;
using slipball::testing::PointSampler;

namespace {

void near_vec(const Eigen::Vector3d& got, const Eigen::Vector3d& want, double tol) {
  INFO("got " << got.transpose() << " want " << want.transpose());
  CHECK((got - want).cwiseAbs().maxCoeff() <= tol);
}

// Constant field e_z in spherical components.
std::array<ScalarJetd, 3> ez_jets(const SphPointd& p) {
  std::array<ScalarJetd, 3> u{};
  u[0].value = std::cos(p.theta);
  u[0].d_theta = -std::sin(p.theta);
  u[1].value = -std::sin(p.theta);
  u[1].d_theta = -std::cos(p.theta);
  return u;
}

// Rigid rotation about z: u_phi = r sin t.
std::array<ScalarJetd, 3> rotation_jets(const SphPointd& p) {
  std::array<ScalarJetd, 3> u{};
  u[2].value = p.r * std::sin(p.theta);
  u[2].d_r = std::sin(p.theta);
  u[2].d_theta = p.r * std::cos(p.theta);
  return u;
}

}  // namespace

TEST_SUITE("sphcalc") {
  TEST_CASE("to_cartesian_point on axis points") {
    near_vec(to_cartesian_point(SphPointd(1, kPi / 2, 0)), {1, 0, 0}, 1e-15);
    near_vec(to_cartesian_point(SphPointd(1, 0, 2.3)), {0, 0, 1}, 1e-15);
    near_vec(to_cartesian_point(SphPointd(0.5, kPi / 2, kPi / 2)), {0, 0.5, 0}, 1e-15);
  }

  TEST_CASE("phi is normalized to [0, 2pi) at construction") {
    CHECK(SphPointd(1, 1, -kPi / 2).phi == doctest::Approx(3 * kPi / 2));
    CHECK(SphPointd(1, 1, 2 * kPi).phi == 0.0);
    CHECK(SphPointd(1, 1, 5 * kPi).phi == doctest::Approx(kPi));
    CHECK_THROWS_AS(SphPointd(-0.1, 1, 0), std::domain_error);
    CHECK_THROWS_AS(SphPointd(0.5, 4.0, 0), std::domain_error);
  }

  TEST_CASE("Cartesian round trip and norm") {
    PointSampler s(11);
    for (int n = 0; n < 500; ++n) {
      const SphPointd p(s.uniform(1e-6, 1.0), s.uniform(1e-6, kPi - 1e-6), s.uniform(0, 2 * kPi));
      const Eigen::Vector3d x = to_cartesian_point(p);
      CHECK(std::abs(x.norm() - p.r) <= 1e-12 * p.r);
      const SphPointd q = from_cartesian_point(x);
      CHECK(std::abs(q.r - p.r) <= 1e-12);
      CHECK(std::abs(q.theta - p.theta) <= 1e-12);
      // phi compared on the circle
      CHECK(std::abs(std::remainder(q.phi - p.phi, 2 * kPi)) <= 1e-12);
    }
  }

  TEST_CASE("basis at equatorial points") {
    const Basis<double> b0 = basis_at(SphPointd(1, kPi / 2, 0));
    near_vec(b0.col(0), {1, 0, 0}, 1e-15);
    near_vec(b0.col(1), {0, 0, -1}, 1e-15);
    near_vec(b0.col(2), {0, 1, 0}, 1e-15);
    const Basis<double> b1 = basis_at(SphPointd(1, kPi / 2, kPi / 2));
    near_vec(b1.col(0), {0, 1, 0}, 1e-15);
    near_vec(b1.col(1), {0, 0, -1}, 1e-15);
    near_vec(b1.col(2), {-1, 0, 0}, 1e-15);
  }

  TEST_CASE("basis is orthonormal and positively oriented") {
    PointSampler s(12);
    for (int n = 0; n < 200; ++n) {
      const SphPointd p = s.interior(0.01, 1.0, 1e-6);
      const Basis<double> b = basis_at(p);
      CHECK((b.transpose() * b - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((b.col(0).cross(b.col(1)) - b.col(2)).norm() <= 1e-12);
    }
  }

  TEST_CASE("basis refuses the poles") {
    CHECK_THROWS_AS(basis_at(SphPointd(1, 0, 0)), PoleDegeneracy);
    CHECK_THROWS_AS(basis_at(SphPointd(1, kPi - 1e-10, 0)), PoleDegeneracy);
    CHECK_NOTHROW(basis_at(SphPointd(1, 1e-8, 0)));
  }

  TEST_CASE("vector basis change") {
    const SphPointd p(0.8, kPi / 3, 1.1);
    near_vec(vec_to_cartesian(p, SphVecd(1, 0, 0)), basis_at(p).col(0), 1e-15);
    const SphVecd v(0.3, -0.7, 0.2);
    near_vec(vec_from_cartesian(p, vec_to_cartesian(p, v)), v, 1e-12);
    CHECK(vec_to_cartesian(p, SphVecd(3, 4, 0)).norm() == doctest::Approx(5).epsilon(1e-12));
    CHECK_THROWS_AS(vec_to_cartesian(SphPointd(1, 0, 0), v), PoleDegeneracy);
  }

  TEST_CASE("cross and dot") {
    near_vec(cross(SphVecd(1, 0, 0), SphVecd(0, 1, 0)), {0, 0, 1}, 0);
    near_vec(cross(SphVecd(1, 2, 3), SphVecd(1, 2, 3)), {0, 0, 0}, 0);
    // omega x n with n = e_r is (0, omega_phi, -omega_theta)
    near_vec(cross(SphVecd(1, 2, 3), SphVecd(1, 0, 0)), {0, 3, -2}, 0);
    PointSampler s(13);
    for (int n = 0; n < 100; ++n) {
      const SphVecd a(s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1));
      const SphVecd b(s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1));
      near_vec(cross(a, b), -cross(b, a), 1e-15);
      CHECK(std::abs(dot(cross(a, b), a)) <= 1e-12);
    }
  }

  TEST_CASE("divergence of simple fields") {
    const SphPointd p(0.5, kPi / 3, 0.2);
    CHECK(std::abs(divergence(p, ez_jets(p))) <= 1e-12);

    std::array<ScalarJetd, 3> radial{};
    radial[0].value = 0.7;
    radial[0].d_r = 1.0;
    CHECK(divergence(SphPointd(0.7, 1.2, 3.0), radial) == doctest::Approx(3.0));
  }

  TEST_CASE("curl of simple fields") {
    const SphPointd p(0.6, 1.1, 0.4);
    near_vec(curl(p, ez_jets(p)), {0, 0, 0}, 1e-12);
    near_vec(curl(p, rotation_jets(p)),
             {2 * std::cos(p.theta), -2 * std::sin(p.theta), 0}, 1e-12);
  }

  TEST_CASE("gradient of simple scalars") {
    const SphPointd p(0.5, 0.9, 2.0);
    ScalarJetd r;
    r.value = p.r;
    r.d_r = 1;
    near_vec(gradient(p, r), {1, 0, 0}, 1e-15);

    ScalarJetd z;
    z.value = p.r * std::cos(p.theta);
    z.d_r = std::cos(p.theta);
    z.d_theta = -p.r * std::sin(p.theta);
    near_vec(gradient(p, z), {std::cos(p.theta), -std::sin(p.theta), 0}, 1e-15);

    ScalarJetd r2;
    r2.value = p.r * p.r;
    r2.d_r = 2 * p.r;
    near_vec(gradient(p, r2), {1.0, 0, 0}, 1e-15);
  }

  TEST_CASE("operators refuse singular points") {
    std::array<ScalarJetd, 3> u{};
    CHECK_THROWS_AS(divergence(SphPointd(1e-10, 1, 0), u), CoordinateSingularity);
    CHECK_THROWS_AS(curl(SphPointd(0.5, 1e-10, 0), u), CoordinateSingularity);
    CHECK_THROWS_AS(gradient(SphPointd(0.5, kPi, 0), ScalarJetd{}), CoordinateSingularity);
  }

  TEST_CASE("gradient of pulled-back Cartesian cubics matches the Cartesian gradient") {
    PointSampler s(14);
    for (int n = 0; n < 100; ++n) {
      const auto f = slipball::testing::CartesianCubic::random(s);
      const SphPointd p = s.interior();
      const Eigen::Vector3d want = vec_from_cartesian(p, f.grad(to_cartesian_point(p)));
      near_vec(gradient(p, slipball::testing::pullback_jet(f, p)), want, 1e-12);
    }
  }

  TEST_CASE("curl of a gradient vanishes") {
    PointSampler s(15);
    for (int n = 0; n < 100; ++n) {
      const auto f = slipball::testing::CartesianCubic::random(s);
      const SphPointd p = s.interior();
      const auto jets = gradient_jets(p, slipball::testing::pullback_jet(f, p));
      near_vec(curl(p, jets), {0, 0, 0}, 1e-10);
    }
  }

  TEST_CASE("divergence of the counterexample field vanishes") {
    const CounterexampleField f = family_from_label("default");
    PointSampler s(16);
    for (int n = 0; n < 100; ++n) {
      const SphPointd p = s.interior(0.05, 1.0);
      const auto jets = u_jets(f, p);
      CHECK(std::abs(divergence(p, jets)) <= 1e-10);
    }
  }

  TEST_CASE("curl of the counterexample field matches the closed form") {
    const CounterexampleField f = family_from_label("default");
    const SphPointd p(0.9, kPi / 2, kPi / 4);
    near_vec(curl(p, u_jets(f, p)), omega_field(f, p), 1e-10);
  }

  TEST_CASE("operators agree with the Cartesian oracle on an interior grid") {
    const CounterexampleField f = family_from_label("default");
    const VectorField u = [&f](const SphPointd& q) { return u_field(f, q); };
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 8; ++j) {
        for (int k = 0; k < 8; ++k) {
          const SphPointd p(0.3 + 0.1 * i, 0.3 + (kPi - 0.6) * j / 7, 2 * kPi * k / 8 + 0.1);
          const auto jets = u_jets(f, p);
          const SphVecd analytic = curl(p, jets);
          const SphVecd oracle = cartesian_curl(u, p);
          CHECK((analytic - oracle).norm() <= 1e-5 * std::max(1.0, analytic.norm()));
          CHECK(std::abs(divergence(p, jets) - cartesian_divergence(u, p)) <= 1e-5);
        }
      }
    }
  }
}
