#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "slipball/errors.hpp"
#include "slipball/family.hpp"
#include "slipball/oracle.hpp"
#include "test_support.hpp"

using namespace slipball;
using slipball::testing::kPi;
using slipball::testing::PointSampler;

namespace {

const CounterexampleField& default_field() {
  static const CounterexampleField f = family_from_label("default");
  return f;
}

SphVecd rotation(const SphPointd& p) { return {0, 0, p.r * std::sin(p.theta)}; }

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("partial derivatives of elementary functions") {
    const ScalarField r2 = [](const SphPointd& p) { return p.r * p.r; };
    CHECK(std::abs(fd_partial(r2, SphPointd(0.5, 1, 0), Coord::r) - 1.0) <= 1e-10);
    const ScalarField sin_phi = [](const SphPointd& p) { return std::sin(p.phi); };
    CHECK(std::abs(fd_partial(sin_phi, SphPointd(0.5, 1, 0), Coord::phi) - 1.0) <= 1e-10);
    const ScalarField cos_t = [](const SphPointd& p) { return std::cos(p.theta); };
    CHECK(std::abs(fd_partial(cos_t, SphPointd(0.5, 1, 0), Coord::theta) + std::sin(1.0)) <= 1e-10);
  }

  TEST_CASE("phi stencils wrap across the seam") {
    const ScalarField cos_phi = [](const SphPointd& p) { return std::cos(p.phi); };
    CHECK(std::abs(fd_partial(cos_phi, SphPointd(0.5, 1, 1e-6), Coord::phi) + 1e-6) <= 1e-12);
    CHECK(std::abs(fd_partial(cos_phi, SphPointd(0.5, 1, 2 * kPi - 1e-6), Coord::phi) - 1e-6) <= 1e-12);
  }

  TEST_CASE("one-sided radial derivative on the boundary") {
    const RadialProfile h = default_profile();
    const ScalarField hf = [&h](const SphPointd& p) { return h(p.r).value; };
    CHECK(std::abs(fd_partial(hf, SphPointd(1.0, 1.0, 0.0), Coord::r) + 1.0) <= 1e-6);
    const ScalarField cubic = [](const SphPointd& p) { return p.r * p.r * p.r; };
    CHECK(std::abs(fd_partial(cubic, SphPointd(1.0, 1.0, 0.0), Coord::r) - 3.0) <= 1e-9);
  }

  TEST_CASE("central difference converges at second order") {
    const ScalarField e = [](const SphPointd& p) { return std::exp(1.0 - p.r); };
    const SphPointd p(0.7, 1.0, 0.0);
    const double exact = -std::exp(0.3);
    const double e1 = std::abs(fd_partial(e, p, Coord::r, {1e-2, false}) - exact);
    const double e2 = std::abs(fd_partial(e, p, Coord::r, {5e-3, false}) - exact);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
    // Richardson removes the leading term
    CHECK(std::abs(fd_partial(e, p, Coord::r, {1e-2, true}) - exact) < e2 / 10);
  }

  TEST_CASE("one-sided difference converges at second order") {
    const ScalarField e = [](const SphPointd& p) { return std::exp(1.0 - p.r); };
    const SphPointd p(1.0, 1.0, 0.0);
    const double e1 = std::abs(fd_partial(e, p, Coord::r, {1e-2, false}) + 1.0);
    const double e2 = std::abs(fd_partial(e, p, Coord::r, {5e-3, false}) + 1.0);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
  }

  TEST_CASE("spherical finite-difference curl") {
    const SphPointd p(0.6, 1.1, 0.4);
    const SphVecd c = fd_curl_spherical(rotation, p);
    CHECK((c - SphVecd(2 * std::cos(p.theta), -2 * std::sin(p.theta), 0)).norm() <= 1e-9);

    const VectorField u = [](const SphPointd& q) { return u_field(default_field(), q); };
    PointSampler s(41);
    for (int n = 0; n < 50; ++n) {
      const SphPointd q = s.interior(0.3, 0.99, 0.1);
      const SphVecd w = omega_field(default_field(), q);
      CHECK((fd_curl_spherical(u, q) - w).norm() <= 1e-4 * std::max(1.0, w.norm()));
    }
  }

  TEST_CASE("curl of a gradient field vanishes under the oracle") {
    PointSampler s(42);
    for (int n = 0; n < 20; ++n) {
      const auto f = slipball::testing::CartesianCubic::random(s);
      const VectorField grad = [&f](const SphPointd& q) {
        return SphVecd(vec_from_cartesian(q, f.grad(to_cartesian_point(q))));
      };
      const SphPointd q = s.interior(0.3, 0.9, 0.2);
      CHECK(fd_curl_spherical(grad, q).norm() <= 1e-8);
      CHECK(cartesian_curl(grad, q).norm() <= 1e-8);
    }
  }

  TEST_CASE("Cartesian curl") {
    const SphPointd p(0.6, 1.1, 0.4);
    CHECK((cartesian_curl(rotation, p) - SphVecd(2 * std::cos(p.theta), -2 * std::sin(p.theta), 0))
              .norm() <= 1e-9);
    const VectorField ez = [](const SphPointd& q) {
      return SphVecd(std::cos(q.theta), -std::sin(q.theta), 0);
    };
    CHECK(cartesian_curl(ez, p).norm() <= 1e-8);
    CHECK(std::abs(cartesian_divergence(ez, p)) <= 1e-8);

    const VectorField u = [](const SphPointd& q) { return u_field(default_field(), q); };
    PointSampler s(43);
    for (int n = 0; n < 50; ++n) {
      const SphPointd q = s.interior(0.3, 0.99, 0.1);
      const SphVecd w = omega_field(default_field(), q);
      CHECK((cartesian_curl(u, q) - w).norm() <= 1e-4 * std::max(1.0, w.norm()));
    }
  }

  TEST_CASE("the two curl routes agree") {
    const VectorField u = [](const SphPointd& q) { return u_field(default_field(), q); };
    PointSampler s(44);
    for (int n = 0; n < 50; ++n) {
      const SphPointd q = s.interior(0.3, 0.99, 0.1);
      const SphVecd a = fd_curl_spherical(u, q), b = cartesian_curl(u, q);
      CHECK((a - b).norm() <= 1e-4 * std::max(1.0, a.norm()));
    }
  }

  TEST_CASE("divergence of the vorticity vanishes") {
    const VectorField w = [](const SphPointd& q) { return omega_field(default_field(), q); };
    PointSampler s(45);
    for (int n = 0; n < 100; ++n) {
      const SphPointd q = s.interior(0.3, 0.99, 0.1);
      CHECK(std::abs(fd_divergence_spherical(w, q)) <= 1e-6);
    }
  }

  TEST_CASE("boundary radial derivative") {
    const ScalarField v_phi = [](const SphPointd& q) { return v_field(default_field(), q).phi(); };
    CHECK(std::abs(fd_boundary_radial_derivative(v_phi, kPi / 2, kPi / 4) - 1.0) <= 1e-4);
    const ScalarField c = [](const SphPointd&) { return 2.5; };
    CHECK(std::abs(fd_boundary_radial_derivative(c, 1.0, 0.3) - 2.5) <= 1e-10);
    const ScalarField inv = [](const SphPointd& q) { return 1.0 / q.r; };
    CHECK(std::abs(fd_boundary_radial_derivative(inv, 1.0, 0.3)) <= 1e-10);
  }

  TEST_CASE("stencils that leave the domain are refused") {
    const ScalarField one = [](const SphPointd&) { return 1.0; };
    CHECK_THROWS_AS(fd_partial(one, SphPointd(1e-5, 1.0, 0.0), Coord::r), StencilOutOfDomain);
    CHECK_THROWS_AS(fd_partial(one, SphPointd(0.5, 1e-5, 0.0), Coord::theta), StencilOutOfDomain);
    CHECK_THROWS_AS(fd_partial(one, SphPointd(0.5, kPi - 1e-5, 0.0), Coord::theta),
                    StencilOutOfDomain);
    CHECK_THROWS_AS(fd_partial(one, SphPointd(1.05, 1.0, 0.0), Coord::r), StencilOutOfDomain);
    CHECK_THROWS_AS(cartesian_curl(rotation, SphPointd(1.0, 1.0, 0.0)), StencilOutOfDomain);
    CHECK_THROWS_AS(cartesian_curl(rotation, SphPointd(0.5, 1e-5, 0.0)), StencilOutOfDomain);
    CHECK_THROWS_AS(fd_curl_spherical(rotation, SphPointd(0.5, 0.0, 0.0)), CoordinateSingularity);
  }

  TEST_CASE("step size is validated") {
    const ScalarField one = [](const SphPointd&) { return 1.0; };
    const SphPointd p(0.5, 1.0, 0.0);
    CHECK_THROWS_AS(fd_partial(one, p, Coord::r, {1e-9, true}), std::invalid_argument);
    CHECK_THROWS_AS(fd_partial(one, p, Coord::r, {0.1, true}), std::invalid_argument);
    CHECK_THROWS_AS(fd_partial(one, p, Coord::r, {-1e-4, true}), std::invalid_argument);
    CHECK_NOTHROW(fd_partial(one, p, Coord::r, {1e-8, true}));
    CHECK_NOTHROW(fd_partial(one, p, Coord::r, {1e-2, false}));
  }
}
