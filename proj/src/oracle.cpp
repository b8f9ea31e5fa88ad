#include "slipball/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "slipball/errors.hpp"

namespace slipball {

namespace {

constexpr double kPi = std::numbers::pi;

// Farthest stencil node from the evaluation point, in units of step.
double central_reach(const FDConfig& cfg) { return cfg.richardson ? 2.0 : 1.0; }
double one_sided_reach(const FDConfig& cfg) { return cfg.richardson ? 4.0 : 2.0; }

double richardson(double d_h, double d_2h) { return (4.0 * d_h - d_2h) / 3.0; }

SphPointd shifted(const SphPointd& p, Coord coord, double delta) {
  switch (coord) {
    case Coord::r:
      return {p.r + delta, p.theta, p.phi};
    case Coord::theta:
      return {p.r, p.theta + delta, p.phi};
    case Coord::phi:
      return {p.r, p.theta, p.phi + delta};
  }
  return p;
}

const char* coord_name(Coord coord) {
  switch (coord) {
    case Coord::r:
      return "r";
    case Coord::theta:
      return "theta";
    case Coord::phi:
      return "phi";
  }
  return "?";
}

[[noreturn]] void out_of_domain(Coord coord, const SphPointd& p) {
  throw StencilOutOfDomain(std::string("stencil along ") + coord_name(coord) +
                           " leaves the domain at (r=" + std::to_string(p.r) +
                           ", theta=" + std::to_string(p.theta) + ")");
}

}  // namespace

void FDConfig::validate() const {
  if (!(step >= 1e-8 && step <= 1e-2)) {
    throw std::invalid_argument("finite-difference step must lie in [1e-8, 1e-2]");
  }
}

double fd_partial(const ScalarField& f, const SphPointd& p, Coord coord,
                  const FDConfig& cfg) {
  cfg.validate();
  const double h = cfg.step;

  if (coord == Coord::r && std::abs(p.r - 1.0) <= kBoundaryRadiusTol) {
    if (p.r - one_sided_reach(cfg) * h <= 0.0) out_of_domain(coord, p);
    const double f0 = f(p);
    auto one_sided = [&](double step) {
      return (3.0 * f0 - 4.0 * f(shifted(p, coord, -step)) +
              f(shifted(p, coord, -2.0 * step))) /
             (2.0 * step);
    };
    const double d_h = one_sided(h);
    return cfg.richardson ? richardson(d_h, one_sided(2.0 * h)) : d_h;
  }

  const double reach = central_reach(cfg) * h;
  if (coord == Coord::r &&
      (p.r - reach <= 0.0 || p.r + reach >= kStencilRadiusLimit)) {
    out_of_domain(coord, p);
  }
  if (coord == Coord::theta && (p.theta - reach <= 0.0 || p.theta + reach >= kPi)) {
    out_of_domain(coord, p);
  }
  auto central = [&](double step) {
    return (f(shifted(p, coord, step)) - f(shifted(p, coord, -step))) /
           (2.0 * step);
  };
  const double d_h = central(h);
  return cfg.richardson ? richardson(d_h, central(2.0 * h)) : d_h;
}

SphVecd fd_curl_spherical(const VectorField& field, const SphPointd& p,
                          const FDConfig& cfg) {
  detail::require_regular(p, "fd_curl_spherical");
  const double r = p.r, st = std::sin(p.theta);
  auto component = [&](int i) {
    return [&field, i](const SphPointd& q) { return field(q)(i); };
  };
  const ScalarField up_sin = [&field](const SphPointd& q) {
    return field(q).phi() * std::sin(q.theta);
  };
  const ScalarField r_up = [&field](const SphPointd& q) {
    return q.r * field(q).phi();
  };
  const ScalarField r_ut = [&field](const SphPointd& q) {
    return q.r * field(q).theta();
  };
  return {(fd_partial(up_sin, p, Coord::theta, cfg) -
           fd_partial(component(1), p, Coord::phi, cfg)) /
              (r * st),
          (fd_partial(component(0), p, Coord::phi, cfg) / st -
           fd_partial(r_up, p, Coord::r, cfg)) /
              r,
          (fd_partial(r_ut, p, Coord::r, cfg) -
           fd_partial(component(0), p, Coord::theta, cfg)) /
              r};
}

double fd_divergence_spherical(const VectorField& field, const SphPointd& p,
                               const FDConfig& cfg) {
  detail::require_regular(p, "fd_divergence_spherical");
  const double r = p.r, st = std::sin(p.theta);
  const ScalarField r2_ur = [&field](const SphPointd& q) {
    return q.r * q.r * field(q).r();
  };
  const ScalarField ut_sin = [&field](const SphPointd& q) {
    return field(q).theta() * std::sin(q.theta);
  };
  const ScalarField up = [&field](const SphPointd& q) { return field(q).phi(); };
  return fd_partial(r2_ur, p, Coord::r, cfg) / (r * r) +
         fd_partial(ut_sin, p, Coord::theta, cfg) / (r * st) +
         fd_partial(up, p, Coord::phi, cfg) / (r * st);
}

Eigen::Matrix3d cartesian_jacobian(const VectorField& field, const SphPointd& p,
                                   const FDConfig& cfg) {
  cfg.validate();
  const double h = cfg.step;
  const double reach = central_reach(cfg) * h;
  const Vec3d x0 = to_cartesian_point(p);
  if (x0.norm() + reach > 1.0) {
    throw StencilOutOfDomain("Cartesian stencil leaves the unit ball");
  }
  if (x0.head<2>().norm() <= reach) {
    throw StencilOutOfDomain("Cartesian stencil reaches the polar axis");
  }

  auto cartesian_field = [&field](const Vec3d& x) -> Vec3d {
    const SphPointd q = from_cartesian_point(x);
    return vec_to_cartesian(q, field(q));
  };
  Eigen::Matrix3d jac;
  for (int j = 0; j < 3; ++j) {
    const Vec3d e = Vec3d::Unit(j);
    auto central = [&](double step) -> Vec3d {
      return (cartesian_field(x0 + step * e) - cartesian_field(x0 - step * e)) /
             (2.0 * step);
    };
    const Vec3d d_h = central(h);
    jac.col(j) = cfg.richardson ? Vec3d((4.0 * d_h - central(2.0 * h)) / 3.0) : d_h;
  }
  return jac;
}

SphVecd cartesian_curl(const VectorField& field, const SphPointd& p,
                       const FDConfig& cfg) {
  const Eigen::Matrix3d j = cartesian_jacobian(field, p, cfg);
  const Vec3d c(j(2, 1) - j(1, 2), j(0, 2) - j(2, 0), j(1, 0) - j(0, 1));
  return vec_from_cartesian(p, c);
}

double cartesian_divergence(const VectorField& field, const SphPointd& p,
                            const FDConfig& cfg) {
  return cartesian_jacobian(field, p, cfg).trace();
}

double fd_boundary_radial_derivative(const ScalarField& f, double theta,
                                     double phi, const FDConfig& cfg) {
  const SphPointd p(1.0, theta, phi);
  const ScalarField r_f = [&f](const SphPointd& q) { return q.r * f(q); };
  return fd_partial(r_f, p, Coord::r, cfg) / p.r;
}

}  // namespace slipball
