#pragma once

// Spherical-coordinate geometry and differential operators.
//
// Conventions: theta is the colatitude in [0, pi], phi the longitude reduced
// to [0, 2 pi). Vector components are taken in the orthonormal, positively
// oriented local basis (e_r, e_theta, e_phi):
//
//   e_r     = ( sin t cos p,  sin t sin p,  cos t)
//   e_theta = ( cos t cos p,  cos t sin p, -sin t)
//   e_phi   = (-sin p,        cos p,        0    )
//
// All partial derivatives carried by ScalarJet are with respect to the raw
// coordinates (r, theta, phi); the metric factors live in the operators.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

#include "slipball/errors.hpp"

namespace slipball {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

/// Columns are the Cartesian images of e_r, e_theta, e_phi.
template <typename Scalar>
using Basis = Eigen::Matrix<Scalar, 3, 3>;

/// Threshold below which r or sin(theta) is treated as singular.
inline constexpr double kSingularityGuard = 1e-9;

template <typename Scalar>
struct SphPoint {
  Scalar r{0};
  Scalar theta{0};
  Scalar phi{0};

  SphPoint() = default;

  /// Validates r >= 0 and theta in [0, pi]; reduces phi to [0, 2 pi).
  SphPoint(Scalar r_, Scalar theta_, Scalar phi_)
      : r(r_), theta(theta_), phi(normalize_phi(phi_)) {
    if (!(r >= Scalar(0)) || !(theta >= Scalar(0)) ||
        !(theta <= Scalar(std::numbers::pi))) {
      throw std::domain_error("SphPoint: need r >= 0 and theta in [0, pi]");
    }
  }

  static Scalar normalize_phi(Scalar phi) {
    using std::fmod;
    const Scalar two_pi = Scalar(2 * std::numbers::pi);
    Scalar out = fmod(phi, two_pi);
    if (out < Scalar(0)) out += two_pi;
    if (out >= two_pi) out = Scalar(0);
    return out;
  }
};

/// Components of a vector in the local basis at some point.
template <typename Scalar>
class SphVec : public Vec3<Scalar> {
  using Base = Vec3<Scalar>;

 public:
  SphVec() : Base(Base::Zero()) {}
  SphVec(Scalar vr, Scalar vtheta, Scalar vphi) : Base(vr, vtheta, vphi) {}

  template <typename Derived>
  SphVec(const Eigen::MatrixBase<Derived>& other) : Base(other) {}

  template <typename Derived>
  SphVec& operator=(const Eigen::MatrixBase<Derived>& other) {
    this->Base::operator=(other);
    return *this;
  }

  Scalar& r() { return (*this)(0); }
  Scalar& theta() { return (*this)(1); }
  Scalar& phi() { return (*this)(2); }
  Scalar r() const { return (*this)(0); }
  Scalar theta() const { return (*this)(1); }
  Scalar phi() const { return (*this)(2); }
};

/// Value and partial derivatives (to second order) of a scalar function of
/// (r, theta, phi). Mixed partials are stored once per unordered pair.
template <typename Scalar>
struct ScalarJet {
  Scalar value{0};
  Scalar d_r{0}, d_theta{0}, d_phi{0};
  Scalar d_rr{0}, d_rtheta{0}, d_rphi{0};
  Scalar d_thetatheta{0}, d_thetaphi{0}, d_phiphi{0};
};

using SphPointd = SphPoint<double>;
using SphVecd = SphVec<double>;
using ScalarJetd = ScalarJet<double>;
using Vec3d = Vec3<double>;

// ---------------------------------------------------------------------------
// Geometry

template <typename Scalar>
Vec3<Scalar> to_cartesian_point(const SphPoint<Scalar>& p) {
  using std::cos;
  using std::sin;
  const Scalar st = sin(p.theta);
  return {p.r * st * cos(p.phi), p.r * st * sin(p.phi), p.r * cos(p.theta)};
}

/// Inverse chart. At the origin theta = phi = 0; on the axis phi = 0.
template <typename Scalar>
SphPoint<Scalar> from_cartesian_point(const Vec3<Scalar>& x) {
  using std::atan2;
  using std::hypot;
  const Scalar rho = hypot(x.x(), x.y());
  const Scalar r = hypot(rho, x.z());
  const Scalar theta = atan2(rho, x.z());
  const Scalar phi = atan2(x.y(), x.x());
  return SphPoint<Scalar>(r, theta, phi);
}

template <typename Scalar>
Basis<Scalar> basis_at(const SphPoint<Scalar>& p) {
  using std::abs;
  using std::cos;
  using std::sin;
  if (p.theta < Scalar(kSingularityGuard) ||
      abs(Scalar(std::numbers::pi) - p.theta) < Scalar(kSingularityGuard)) {
    throw PoleDegeneracy("local basis is undefined at theta = " +
                         std::to_string(static_cast<double>(p.theta)));
  }
  const Scalar st = sin(p.theta), ct = cos(p.theta);
  const Scalar sp = sin(p.phi), cp = cos(p.phi);
  Basis<Scalar> b;
  b.col(0) << st * cp, st * sp, ct;
  b.col(1) << ct * cp, ct * sp, -st;
  b.col(2) << -sp, cp, Scalar(0);
  return b;
}

template <typename Scalar, typename Derived>
Vec3<Scalar> vec_to_cartesian(const SphPoint<Scalar>& p,
                              const Eigen::MatrixBase<Derived>& v) {
  return basis_at(p) * v;
}

template <typename Scalar, typename Derived>
SphVec<Scalar> vec_from_cartesian(const SphPoint<Scalar>& p,
                                  const Eigen::MatrixBase<Derived>& w) {
  return SphVec<Scalar>(basis_at(p).transpose() * w);
}

// ---------------------------------------------------------------------------
// Local algebra

template <typename Scalar>
SphVec<Scalar> cross(const SphVec<Scalar>& a, const SphVec<Scalar>& b) {
  return SphVec<Scalar>(a.cross(b));
}

template <typename Scalar>
Scalar dot(const SphVec<Scalar>& a, const SphVec<Scalar>& b) {
  return a.dot(b);
}

// ---------------------------------------------------------------------------
// Differential operators

namespace detail {

template <typename Scalar>
void require_regular(const SphPoint<Scalar>& p, const char* op) {
  using std::sin;
  if (p.r < Scalar(kSingularityGuard) ||
      sin(p.theta) < Scalar(kSingularityGuard)) {
    throw CoordinateSingularity(std::string(op) +
                                ": r or sin(theta) below singularity guard");
  }
}

}  // namespace detail

/// (1/r^2) d_r(r^2 u_r) + (1/(r sin t)) d_t(u_t sin t) + (1/(r sin t)) d_p u_p
template <typename Scalar>
Scalar divergence(const SphPoint<Scalar>& p,
                  std::span<const ScalarJet<std::type_identity_t<Scalar>>, 3> u) {
  using std::cos;
  using std::sin;
  detail::require_regular(p, "divergence");
  const Scalar r = p.r, st = sin(p.theta), ct = cos(p.theta);
  const auto& ur = u[0];
  const auto& ut = u[1];
  const auto& up = u[2];
  const Scalar radial = (Scalar(2) * r * ur.value + r * r * ur.d_r) / (r * r);
  const Scalar polar = (ut.d_theta * st + ut.value * ct) / (r * st);
  const Scalar azimuthal = up.d_phi / (r * st);
  return radial + polar + azimuthal;
}

template <typename Scalar>
SphVec<Scalar> curl(const SphPoint<Scalar>& p,
                    std::span<const ScalarJet<std::type_identity_t<Scalar>>, 3> u) {
  using std::cos;
  using std::sin;
  detail::require_regular(p, "curl");
  const Scalar r = p.r, st = sin(p.theta), ct = cos(p.theta);
  const auto& ur = u[0];
  const auto& ut = u[1];
  const auto& up = u[2];
  // d_t(u_p sin t), d_r(r u_p), d_r(r u_t)
  const Scalar dt_up_st = up.d_theta * st + up.value * ct;
  const Scalar dr_r_up = up.value + r * up.d_r;
  const Scalar dr_r_ut = ut.value + r * ut.d_r;
  return {(dt_up_st - ut.d_phi) / (r * st),
          (ur.d_phi / st - dr_r_up) / r,
          (dr_r_ut - ur.d_theta) / r};
}

template <typename Scalar>
SphVec<Scalar> gradient(const SphPoint<Scalar>& p, const ScalarJet<Scalar>& f) {
  using std::sin;
  detail::require_regular(p, "gradient");
  const Scalar r = p.r, st = sin(p.theta);
  return {f.d_r, f.d_theta / r, f.d_phi / (r * st)};
}

/// First-order jets of the three components of grad f, built from the second
/// partials of f. Second-order entries of the result are NaN (not available).
template <typename Scalar>
std::array<ScalarJet<Scalar>, 3> gradient_jets(const SphPoint<Scalar>& p,
                                               const ScalarJet<Scalar>& f) {
  using std::cos;
  using std::sin;
  detail::require_regular(p, "gradient_jets");
  const Scalar r = p.r, st = sin(p.theta), ct = cos(p.theta);
  const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
  auto blank = [nan] {
    ScalarJet<Scalar> j;
    j.d_rr = j.d_rtheta = j.d_rphi = nan;
    j.d_thetatheta = j.d_thetaphi = j.d_phiphi = nan;
    return j;
  };
  std::array<ScalarJet<Scalar>, 3> g{blank(), blank(), blank()};
  // g_r = f_r
  g[0].value = f.d_r;
  g[0].d_r = f.d_rr;
  g[0].d_theta = f.d_rtheta;
  g[0].d_phi = f.d_rphi;
  // g_t = f_t / r
  g[1].value = f.d_theta / r;
  g[1].d_r = f.d_rtheta / r - f.d_theta / (r * r);
  g[1].d_theta = f.d_thetatheta / r;
  g[1].d_phi = f.d_thetaphi / r;
  // g_p = f_p / (r sin t)
  g[2].value = f.d_phi / (r * st);
  g[2].d_r = f.d_rphi / (r * st) - f.d_phi / (r * r * st);
  g[2].d_theta = f.d_thetaphi / (r * st) - f.d_phi * ct / (r * st * st);
  g[2].d_phi = f.d_phiphi / (r * st);
  return g;
}

}  // namespace slipball
