#pragma once

// The counterexample family on the unit ball:
//
//   u = -(h(r) / sin t) g_p e_theta + h(r) g_t e_phi
//
// with h vanishing near r = 0 and g vanishing near the poles. The field is
// divergence free and tangent to the unit sphere for every (h, g); the
// vorticity is tangent-free on the sphere iff h(1) + h'(1) = 0.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "slipball/smooth_step.hpp"
#include "slipball/sphcalc.hpp"

namespace slipball {

/// h(r) with h' and h''. `support_inner` is a radius at or below which h is
/// identically zero.
struct RadialProfile {
  std::function<Jet1(double)> eval;
  double support_inner{0.0};
  std::string label;

  Jet1 operator()(double r) const { return eval(r); }
};

/// g(theta, phi) with partials to second order.
struct AngularJet {
  double g{0};
  double g_theta{0};
  double g_phi{0};
  double g_thetatheta{0};
  double g_thetaphi{0};
  double g_phiphi{0};
};

/// g(theta, phi), 2 pi periodic in phi, identically zero for theta within
/// `pole_margin` of either pole.
struct AngularFunction {
  std::function<AngularJet(double, double)> eval;
  double pole_margin{0.0};
  std::string label;

  AngularJet operator()(double theta, double phi) const {
    return eval(theta, phi);
  }
};

// Built-in profiles. The smooth cutoff chi rises from 0 at r = 1/4 to 1 at
// r = 1/2.
Jet1 radial_cutoff(double r);

/// chi(r) exp(1 - r): h(1) = 1, h'(1) = -1.
RadialProfile default_profile();
/// chi(r) alone: h(1) = 1, h'(1) = 0, so the slip condition fails.
RadialProfile cutoff_profile();
/// chi(r) (1 - r)^2: h(1) = h'(1) = 0.
RadialProfile h1zero_profile();
/// base(r) (1 + eps (r - 3/4)^2). For any base,
/// h_eps(1) + h_eps'(1) = (h(1) + h'(1))(1 + eps/16) + eps h(1) / 2.
RadialProfile perturbed_profile(const RadialProfile& base, double eps);
/// lambda * base(r).
RadialProfile scaled_profile(const RadialProfile& base, double lambda);

/// Polar bump psi: 0 outside [pi/4, 3pi/4], 1 on [3pi/8, 5pi/8].
Jet1 polar_bump(double theta);

/// psi(theta) sin(phi + phase); pole margin pi/4.
AngularFunction default_angular(double phase = 0.0);
/// g identically zero.
AngularFunction zero_angular();

struct BoundaryPoint {
  double theta{0};
  double phi{0};
};

/// Boundary points satisfying g_p G != 0 (a1) and g_t G != 0 (a2).
struct Witnesses {
  std::optional<BoundaryPoint> a1;
  std::optional<BoundaryPoint> a2;
};

inline constexpr double kWitnessThreshold = 1e-6;
inline constexpr std::size_t kWitnessGridTheta = 128;
inline constexpr std::size_t kWitnessGridPhi = 256;
/// |h(1) + h'(1)| above this fails the slip hypothesis.
inline constexpr double kSlipHypothesisTolerance = 1e-12;

struct AdmissibilityReport {
  double slip_condition_residual{0};  // |h(1) + h'(1)|
  double h1{0};
  bool h1_nonzero{false};
  bool pole_margin_ok{false};
  bool support_ok{false};
  bool periodicity_ok{false};
  std::optional<BoundaryPoint> witness_a1;
  std::optional<BoundaryPoint> witness_a2;

  bool slip_ok() const {
    return slip_condition_residual <= kSlipHypothesisTolerance;
  }
  /// Slip hypothesis plus the structural support assumptions.
  bool admissible() const {
    return slip_ok() && pole_margin_ok && support_ok && periodicity_ok;
  }
};

/// Immutable pairing of a radial profile and an angular function. The
/// admissibility report is computed once at construction.
class CounterexampleField {
 public:
  CounterexampleField(RadialProfile profile, AngularFunction angular,
                      std::string label = {});

  const RadialProfile& profile() const { return profile_; }
  const AngularFunction& angular() const { return angular_; }
  const std::string& label() const { return label_; }
  double h1() const { return h1_; }
  double dh1() const { return dh1_; }
  const AdmissibilityReport& admissibility() const { return admissibility_; }

  /// False where the field and all its derivatives vanish by support.
  bool in_support(double r, double theta) const;
  bool in_angular_support(double theta) const;

 private:
  RadialProfile profile_;
  AngularFunction angular_;
  std::string label_;
  double h1_{0};
  double dh1_{0};
  AdmissibilityReport admissibility_;
};

/// Built-in families: "default", "h1zero", "perturbed:<eps>".
CounterexampleField family_from_label(std::string_view label);

/// G = d_t(sin t g_t) + g_pp / sin t = cos t g_t + sin t g_tt + g_pp / sin t.
double big_G(const AngularFunction& angular, double theta, double phi);

SphVecd u_field(const CounterexampleField& f, const SphPointd& p);

/// Jets of (u_r, u_theta, u_phi) from the analytic derivatives of h and g.
/// First partials are exact. Second partials that would need third
/// derivatives of g are NaN.
std::array<ScalarJetd, 3> u_jets(const CounterexampleField& f,
                                 const SphPointd& p);

/// omega = h G / (r sin t) e_r - (rh)' g_t / r e_theta - (rh)' g_p / (r sin t) e_phi
SphVecd omega_field(const CounterexampleField& f, const SphPointd& p);

/// v = u x omega, using u_r = 0.
SphVecd v_field(const CounterexampleField& f, const SphPointd& p);

/// [curl v]_theta on r = 1: -(2 / sin^2 t) h(1) h'(1) g_p G.
double boundary_curl_v_theta(const CounterexampleField& f, double theta,
                             double phi);

/// [curl v]_phi on r = 1: (2 / sin t) h(1) h'(1) g_t G. Derived here rather
/// than quoted; callers must gate it against the finite-difference oracle.
double boundary_curl_v_phi(const CounterexampleField& f, double theta,
                           double phi);

AdmissibilityReport check_admissibility(const RadialProfile& profile,
                                        const AngularFunction& angular);
inline AdmissibilityReport check_admissibility(const CounterexampleField& f) {
  return check_admissibility(f.profile(), f.angular());
}

/// Scans the boundary grid theta_i = (i + 1/2) pi / n_theta,
/// phi_j = 2 pi j / n_phi for the maximizers of |g_p G| and |g_t G|. Each
/// is returned if it exceeds kWitnessThreshold. Throws NoWitness if neither
/// does, std::invalid_argument if the grid is coarser than 16 x 16.
Witnesses find_witnesses(const AngularFunction& angular,
                         std::size_t n_theta = kWitnessGridTheta,
                         std::size_t n_phi = kWitnessGridPhi);
inline Witnesses find_witnesses(const CounterexampleField& f,
                                std::size_t n_theta = kWitnessGridTheta,
                                std::size_t n_phi = kWitnessGridPhi) {
  return find_witnesses(f.angular(), n_theta, n_phi);
}

}  // namespace slipball
