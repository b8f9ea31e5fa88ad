#include "slipball/family.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "slipball/errors.hpp"
#include "slipball/parallel.hpp"

namespace slipball {

namespace {

constexpr double kPi = std::numbers::pi;

// Product rule for two one-dimensional jets.
Jet1 times(const Jet1& a, const Jet1& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Profiles

Jet1 radial_cutoff(double r) { return smooth_ramp(r, 0.25, 0.5); }

RadialProfile default_profile() {
  return {[](double r) {
            const double e = std::exp(1.0 - r);
            return times(radial_cutoff(r), Jet1{e, -e, e});
          },
          0.25, "chi*exp(1-r)"};
}

RadialProfile cutoff_profile() {
  return {[](double r) { return radial_cutoff(r); }, 0.25, "chi"};
}

RadialProfile h1zero_profile() {
  return {[](double r) {
            const double d = 1.0 - r;
            return times(radial_cutoff(r), Jet1{d * d, -2.0 * d, 2.0});
          },
          0.25, "chi*(1-r)^2"};
}

RadialProfile perturbed_profile(const RadialProfile& base, double eps) {
  auto eval = [h = base.eval, eps](double r) {
    const double d = r - 0.75;
    return times(h(r), Jet1{1.0 + eps * d * d, 2.0 * eps * d, 2.0 * eps});
  };
  return {eval, base.support_inner,
          base.label + "*(1+eps(r-3/4)^2)"};
}

RadialProfile scaled_profile(const RadialProfile& base, double lambda) {
  auto eval = [h = base.eval, lambda](double r) {
    const Jet1 v = h(r);
    return Jet1{lambda * v.value, lambda * v.d1, lambda * v.d2};
  };
  return {eval, base.support_inner, base.label};
}

// ---------------------------------------------------------------------------
// Angular functions

Jet1 polar_bump(double theta) {
  return smooth_bump(theta, kPi / 4, 3 * kPi / 8, 5 * kPi / 8, 3 * kPi / 4);
}

AngularFunction default_angular(double phase) {
  auto eval = [phase](double theta, double phi) {
    const Jet1 psi = polar_bump(theta);
    const double s = std::sin(phi + phase), c = std::cos(phi + phase);
    return AngularJet{psi.value * s,  psi.d1 * s, psi.value * c,
                      psi.d2 * s,     psi.d1 * c, -psi.value * s};
  };
  return {eval, kPi / 4, "psi*sin(phi)"};
}

AngularFunction zero_angular() {
  return {[](double, double) { return AngularJet{}; }, kPi / 4, "zero"};
}

// ---------------------------------------------------------------------------
// Field

CounterexampleField::CounterexampleField(RadialProfile profile,
                                         AngularFunction angular,
                                         std::string label)
    : profile_(std::move(profile)),
      angular_(std::move(angular)),
      label_(std::move(label)) {
  if (label_.empty()) label_ = profile_.label + " / " + angular_.label;
  const Jet1 at_one = profile_(1.0);
  h1_ = at_one.value;
  dh1_ = at_one.d1;
  admissibility_ = check_admissibility(profile_, angular_);
}

bool CounterexampleField::in_angular_support(double theta) const {
  const double margin = angular_.pole_margin;
  return theta > margin && theta < kPi - margin;
}

bool CounterexampleField::in_support(double r, double theta) const {
  return r > profile_.support_inner && in_angular_support(theta);
}

CounterexampleField family_from_label(std::string_view label) {
  if (label == "default") {
    return {default_profile(), default_angular(), "default"};
  }
  if (label == "h1zero") {
    return {h1zero_profile(), default_angular(), "h1zero"};
  }
  constexpr std::string_view kPerturbed = "perturbed:";
  if (label.starts_with(kPerturbed)) {
    const double eps = parse_double(label.substr(kPerturbed.size()));
    if (!std::isfinite(eps)) {
      throw std::invalid_argument("perturbation must be finite");
    }
    return {perturbed_profile(default_profile(), eps), default_angular(),
            std::string(label)};
  }
  throw std::invalid_argument("unknown family label '" + std::string(label) +
                              "' (expected default, h1zero, perturbed:<eps>)");
}

double big_G(const AngularFunction& angular, double theta, double phi) {
  if (theta <= angular.pole_margin || theta >= kPi - angular.pole_margin) {
    return 0.0;
  }
  const AngularJet g = angular(theta, phi);
  const double st = std::sin(theta);
  return std::cos(theta) * g.g_theta + st * g.g_thetatheta + g.g_phiphi / st;
}

SphVecd u_field(const CounterexampleField& f, const SphPointd& p) {
  if (!f.in_support(p.r, p.theta)) return {};
  const double h = f.profile()(p.r).value;
  const AngularJet g = f.angular()(p.theta, p.phi);
  return {0.0, -h * g.g_phi / std::sin(p.theta), h * g.g_theta};
}

std::array<ScalarJetd, 3> u_jets(const CounterexampleField& f,
                                 const SphPointd& p) {
  std::array<ScalarJetd, 3> jets{};
  if (!f.in_support(p.r, p.theta)) return jets;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const Jet1 h = f.profile()(p.r);
  const AngularJet g = f.angular()(p.theta, p.phi);
  const double st = std::sin(p.theta), ct = std::cos(p.theta);

  // u_theta = -h q with q = g_p / sin t
  const double q = g.g_phi / st;
  const double q_t = g.g_thetaphi / st - g.g_phi * ct / (st * st);
  const double q_p = g.g_phiphi / st;
  auto& ut = jets[1];
  ut.value = -h.value * q;
  ut.d_r = -h.d1 * q;
  ut.d_theta = -h.value * q_t;
  ut.d_phi = -h.value * q_p;
  ut.d_rr = -h.d2 * q;
  ut.d_rtheta = -h.d1 * q_t;
  ut.d_rphi = -h.d1 * q_p;
  ut.d_thetatheta = ut.d_thetaphi = ut.d_phiphi = nan;

  // u_phi = h g_t
  auto& up = jets[2];
  up.value = h.value * g.g_theta;
  up.d_r = h.d1 * g.g_theta;
  up.d_theta = h.value * g.g_thetatheta;
  up.d_phi = h.value * g.g_thetaphi;
  up.d_rr = h.d2 * g.g_theta;
  up.d_rtheta = h.d1 * g.g_thetatheta;
  up.d_rphi = h.d1 * g.g_thetaphi;
  up.d_thetatheta = up.d_thetaphi = up.d_phiphi = nan;
  return jets;
}

SphVecd omega_field(const CounterexampleField& f, const SphPointd& p) {
  if (!f.in_support(p.r, p.theta)) return {};
  const Jet1 h = f.profile()(p.r);
  const AngularJet g = f.angular()(p.theta, p.phi);
  const double r = p.r, st = std::sin(p.theta);
  const double d_rh = h.value + r * h.d1;  // d_r(r h)
  const double G = big_G(f.angular(), p.theta, p.phi);
  return {h.value * G / (r * st), -d_rh * g.g_theta / r,
          -d_rh * g.g_phi / (r * st)};
}

SphVecd v_field(const CounterexampleField& f, const SphPointd& p) {
  const SphVecd u = u_field(f, p);
  const SphVecd w = omega_field(f, p);
  return {u.theta() * w.phi() - u.phi() * w.theta(), u.phi() * w.r(),
          -u.theta() * w.r()};
}

double boundary_curl_v_theta(const CounterexampleField& f, double theta,
                             double phi) {
  if (!f.in_angular_support(theta)) return 0.0;
  const double st = std::sin(theta);
  const AngularJet g = f.angular()(theta, phi);
  return -2.0 / (st * st) * f.h1() * f.dh1() * g.g_phi *
         big_G(f.angular(), theta, phi);
}

double boundary_curl_v_phi(const CounterexampleField& f, double theta,
                           double phi) {
  if (!f.in_angular_support(theta)) return 0.0;
  const double st = std::sin(theta);
  const AngularJet g = f.angular()(theta, phi);
  return 2.0 / st * f.h1() * f.dh1() * g.g_theta *
         big_G(f.angular(), theta, phi);
}

// ---------------------------------------------------------------------------
// Admissibility

namespace {

bool support_vanishes(const RadialProfile& profile) {
  constexpr int kSamples = 65;
  for (int i = 0; i < kSamples; ++i) {
    const double r = profile.support_inner * i / (kSamples - 1);
    const Jet1 h = profile(r);
    if (h.value != 0.0 || h.d1 != 0.0 || h.d2 != 0.0) return false;
  }
  return true;
}

bool vanishes_at_poles(const AngularFunction& angular) {
  constexpr int kTheta = 33, kPhi = 16;
  const double margin = angular.pole_margin;
  for (int i = 0; i < kTheta; ++i) {
    const double offset = margin * i / (kTheta - 1);
    for (const double theta : {offset, kPi - offset}) {
      for (int j = 0; j < kPhi; ++j) {
        const AngularJet g = angular(theta, 2 * kPi * j / kPhi);
        if (g.g != 0.0 || g.g_theta != 0.0 || g.g_phi != 0.0 ||
            g.g_thetatheta != 0.0 || g.g_thetaphi != 0.0 ||
            g.g_phiphi != 0.0) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_periodic(const AngularFunction& angular) {
  constexpr int kTheta = 12, kPhi = 12;
  constexpr double kTol = 1e-12;
  auto close = [](double a, double b) {
    return std::abs(a - b) <= kTol * std::max(1.0, std::abs(a));
  };
  for (int i = 0; i < kTheta; ++i) {
    const double theta = kPi * (i + 0.5) / kTheta;
    for (int j = 0; j < kPhi; ++j) {
      const double phi = 2 * kPi * j / kPhi;
      const AngularJet a = angular(theta, phi);
      const AngularJet b = angular(theta, phi + 2 * kPi);
      if (!close(a.g, b.g) || !close(a.g_theta, b.g_theta) ||
          !close(a.g_phi, b.g_phi) || !close(a.g_thetatheta, b.g_thetatheta) ||
          !close(a.g_thetaphi, b.g_thetaphi) ||
          !close(a.g_phiphi, b.g_phiphi)) {
        return false;
      }
    }
  }
  return true;
}

struct RowBest {
  double value{-1.0};
  std::size_t j{0};
};

}  // namespace

AdmissibilityReport check_admissibility(const RadialProfile& profile,
                                        const AngularFunction& angular) {
  AdmissibilityReport report;
  const Jet1 at_one = profile(1.0);
  report.slip_condition_residual = std::abs(at_one.value + at_one.d1);
  report.h1 = at_one.value;
  report.h1_nonzero = at_one.value != 0.0;
  report.support_ok = support_vanishes(profile);
  report.pole_margin_ok = vanishes_at_poles(angular);
  report.periodicity_ok = is_periodic(angular);
  try {
    const Witnesses w = find_witnesses(angular);
    report.witness_a1 = w.a1;
    report.witness_a2 = w.a2;
  } catch (const NoWitness&) {
  }
  return report;
}

Witnesses find_witnesses(const AngularFunction& angular, std::size_t n_theta,
                         std::size_t n_phi) {
  if (n_theta < 16 || n_phi < 16) {
    throw std::invalid_argument("witness grid must be at least 16 x 16");
  }
  std::vector<RowBest> best_a1(n_theta), best_a2(n_theta);
  for_each_row(n_theta, [&](std::size_t i) {
    const double theta = kPi * (static_cast<double>(i) + 0.5) / n_theta;
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = 2 * kPi * static_cast<double>(j) / n_phi;
      const AngularJet g = angular(theta, phi);
      const double G = big_G(angular, theta, phi);
      const double a1 = std::abs(g.g_phi * G);
      const double a2 = std::abs(g.g_theta * G);
      if (a1 > best_a1[i].value) best_a1[i] = {a1, j};
      if (a2 > best_a2[i].value) best_a2[i] = {a2, j};
    }
  });

  auto reduce = [&](const std::vector<RowBest>& rows)
      -> std::optional<BoundaryPoint> {
    double value = -1.0;
    std::optional<BoundaryPoint> point;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].value > value) {
        value = rows[i].value;
        point = BoundaryPoint{kPi * (static_cast<double>(i) + 0.5) / n_theta,
                              2 * kPi * static_cast<double>(rows[i].j) / n_phi};
      }
    }
    if (value <= kWitnessThreshold) return std::nullopt;
    return point;
  };

  Witnesses w{reduce(best_a1), reduce(best_a2)};
  if (!w.a1 && !w.a2) {
    throw NoWitness("no boundary point with |g_phi G| or |g_theta G| above " +
                    std::to_string(kWitnessThreshold));
  }
  return w;
}

}  // namespace slipball
