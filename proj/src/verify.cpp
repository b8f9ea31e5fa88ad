#include "slipball/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include "slipball/errors.hpp"
#include "slipball/parallel.hpp"

namespace slipball {

namespace {

constexpr double kPi = std::numbers::pi;

// Running sup (first maximizer in scan order) and weighted sum of squares.
struct Accum {
  double sup{-1.0};
  SphPointd at;
  double sum_sq{0.0};

  void add(double v, double w, const SphPointd& p) {
    if (v > sup) {
      sup = v;
      at = p;
    }
    sum_sq += w * v * v;
  }
  void merge(const Accum& o) {
    if (o.sup > sup) {
      sup = o.sup;
      at = o.at;
    }
    sum_sq += o.sum_sq;
  }
};

template <std::size_t K>
std::array<Accum, K> merge_rows(const std::vector<std::array<Accum, K>>& rows) {
  std::array<Accum, K> total{};
  for (const auto& row : rows) {
    for (std::size_t m = 0; m < K; ++m) total[m].merge(row[m]);
  }
  return total;
}

// fn(theta, phi) -> std::array<double, K> of non-negative magnitudes.
template <std::size_t K, typename Fn>
std::array<Accum, K> scan_boundary(const GridSpec& g, Fn&& fn) {
  std::vector<std::array<Accum, K>> rows(g.n_theta);
  for_each_row(g.n_theta, [&](std::size_t j) {
    const double theta = g.theta_at(j);
    const double w = g.weight(0, j);
    for (std::size_t k = 0; k < g.n_phi; ++k) {
      const double phi = g.phi_at(k);
      const std::array<double, K> vals = fn(theta, phi);
      const SphPointd p(1.0, theta, phi);
      for (std::size_t m = 0; m < K; ++m) rows[j][m].add(vals[m], w, p);
    }
  });
  return merge_rows(rows);
}

// fn(point) -> std::array<double, K>; rows are (r, theta) pairs, r-major.
template <std::size_t K, typename Fn>
std::array<Accum, K> scan_volume(const GridSpec& g, Fn&& fn) {
  std::vector<std::array<Accum, K>> rows(g.n_r * g.n_theta);
  for_each_row(rows.size(), [&](std::size_t row) {
    const std::size_t i = row / g.n_theta, j = row % g.n_theta;
    const double r = g.r_at(i), theta = g.theta_at(j);
    const double w = g.weight(i, j);
    for (std::size_t k = 0; k < g.n_phi; ++k) {
      const SphPointd p(r, theta, g.phi_at(k));
      const std::array<double, K> vals = fn(p);
      for (std::size_t m = 0; m < K; ++m) rows[row][m].add(vals[m], w, p);
    }
  });
  return merge_rows(rows);
}

void finish(CheckResult& c, const Accum& a) {
  c.norm_sup = std::max(a.sup, 0.0);
  c.norm_l2 = std::sqrt(a.sum_sq);
  c.witness = a.at;
}

void decide(CheckResult& c) {
  c.pass = c.direction == Direction::at_most ? c.norm_sup <= c.tolerance
                                             : c.norm_sup >= c.tolerance;
}

CheckResult make_check(std::string name, double tolerance, Direction direction) {
  CheckResult c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  c.direction = direction;
  return c;
}

CheckResult failed_check(std::string name, double tolerance, Direction direction,
                         std::string note) {
  CheckResult c = make_check(std::move(name), tolerance, direction);
  c.pass = false;
  c.note = std::move(note);
  return c;
}

double relative(double analytic, double oracle) {
  return std::abs(analytic - oracle) /
         std::max(std::abs(analytic), std::numeric_limits<double>::min());
}

// Closed form vs oracle at up to kAgreementSamples boundary nodes where the
// closed form is at least `magnitude_floor` in size. Samples are spread
// evenly over the qualifying nodes in scan order.
template <typename Closed, typename Oracle>
CheckResult sampled_agreement(std::string name, const GridSpec& boundary,
                              Closed&& closed, Oracle&& oracle,
                              double magnitude_floor, double tolerance) {
  CheckResult c = make_check(std::move(name), tolerance, Direction::at_most);
  std::vector<BoundaryPoint> candidates;
  for (std::size_t j = 0; j < boundary.n_theta; ++j) {
    for (std::size_t k = 0; k < boundary.n_phi; ++k) {
      const double theta = boundary.theta_at(j), phi = boundary.phi_at(k);
      if (std::abs(closed(theta, phi)) >= magnitude_floor) {
        candidates.push_back({theta, phi});
      }
    }
  }
  c.details.emplace_back("magnitude_floor", magnitude_floor);
  if (candidates.empty()) {
    c.details.emplace_back("samples", 0.0);
    c.witness = SphPointd(1.0, boundary.theta_at(0), 0.0);
    c.pass = true;
    c.note = "no boundary points above magnitude floor";
    return c;
  }

  const std::size_t n = std::min(kAgreementSamples, candidates.size());
  double sup = -1.0, sum_sq = 0.0, max_abs = 0.0;
  double at_analytic = 0.0, at_oracle = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const BoundaryPoint& b = candidates[s * candidates.size() / n];
    const double a = closed(b.theta, b.phi);
    const double o = oracle(b.theta, b.phi);
    const double rel = relative(a, o);
    sum_sq += rel * rel;
    max_abs = std::max(max_abs, std::abs(a - o));
    if (rel > sup) {
      sup = rel;
      c.witness = SphPointd(1.0, b.theta, b.phi);
      at_analytic = a;
      at_oracle = o;
    }
  }
  c.norm_sup = sup;
  c.norm_l2 = std::sqrt(sum_sq / static_cast<double>(n));  // RMS over samples
  c.details.emplace_back("samples", static_cast<double>(n));
  c.details.emplace_back("max_abs_discrepancy", max_abs);
  c.details.emplace_back("analytic_at_witness", at_analytic);
  c.details.emplace_back("oracle_at_witness", at_oracle);
  decide(c);
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// GridSpec

void GridSpec::validate(const FDConfig& cfg) const {
  if (n_theta < 8 || n_phi < 8 || (!boundary_only && n_r < 8)) {
    throw std::invalid_argument("grid node counts must be at least 8");
  }
  if (!(margin_r > 2.0 * cfg.step) || !(margin_theta > 2.0 * cfg.step)) {
    throw std::invalid_argument("grid margins must exceed twice the oracle step");
  }
  if (!(margin_r < 1.0) || !(margin_theta < kPi / 2)) {
    throw std::invalid_argument("grid margins leave no interior");
  }
}

double GridSpec::r_at(std::size_t i) const {
  if (boundary_only) return 1.0;
  return margin_r + (1.0 - margin_r) * (static_cast<double>(i) + 0.5) / n_r;
}

double GridSpec::theta_at(std::size_t j) const {
  const double lo = boundary_only ? 0.0 : margin_theta;
  return lo + (kPi - 2.0 * lo) * (static_cast<double>(j) + 0.5) / n_theta;
}

double GridSpec::phi_at(std::size_t k) const {
  return 2.0 * kPi * static_cast<double>(k) / n_phi;
}

double GridSpec::weight(std::size_t i, std::size_t j) const {
  const double d_phi = 2.0 * kPi / n_phi;
  const double lo = boundary_only ? 0.0 : margin_theta;
  const double d_theta = (kPi - 2.0 * lo) / n_theta;
  const double s = std::sin(theta_at(j));
  if (boundary_only) return s * d_theta * d_phi;
  const double r = r_at(i);
  const double d_r = (1.0 - margin_r) / n_r;
  return r * r * s * d_r * d_theta * d_phi;
}

const char* to_string(Direction d) {
  return d == Direction::at_most ? "at_most" : "at_least";
}

std::optional<double> CheckResult::detail(const std::string& key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double boundary_l2_norm(const GridSpec& boundary,
                        const std::function<double(double, double)>& value) {
  const auto acc = scan_boundary<1>(boundary, [&](double theta, double phi) {
    return std::array<double, 1>{value(theta, phi)};
  });
  return std::sqrt(acc[0].sum_sq);
}

// ---------------------------------------------------------------------------
// Checks

CheckResult check_divergence_free(const CounterexampleField& f,
                                  const GridSpec& grid, const FDConfig& cfg) {
  grid.validate(cfg);
  const VectorField u = [&f](const SphPointd& q) { return u_field(f, q); };
  const auto acc = scan_volume<2>(grid, [&](const SphPointd& p) {
    const auto jets = u_jets(f, p);
    return std::array<double, 2>{std::abs(divergence(p, jets)),
                                 std::abs(cartesian_divergence(u, p, cfg))};
  });
  CheckResult c = make_check("divergence_free", kFdResidualTol, Direction::at_most);
  finish(c, acc[1].sup >= acc[0].sup ? acc[1] : acc[0]);
  c.details.emplace_back("analytic_sup", std::max(acc[0].sup, 0.0));
  c.details.emplace_back("oracle_sup", std::max(acc[1].sup, 0.0));
  decide(c);
  return c;
}

std::pair<CheckResult, CheckResult> check_slip_conditions(
    const CounterexampleField& f, const GridSpec& boundary) {
  const auto acc = scan_boundary<2>(boundary, [&](double theta, double phi) {
    const SphPointd p(1.0, theta, phi);
    const SphVecd u = u_field(f, p);
    const SphVecd w = omega_field(f, p);
    return std::array<double, 2>{std::abs(u.r()), std::hypot(w.theta(), w.phi())};
  });
  CheckResult normal = make_check("slip_normal_velocity", kSlipTraceTol, Direction::at_most);
  CheckResult tangential =
      make_check("slip_tangential_vorticity", kSlipTraceTol, Direction::at_most);
  finish(normal, acc[0]);
  finish(tangential, acc[1]);
  decide(normal);
  decide(tangential);
  return {normal, tangential};
}

PersistencyChecks check_persistency_failure(const CounterexampleField& f,
                                            const GridSpec& boundary,
                                            const FDConfig& cfg) {
  const AdmissibilityReport& adm = f.admissibility();
  if (!adm.admissible()) {
    const std::string note = "skipped: family is not slip-admissible";
    return {failed_check("persistency_failure_theta", kNonVanishingThreshold,
                         Direction::at_least, note),
            failed_check("persistency_failure_phi", kNonVanishingThreshold,
                         Direction::at_least, note),
            failed_check("curl_v_theta_oracle_agreement", kOracleAgreementTol,
                         Direction::at_most, note),
            failed_check("curl_v_phi_closed_form_gate", kPhiGateTol,
                         Direction::at_most, note)};
  }
  if (!adm.witness_a1 && !adm.witness_a2) {
    throw NoWitness("angular function has no (a1) or (a2) witness on the sphere");
  }

  const ScalarField v_theta = [&f](const SphPointd& q) { return v_field(f, q).theta(); };
  const ScalarField v_phi = [&f](const SphPointd& q) { return v_field(f, q).phi(); };
  auto closed_theta = [&f](double t, double p) { return boundary_curl_v_theta(f, t, p); };
  auto closed_phi = [&f](double t, double p) { return boundary_curl_v_phi(f, t, p); };
  // [curl v]_theta = -(1/r) d_r(r v_phi), [curl v]_phi = (1/r) d_r(r v_theta)
  auto oracle_theta = [&](double t, double p) {
    return -fd_boundary_radial_derivative(v_phi, t, p, cfg);
  };
  auto oracle_phi = [&](double t, double p) {
    return fd_boundary_radial_derivative(v_theta, t, p, cfg);
  };

  PersistencyChecks out;
  out.theta_agreement =
      sampled_agreement("curl_v_theta_oracle_agreement", boundary, closed_theta,
                        oracle_theta, kAgreementMagnitudeFloor, kOracleAgreementTol);
  out.phi_gate = sampled_agreement("curl_v_phi_closed_form_gate", boundary, closed_phi,
                                   oracle_phi, kPhiGateMagnitudeFloor, kPhiGateTol);

  auto fill = [&](CheckResult& c, auto&& closed, auto&& oracle, const Accum& a) {
    finish(c, a);
    const double analytic = closed(c.witness.theta, c.witness.phi);
    const double reference = oracle(c.witness.theta, c.witness.phi);
    c.details.emplace_back("analytic_at_witness", analytic);
    c.details.emplace_back("oracle_at_witness", reference);
    c.details.emplace_back("relative_discrepancy", relative(analytic, reference));
    decide(c);
    if (!c.pass) c.note = kNoContradiction;
  };

  out.theta = make_check("persistency_failure_theta", kNonVanishingThreshold,
                         Direction::at_least);
  fill(out.theta, closed_theta, oracle_theta,
       scan_boundary<1>(boundary, [&](double t, double p) {
         return std::array<double, 1>{std::abs(closed_theta(t, p))};
       })[0]);

  out.phi = make_check("persistency_failure_phi", kNonVanishingThreshold,
                       Direction::at_least);
  const bool validated = out.phi_gate.pass;
  const Accum phi_acc =
      validated ? scan_boundary<1>(boundary,
                                   [&](double t, double p) {
                                     return std::array<double, 1>{
                                         std::abs(closed_phi(t, p))};
                                   })[0]
                : scan_boundary<1>(boundary, [&](double t, double p) {
                    return std::array<double, 1>{std::abs(oracle_phi(t, p))};
                  })[0];
  fill(out.phi, closed_phi, oracle_phi, phi_acc);
  out.phi.details.emplace_back("closed_form_validated", validated ? 1.0 : 0.0);
  if (!validated) {
    const std::string flag = "closed form rejected by oracle gate; oracle values reported";
    out.phi.note = out.phi.note.empty() ? flag : out.phi.note + "; " + flag;
  }
  return out;
}

double neighborhood_radius(const CounterexampleField& f, CurlComponent component,
                           const BoundaryPoint& witness, double floor_fraction) {
  auto value = [&](double theta, double phi) {
    return component == CurlComponent::theta ? boundary_curl_v_theta(f, theta, phi)
                                             : boundary_curl_v_phi(f, theta, phi);
  };
  const double level = floor_fraction * std::abs(value(witness.theta, witness.phi));
  if (!(std::abs(value(witness.theta, witness.phi)) > level)) return 0.0;

  const Basis<double> frame = basis_at(SphPointd(1.0, witness.theta, witness.phi));
  constexpr int kRings = 24, kBearings = 72;
  auto holds = [&](double rho) {
    for (int k = 1; k <= kRings; ++k) {
      const double d = rho * k / kRings;
      for (int m = 0; m < kBearings; ++m) {
        const double a = 2.0 * kPi * m / kBearings;
        const Vec3d x = std::cos(d) * frame.col(0) +
                        std::sin(d) * (std::cos(a) * frame.col(1) + std::sin(a) * frame.col(2));
        const SphPointd q = from_cartesian_point(x);
        if (!(std::abs(value(q.theta, q.phi)) > level)) return false;
      }
    }
    return true;
  };

  double lo = 0.0, hi = kPi;
  if (holds(hi)) return hi;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? lo : hi) = mid;
  }
  return lo;
}

CheckResult check_navier_traction(const CounterexampleField& f,
                                  const GridSpec& boundary, double viscosity,
                                  bool flat_boundary) {
  const double curvature = flat_boundary ? 0.0 : 1.0;
  const auto acc = scan_boundary<1>(boundary, [&](double theta, double phi) {
    const SphPointd p(1.0, theta, phi);
    const SphVecd u = u_field(f, p);
    const SphVecd w = omega_field(f, p);
    // omega x n = (0, omega_phi, -omega_theta)
    const double t_theta = 0.5 * viscosity * w.phi() - viscosity * curvature * u.theta();
    const double t_phi = -0.5 * viscosity * w.theta() - viscosity * curvature * u.phi();
    return std::array<double, 1>{std::hypot(t_theta, t_phi)};
  });
  CheckResult c = flat_boundary
                      ? make_check("navier_traction_flat", kSlipTraceTol, Direction::at_most)
                      : make_check("navier_traction_curved",
                                   kNonVanishingThreshold * viscosity, Direction::at_least);
  finish(c, acc[0]);
  c.details.emplace_back("viscosity", viscosity);
  c.details.emplace_back("curvature", curvature);
  decide(c);
  return c;
}

CheckResult check_curl_oracle_agreement(const CounterexampleField& f,
                                        const GridSpec& grid, const FDConfig& cfg) {
  grid.validate(cfg);
  const VectorField u = [&f](const SphPointd& q) { return u_field(f, q); };
  const auto acc = scan_volume<2>(grid, [&](const SphPointd& p) {
    const SphVecd analytic = omega_field(f, p);
    const SphVecd oracle = cartesian_curl(u, p, cfg);
    const double diff = (analytic - oracle).norm();
    const double size = analytic.norm();
    const double rel = size >= kAgreementMagnitudeFloor ? diff / size : 0.0;
    return std::array<double, 2>{rel, diff};
  });
  CheckResult c = make_check("curl_oracle_agreement", kOracleAgreementTol, Direction::at_most);
  finish(c, acc[0]);
  c.details.emplace_back("magnitude_floor", kAgreementMagnitudeFloor);
  c.details.emplace_back("max_abs_discrepancy", std::max(acc[1].sup, 0.0));
  decide(c);
  return c;
}

SweepResult scaling_sweep(const CounterexampleField& base,
                          const std::vector<double>& epsilons,
                          const GridSpec& boundary) {
  if (epsilons.size() < 4) {
    throw std::invalid_argument("scaling sweep needs at least 4 epsilons");
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const double eps : epsilons) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) {
      throw std::invalid_argument("epsilons must be finite and non-negative");
    }
    if (eps > 0.0) {
      lo = std::min(lo, eps);
      hi = std::max(hi, eps);
    }
  }
  if (!(hi > 0.0) || hi / lo < 100.0 * (1.0 - 1e-12)) {
    throw DegenerateFit("positive epsilons must span at least two decades");
  }

  SweepResult out;
  for (const double eps : epsilons) {
    const CounterexampleField field(perturbed_profile(base.profile(), eps),
                                    base.angular());
    const double residual = check_slip_conditions(field, boundary).second.norm_sup;
    out.rows.push_back({eps, residual, eps > 0.0});
  }

  double sx = 0, sy = 0;
  std::size_t n = 0;
  for (const auto& row : out.rows) {
    if (!row.in_fit) continue;
    if (!(row.residual > 0.0) || !std::isfinite(row.residual)) {
      throw DegenerateFit("sweep residual underflowed at eps = " + std::to_string(row.epsilon));
    }
    sx += std::log(row.epsilon);
    sy += std::log(row.residual);
    ++n;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& row : out.rows) {
    if (!row.in_fit) continue;
    const double dx = std::log(row.epsilon) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(row.residual) - my);
  }
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  return out;
}

VerificationReport run_full_verification(const CounterexampleField& f,
                                         const GridSpec& grid,
                                         const GridSpec& boundary,
                                         const FDConfig& cfg, double viscosity) {
  cfg.validate();
  grid.validate(cfg);
  boundary.validate(cfg);

  VerificationReport report;
  report.family = f.label();
  report.admissibility = f.admissibility();
  report.grid = grid;
  report.boundary = boundary;
  report.oracle = cfg;

  auto guarded = [&](const std::vector<std::pair<std::string, std::pair<double, Direction>>>& names,
                     auto&& run) {
    try {
      run();
    } catch (const std::exception& e) {
      for (const auto& [name, limits] : names) {
        report.checks.push_back(failed_check(name, limits.first, limits.second, e.what()));
      }
    }
  };

  guarded({{"divergence_free", {kFdResidualTol, Direction::at_most}}},
          [&] { report.checks.push_back(check_divergence_free(f, grid, cfg)); });
  guarded({{"slip_normal_velocity", {kSlipTraceTol, Direction::at_most}},
           {"slip_tangential_vorticity", {kSlipTraceTol, Direction::at_most}}},
          [&] {
            auto [normal, tangential] = check_slip_conditions(f, boundary);
            report.checks.push_back(normal);
            report.checks.push_back(tangential);
          });
  guarded({{"persistency_failure_theta", {kNonVanishingThreshold, Direction::at_least}},
           {"persistency_failure_phi", {kNonVanishingThreshold, Direction::at_least}},
           {"curl_v_theta_oracle_agreement", {kOracleAgreementTol, Direction::at_most}},
           {"curl_v_phi_closed_form_gate", {kPhiGateTol, Direction::at_most}}},
          [&] {
            PersistencyChecks p = check_persistency_failure(f, boundary, cfg);
            report.checks.push_back(p.theta);
            report.checks.push_back(p.phi);
            report.checks.push_back(p.theta_agreement);
            report.checks.push_back(p.phi_gate);
          });
  guarded({{"curl_oracle_agreement", {kOracleAgreementTol, Direction::at_most}}},
          [&] { report.checks.push_back(check_curl_oracle_agreement(f, grid, cfg)); });
  guarded({{"navier_traction_curved", {kNonVanishingThreshold * viscosity, Direction::at_least}},
           {"navier_traction_flat", {kSlipTraceTol, Direction::at_most}}},
          [&] {
            report.checks.push_back(check_navier_traction(f, boundary, viscosity, false));
            report.checks.push_back(check_navier_traction(f, boundary, viscosity, true));
          });

  auto passed = [&](const char* name) {
    const CheckResult* c = report.find(name);
    return c != nullptr && c->pass;
  };
  report.overall_pass =
      report.admissibility.admissible() && passed("divergence_free") &&
      passed("slip_normal_velocity") && passed("slip_tangential_vorticity") &&
      (passed("persistency_failure_theta") || passed("persistency_failure_phi")) &&
      passed("curl_v_theta_oracle_agreement") && passed("curl_oracle_agreement");
  return report;
}

}  // namespace slipball
