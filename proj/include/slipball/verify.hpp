#pragma once

// Numerical certification of the counterexample: divergence, slip traces,
// the non-vanishing of curl(u x omega) x n on the sphere, oracle agreement,
// the Navier traction comparison and the slip sharpness sweep.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slipball/family.hpp"
#include "slipball/oracle.hpp"

namespace slipball {

/// Interior grid: cell centres of [margin_r, 1] x [margin_theta, pi - margin_theta]
/// x [0, 2 pi) in (r, theta, phi). Boundary grid (boundary_only): the sphere
/// r = 1 with theta_j = (j + 1/2) pi / n_theta over all of (0, pi) and
/// phi_k = 2 pi k / n_phi. Quadrature weights are r^2 sin t dr dt dp and
/// sin t dt dp respectively.
struct GridSpec {
  std::size_t n_r{32};
  std::size_t n_theta{48};
  std::size_t n_phi{96};
  double margin_r{0.05};
  double margin_theta{0.05};
  bool boundary_only{false};

  static GridSpec boundary(std::size_t n_theta = 128, std::size_t n_phi = 256) {
    GridSpec g;
    g.n_r = 1;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    g.boundary_only = true;
    return g;
  }

  /// Counts >= 8 (n_r ignored on boundary grids); margins > 2 * oracle step.
  /// Throws std::invalid_argument.
  void validate(const FDConfig& cfg) const;

  double r_at(std::size_t i) const;
  double theta_at(std::size_t j) const;
  double phi_at(std::size_t k) const;
  /// Quadrature weight of node (i, j, k).
  double weight(std::size_t i, std::size_t j) const;
};

enum class Direction {
  at_most,   // residual: pass iff norm_sup <= tolerance
  at_least,  // non-vanishing: pass iff norm_sup >= tolerance
};

const char* to_string(Direction d);

struct CheckResult {
  std::string name;
  double norm_sup{0};
  double norm_l2{0};
  double tolerance{0};
  Direction direction{Direction::at_most};
  bool pass{false};
  SphPointd witness;
  /// Extra named values in insertion order (analytic/oracle values, ...).
  std::vector<std::pair<std::string, double>> details;
  std::string note;

  std::optional<double> detail(const std::string& key) const;
};

// Tolerances for the three error regimes plus the slip traces.
inline constexpr double kClosedFormTol = 1e-10;
inline constexpr double kSlipTraceTol = 1e-12;
inline constexpr double kFdResidualTol = 1e-6;
inline constexpr double kNonVanishingThreshold = 1e-1;
inline constexpr double kOracleAgreementTol = 1e-4;
inline constexpr double kAgreementMagnitudeFloor = 1e-3;
inline constexpr double kPhiGateTol = 1e-5;
inline constexpr double kPhiGateMagnitudeFloor = 1e-2;
inline constexpr std::size_t kAgreementSamples = 50;

inline constexpr const char* kNoContradiction = "no contradiction exhibited";

/// sup |div u| over the interior grid from analytic jets and from the
/// Cartesian oracle; reports the larger. details: analytic_sup, oracle_sup.
CheckResult check_divergence_free(const CounterexampleField& f,
                                  const GridSpec& grid, const FDConfig& cfg = {});

/// (u . n, omega x n) traces on the boundary grid from the closed forms.
std::pair<CheckResult, CheckResult> check_slip_conditions(
    const CounterexampleField& f, const GridSpec& boundary);

struct PersistencyChecks {
  CheckResult theta;           // sup |[curl v]_theta| on the sphere
  CheckResult phi;             // sup |[curl v]_phi| on the sphere
  CheckResult theta_agreement; // closed form vs oracle, relative
  CheckResult phi_gate;        // candidate closed form vs oracle, relative
};

/// The tangential field curl(v) x n on r = 1 must not vanish. The phi
/// component uses the candidate closed form only if it passes the oracle
/// gate; otherwise oracle values are used and the closed form is flagged.
/// Throws NoWitness if the angular function admits no witness.
PersistencyChecks check_persistency_failure(const CounterexampleField& f,
                                            const GridSpec& boundary,
                                            const FDConfig& cfg = {});

enum class CurlComponent { theta, phi };

/// Largest geodesic radius rho such that |[curl v]_c| > floor * |value at
/// witness| on the sampled geodesic ball of radius rho around the witness.
double neighborhood_radius(const CounterexampleField& f, CurlComponent component,
                           const BoundaryPoint& witness, double floor_fraction);

/// Tangential traction on the sphere,
///   t . tau = (nu/2) (omega x n) . tau - nu K u . tau,
/// with K = 1 (or 0 if flat_boundary). Reports sup of |t_tan| over the grid.
CheckResult check_navier_traction(const CounterexampleField& f,
                                  const GridSpec& boundary, double viscosity,
                                  bool flat_boundary = false);

/// Analytic omega vs the Cartesian oracle curl of u on the interior grid,
/// relative where |omega| >= kAgreementMagnitudeFloor.
CheckResult check_curl_oracle_agreement(const CounterexampleField& f,
                                        const GridSpec& grid,
                                        const FDConfig& cfg = {});

struct SweepRow {
  double epsilon{0};
  double residual{0};
  bool in_fit{false};
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double slope{0};
  double intercept{0};
};

inline constexpr double kSweepSlopeLo = 0.95;
inline constexpr double kSweepSlopeHi = 1.05;

/// sup |omega x n| on the boundary for base profile * (1 + eps (r - 3/4)^2),
/// and the least-squares slope of log residual vs log eps over eps > 0.
/// eps = 0 rows are reported but excluded from the fit.
SweepResult scaling_sweep(const CounterexampleField& base,
                          const std::vector<double>& epsilons,
                          const GridSpec& boundary = GridSpec::boundary());

struct VerificationReport {
  std::string family;
  AdmissibilityReport admissibility;
  std::vector<CheckResult> checks;
  bool overall_pass{false};
  GridSpec grid;
  GridSpec boundary;
  FDConfig oracle;

  const CheckResult* find(const std::string& name) const;
};

/// Runs every check in a fixed order. Child errors are recorded as failed
/// checks. Overall pass needs admissibility, divergence, both slip traces,
/// a non-vanishing persistency component and both oracle agreements.
VerificationReport run_full_verification(const CounterexampleField& f,
                                         const GridSpec& grid,
                                         const GridSpec& boundary,
                                         const FDConfig& cfg = {},
                                         double viscosity = 1.0);

/// sqrt of the surface integral of value(theta, phi)^2 over the boundary grid.
double boundary_l2_norm(const GridSpec& boundary,
                        const std::function<double(double, double)>& value);

}  // namespace slipball
