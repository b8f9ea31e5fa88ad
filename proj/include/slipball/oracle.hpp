#pragma once

// Finite-difference ground truth for the analytic operators. Everything here
// works from point evaluations of fields only; analytic jets never enter.
//
// Two independent routes are provided:
//  - a spherical route that applies the curvilinear formulas to
//    finite-difference partials in (r, theta, phi);
//  - a Cartesian route that differentiates the Cartesian components of the
//    field along x, y, z and rotates the result back into the local basis.

#include <functional>

#include "slipball/sphcalc.hpp"

namespace slipball {

enum class Coord { r, theta, phi };

struct FDConfig {
  double step{1e-4};
  bool richardson{true};

  /// Throws std::invalid_argument unless step is in [1e-8, 1e-2].
  void validate() const;
};

using ScalarField = std::function<double(const SphPointd&)>;
using VectorField = std::function<SphVecd(const SphPointd&)>;

/// Points this close to r = 1 use the one-sided inward radial stencil.
inline constexpr double kBoundaryRadiusTol = 1e-12;
/// Upper radial limit for central stencils (fields extend slightly past r = 1).
inline constexpr double kStencilRadiusLimit = 1.05;

/// Partial derivative along one coordinate. Central difference, Richardson
/// extrapolated over steps (h, 2h) when enabled. On the boundary r = 1 the
/// radial derivative uses nodes r, r - h, r - 2h with weights (3, -4, 1)/(2h).
double fd_partial(const ScalarField& f, const SphPointd& p, Coord coord,
                  const FDConfig& cfg = {});

SphVecd fd_curl_spherical(const VectorField& field, const SphPointd& p,
                          const FDConfig& cfg = {});
double fd_divergence_spherical(const VectorField& field, const SphPointd& p,
                               const FDConfig& cfg = {});

/// d W_i / d x_j of the Cartesian components W of the field at p.
Eigen::Matrix3d cartesian_jacobian(const VectorField& field, const SphPointd& p,
                                   const FDConfig& cfg = {});

SphVecd cartesian_curl(const VectorField& field, const SphPointd& p,
                       const FDConfig& cfg = {});
double cartesian_divergence(const VectorField& field, const SphPointd& p,
                            const FDConfig& cfg = {});

/// (1/r) d_r(r f) at r = 1, one-sided inward stencil.
double fd_boundary_radial_derivative(const ScalarField& f, double theta,
                                     double phi, const FDConfig& cfg = {});

}  // namespace slipball
