#pragma once
#include <cstdint>
#include <optional>
#include <string>

#include "warpgeo/flows.hpp"
#include "warpgeo/isometry.hpp"

namespace warpgeo {

// Outcome of one verification: pass iff max_residual < tolerance.
struct CheckReport {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::int64_t samples = 0;
  bool pass = false;
  std::string details;
};

CheckReport make_report(std::string name, double max_residual, double tolerance,
                        std::int64_t samples, std::string details = {});

/// Launches geodesics tangent to the reflection surface {x_1 = ... = x_{n-2} = 0}
/// and reports the largest off-surface coordinate drift over time T. Needs n >= 3.
CheckReport check_sigma_totally_geodesic(const WarpParams& params, double T, double tol,
                                         int cases = 100, std::uint64_t seed = 42,
                                         double integrator_tol = 1e-10);

/// Verifies the induced surface metric has Gaussian curvature -1, both through the
/// two-dimensional closed form and through the ambient sectional operator on its
/// tangent planes. warp_override replaces the warping exponent (test hook); the
/// ambient comparison is skipped when it is set.
CheckReport check_sigma_hyperbolic(const WarpParams& params, double tol,
                                   const ScalarC2* warp_override = nullptr);

/// Checks that the plane spanned by the t-direction and the fiber direction of w
/// at p exponentiates to a totally geodesic hyperbolic surface, by conjugating the
/// reflection-surface checks with an explicit lifted isometry.
CheckReport check_plane_property(const WarpParams& params, const Point& p, const Tangent& w,
                                 double tol = 1e-5, double T = 5.0, int cases = 20,
                                 std::uint64_t seed = 42);

/// Transports the unit vector of span{v0, d/dt} orthogonal to v0 along the geodesic
/// through (p0, v0) and reports max |sec(velocity, transported) + 1| over [0, T].
CheckReport hyperbolic_rank_check(const WarpParams& params, const Point& p0, const Tangent& v0,
                                  double T, double tol = 1e-5, double integrator_tol = 1e-10);

/// True iff b^2 + e^{2a} = 1 within 1e-12; equivalently the metric has constant
/// curvature -1.
bool constant_curvature_detect(const WarpParams& params);

/// The reflection center of the curvature profile: (ln(1-b) - ln(1+b)) / 2.
/// Empty when |b| = 1 or in the constant-curvature case (no distinguished center).
std::optional<double> symmetry_center(const WarpParams& params);

struct CurvatureRange {
  double lo = 0.0, hi = 0.0;
  bool lo_attained = true, hi_attained = true;
};

/// Range of the sectional curvature over all planes and base points (hyperbolic
/// fiber). One endpoint is always -1; the other is -e^{2a}/(1-b^2), a limit rather
/// than an attained value when |b| = 1.
CurvatureRange extremal_curvatures(const WarpParams& params);

}  // namespace warpgeo
