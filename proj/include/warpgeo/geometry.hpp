#pragma once
#include <array>
#include <vector>

#include "warpgeo/linalg.hpp"
#include "warpgeo/warp.hpp"

namespace warpgeo {

// Coordinates above which hyperbolic-fiber points are rejected as off-chart.
inline constexpr double kHeightFloor = 1e-12;

// A point of the global chart (t, x_1, ..., x_{n-1}); for a hyperbolic fiber the
// last coordinate is the half-space height and must stay positive.
struct Point {
  double t = 0.0;
  std::vector<double> x;

  int dim() const { return 1 + static_cast<int>(x.size()); }
  std::vector<double> coords() const;
};

// Coordinate components of a tangent vector at an associated Point.
struct Tangent {
  double dt = 0.0;
  std::vector<double> dx;

  int dim() const { return 1 + static_cast<int>(dx.size()); }
  std::vector<double> comps() const;
};

using MetricMatrix = Mat;

Point point_from_coords(std::span<const double> q);
Tangent tangent_from_comps(std::span<const double> c);

// Throws std::invalid_argument / std::domain_error on dimension mismatch or
// (hyperbolic fiber) height at or below the floor.
void validate_point(const WarpParams& params, const Point& p);

/// Metric of the warped product at p: diag(1, c, ..., c) with
/// c = e^{2 log_warp(t)} / x_{n-1}^2 (hyperbolic fiber) or e^{2 log_warp(t)} (flat fiber).
MetricMatrix metric_at(const WarpParams& params, const Point& p);

// The shared fiber coefficient c of metric_at, without materializing the matrix.
double fiber_coefficient(const WarpParams& params, const Point& p);

double inner(const WarpParams& params, const Point& p, const Tangent& u, const Tangent& v);
double norm(const WarpParams& params, const Point& p, const Tangent& u);

/// Rescales u to unit length; throws std::invalid_argument on (near-)zero input.
Tangent normalize(const WarpParams& params, const Point& p, const Tangent& u);

/// Gram-Schmidt under the metric at p; throws on a linearly dependent set.
std::vector<Tangent> gram_schmidt(const WarpParams& params, const Point& p,
                                  const std::vector<Tangent>& vs);

/// Unit-speed semicircle parameterization of the half-plane geodesic through (0, r):
/// (r tanh t, r sech t). Requires r > 0.
std::array<double, 2> semicircle_chart(double t, double r);

/// Max-entry deviation between the pullback of the half-plane metric under the
/// semicircle map and diag(1, cosh^2 t / r^2), via the analytic Jacobian.
double pullback_residual(double t, double r);

/// Angle in [0, pi/2] between span{u, v} and the t-direction:
/// cos(theta) is the metric norm of the projection of the unit t-vector onto the plane.
double plane_angle(const WarpParams& params, const Point& p, const Tangent& u, const Tangent& v);

}  // namespace warpgeo
