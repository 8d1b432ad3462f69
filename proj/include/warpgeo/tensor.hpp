#pragma once
#include <functional>
#include <utility>
#include <vector>

#include "warpgeo/geometry.hpp"

namespace warpgeo {

// Connection coefficients at a point, symmetric in the lower index pair.
struct Christoffel {
  int dim = 0;
  std::vector<double> g;  // gamma[k][i][j], flattened

  explicit Christoffel(int n) : dim(n), g(static_cast<size_t>(n) * n * n, 0.0) {}
  double& at(int k, int i, int j) { return g[(static_cast<size_t>(k) * dim + i) * dim + j]; }
  double operator()(int k, int i, int j) const {
    return g[(static_cast<size_t>(k) * dim + i) * dim + j];
  }

  // gamma^k_{ij} u^i w^j for all k.
  std::vector<double> contract(std::span<const double> u, std::span<const double> w) const;
};

// A chart metric as a field over flat coordinate vectors; the geodesic and
// curvature machinery is generic over this so the pure half-space model and the
// warped products share one code path.
struct MetricField {
  int dim = 0;
  std::function<Mat(std::span<const double>)> metric;
  std::function<Christoffel(std::span<const double>)> christoffel;
  int floor_index = -1;     // coordinate that must stay above floor_value, or -1
  double floor_value = 0.0;
};

// The warped product metric in the global chart, with analytic symbols.
MetricField warped_metric_field(const WarpParams& params);

// Upper half-space hyperbolic k-space on coordinates (x_1, ..., x_k), x_k > 0.
MetricField halfspace_metric_field(int k);

/// Analytic Levi-Civita symbols of the warped metric at p.
Christoffel christoffel_at(const WarpParams& params, const Point& p);

// Finite-difference symbols from metric derivatives (test oracle; generic).
Christoffel christoffel_fd(const MetricField& field, std::span<const double> q);

/// Max deviation between analytic and finite-difference symbols at p.
/// Requires the height coordinate at least 1e-3 above the floor.
double christoffel_fd_check(const WarpParams& params, const Point& p);

// Curvature operator at a point: components R^l_{ijk} of
// R(d_i, d_j) d_k = R^l_{ijk} d_l, plus the metric for lowering.
struct RiemannValue {
  int dim = 0;
  std::vector<double> comp;  // R^l_{ijk}
  Mat metric;

  double component(int l, int i, int j, int k) const {
    return comp[((static_cast<size_t>(l) * dim + i) * dim + j) * dim + k];
  }
  // Components of R(u, v) w.
  std::vector<double> apply(std::span<const double> u, std::span<const double> v,
                            std::span<const double> w) const;
  // Quadrilinear form <R(u, v) w, z>.
  double quad(std::span<const double> u, std::span<const double> v, std::span<const double> w,
              std::span<const double> z) const;
};

// Curvature from centered differences of the symbols with one Richardson level.
RiemannValue riemann_of_field(const MetricField& field, std::span<const double> q);

/// Curvature of the warped metric at p.
RiemannValue riemann_at(const WarpParams& params, const Point& p);

/// Sectional curvature of span{u, v}: R(u,v,v,u) normalized by the Gram determinant.
double sectional(const RiemannValue& r, const Tangent& u, const Tangent& v);
double sectional(const WarpParams& params, const Point& p, const Tangent& u, const Tangent& v);

/// Closed-form sectional curvature of a plane at parameter t making angle theta
/// with the t-direction (hyperbolic fiber only).
double sectional_closed_form(const WarpParams& params, double t, double theta);

/// Gaussian curvature of the two-dimensional warped metric: -f'' - (f')^2 for the
/// warping exponent f; identically -1 for the analytic family.
double gauss_curvature_2d(const WarpParams& params, double t);
double gauss_curvature_2d(const ScalarC2& f, double t);

// Spanning pair for a plane at angle theta from the t-direction at p, built from
// unit fiber vectors along x_{n-1} and x_1. Planes with theta > 0 need n >= 3.
std::pair<Tangent, Tangent> plane_at_angle(const WarpParams& params, const Point& p, double theta);

}  // namespace warpgeo
