#pragma once
#include <cstdint>
#include <vector>

#include "warpgeo/tensor.hpp"

namespace warpgeo {

enum class PathStatus { Completed, DomainExit };

struct PathMeta {
  double tol = 1e-10;
  PathStatus status = PathStatus::Completed;
  double exit_s = 0.0;  // where the chart domain was left, when status == DomainExit
  std::int64_t steps_accepted = 0;
  std::int64_t steps_rejected = 0;
  std::int64_t rhs_evals = 0;
};

// Field-level sample: flat coordinates and velocity components at parameter s.
struct RawSample {
  double s = 0.0;
  std::vector<double> q;
  std::vector<double> v;
};

struct RawPath {
  int dim = 0;
  std::vector<RawSample> samples;
  PathMeta meta;
};

struct IntegrateOptions {
  double tol = 1e-10;            // local error control, must lie in [1e-13, 1e-4]
  double sample_spacing = 0.0;   // 0 selects min(|T|/64, 0.01)
  std::int64_t max_steps = 4'000'000;
};

// Integrates the geodesic equation of the field from (q0, v0) over [0, T] with an
// embedded Dormand-Prince 5(4) pair, landing exactly on a uniform sample grid.
// T may be negative. Chart exit is reported in meta, not thrown; an unachievable
// tolerance throws std::runtime_error.
RawPath integrate_geodesic(const MetricField& field, std::span<const double> q0,
                           std::span<const double> v0, double T,
                           const IntegrateOptions& opts = {});

// Transport of w0 along the stored path (dense output by cubic Hermite between
// samples); returns one component vector per sample.
std::vector<std::vector<double>> transport_along(const MetricField& field, const RawPath& path,
                                                 std::span<const double> w0,
                                                 const IntegrateOptions& opts = {});

// Max interval defect of the geodesic equation in integral form over the sample
// grid: || v_{k+1} - v_k - \int a ds || with the integral by Simpson's rule.
double geodesic_residual(const MetricField& field, const RawPath& path);

// Sampled geodesic of a warped metric with per-sample position and velocity.
struct GeodesicSample {
  double s = 0.0;
  Point p;
  Tangent v;
};

struct GeodesicPath {
  WarpParams params;
  std::vector<GeodesicSample> samples;
  PathMeta meta;

  const GeodesicSample& front() const { return samples.front(); }
  const GeodesicSample& back() const { return samples.back(); }
};

GeodesicPath geodesic_integrate(const WarpParams& params, const Point& p0, const Tangent& v0,
                                double T, double tol = 1e-10);
GeodesicPath geodesic_integrate(const WarpParams& params, const Point& p0, const Tangent& v0,
                                double T, const IntegrateOptions& opts);

/// Endpoint of the unit-time geodesic with initial velocity v; exp(0) = p.
Point exp_map(const WarpParams& params, const Point& p, const Tangent& v, double tol = 1e-10);

// A vector field along a geodesic, parallel for the ambient connection.
struct TransportedField {
  GeodesicPath base;
  std::vector<Tangent> w;  // aligned with base.samples
};

TransportedField parallel_transport(const GeodesicPath& path, const Tangent& w0);

double geodesic_residual(const GeodesicPath& path);

RawPath to_raw(const GeodesicPath& path);
GeodesicPath from_raw(const WarpParams& params, const RawPath& raw);

}  // namespace warpgeo
