#pragma once
#include <functional>

namespace warpgeo {

// Fiber geometry of the product R x F: upper half-space hyperbolic model or flat space.
enum class FiberKind { Hyperbolic, Euclidean };

// Parameters selecting one metric of the warped family on R x F^{n-1}:
// a shifts the warp factor, b in [-1,1] sets its logarithmic slope at t = 0,
// n is the total dimension.
struct WarpParams {
  double a = 0.0;
  double b = 0.0;
  int n = 3;
  FiberKind fiber = FiberKind::Hyperbolic;
};

// Throws std::invalid_argument unless a is finite, -1 <= b <= 1 and n >= 2.
void validate(const WarpParams& params);

/// Warping exponent: log_warp = ln(((1+b)e^t + (1-b)e^{-t}) / (2 e^a)),
/// evaluated in log-sum-exp form so |t| up to ~700 and |a| up to ~300 stay finite.
double log_warp(const WarpParams& params, double t);

/// First derivative of the warping exponent; always in [-1, 1].
double log_warp_d1(const WarpParams& params, double t);

/// Second derivative, defined through the warp ODE: 1 - (log_warp_d1)^2.
double log_warp_d2(const WarpParams& params, double t);

/// Warp factor e^{log_warp(t)} > 0.
double warp_factor(const WarpParams& params, double t);

// A scalar function with two derivatives, for residual checks and test hooks.
struct ScalarC2 {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

// The analytic warping function as a ScalarC2.
ScalarC2 warp_scalar(const WarpParams& params);

/// Residual of the warp ODE f'' + (f')^2 - 1 at t; zero iff f solves it there.
double warp_ode_residual(const ScalarC2& f, double t);

}  // namespace warpgeo
