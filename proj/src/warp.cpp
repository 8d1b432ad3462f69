#include "warpgeo/warp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace warpgeo {

void validate(const WarpParams& params) {
  if (!std::isfinite(params.a)) throw std::invalid_argument("WarpParams: a must be finite");
  if (!(params.b >= -1.0 && params.b <= 1.0))
    throw std::invalid_argument("WarpParams: b must lie in [-1, 1]");
  if (params.n < 2) throw std::invalid_argument("WarpParams: n must be >= 2");
}

static void require_finite_t(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
}

double log_warp(const WarpParams& params, double t) {
  validate(params);
  require_finite_t(t);
  const double bp = 1.0 + params.b;  // weight of the e^{+t} branch
  const double bm = 1.0 - params.b;  // weight of the e^{-t} branch
  if (bp <= 0.0 && bm <= 0.0) throw std::domain_error("log_warp: both branch weights vanish");
  // Single-branch cases: never form ln(0).
  if (bm <= 0.0) return t + std::log(bp) - std::log(2.0) - params.a;
  if (bp <= 0.0) return -t + std::log(bm) - std::log(2.0) - params.a;
  const double u = t + std::log(bp);
  const double v = -t + std::log(bm);
  const double m = std::max(u, v);
  return m + std::log(std::exp(u - m) + std::exp(v - m)) - std::log(2.0) - params.a;
}

double log_warp_d1(const WarpParams& params, double t) {
  validate(params);
  require_finite_t(t);
  const double bp = 1.0 + params.b;
  const double bm = 1.0 - params.b;
  if (bm <= 0.0) return 1.0;
  if (bp <= 0.0) return -1.0;
  if (std::abs(t) <= 350.0) {
    const double A = bp * std::exp(t);
    const double B = bm * std::exp(-t);
    return (A - B) / (A + B);
  }
  // (A - B)/(A + B) = tanh(t + ln(bp/bm)/2); for |t| > 350 the direct form overflows.
  return std::tanh(t + 0.5 * std::log(bp / bm));
}

double log_warp_d2(const WarpParams& params, double t) {
  const double d1 = log_warp_d1(params, t);
  return 1.0 - d1 * d1;
}

double warp_factor(const WarpParams& params, double t) {
  return std::exp(log_warp(params, t));
}

ScalarC2 warp_scalar(const WarpParams& params) {
  validate(params);
  return ScalarC2{
      [params](double t) { return log_warp(params, t); },
      [params](double t) { return log_warp_d1(params, t); },
      [params](double t) { return log_warp_d2(params, t); },
  };
}

double warp_ode_residual(const ScalarC2& f, double t) {
  require_finite_t(t);
  if (!f.d1 || !f.d2) throw std::invalid_argument("warp_ode_residual: derivatives missing");
  const double d1 = f.d1(t);
  const double d2 = f.d2(t);
  if (!std::isfinite(d1) || !std::isfinite(d2))
    throw std::domain_error("warp_ode_residual: non-finite derivative at t=" + std::to_string(t));
  return d2 + d1 * d1 - 1.0;
}

}  // namespace warpgeo
