#include "warpgeo/verify.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "warpgeo/random.hpp"

namespace warpgeo {

namespace {

Tangent t_direction(int n) {
  Tangent u;
  u.dt = 1.0;
  u.dx.assign(n - 1, 0.0);
  return u;
}

// Unit (in the metric) fiber vector along coordinate axis x_{axis+1}.
Tangent unit_fiber_along(const WarpParams& params, const Point& p, int axis) {
  Tangent u;
  u.dt = 0.0;
  u.dx.assign(params.n - 1, 0.0);
  u.dx[axis] = 1.0 / std::sqrt(fiber_coefficient(params, p));
  return u;
}

Point sigma_point(const WarpParams& params, double t, double height) {
  Point p;
  p.t = t;
  p.x.assign(params.n - 1, 0.0);
  p.x.back() = height;
  return p;
}

std::string describe_seed(std::uint64_t seed) {
  std::ostringstream os;
  os << "seed=" << seed;
  return os.str();
}

}  // namespace

CheckReport make_report(std::string name, double max_residual, double tolerance,
                        std::int64_t samples, std::string details) {
  CheckReport r;
  r.name = std::move(name);
  r.max_residual = max_residual;
  r.tolerance = tolerance;
  r.samples = samples;
  r.pass = max_residual < tolerance;
  r.details = std::move(details);
  return r;
}

CheckReport check_sigma_totally_geodesic(const WarpParams& params, double T, double tol,
                                         int cases, std::uint64_t seed, double integrator_tol) {
  validate(params);
  if (params.n < 3)
    throw std::invalid_argument("check_sigma_totally_geodesic: needs n >= 3");
  if (!(T > 0.0 && T <= 50.0))
    throw std::invalid_argument("check_sigma_totally_geodesic: T must lie in (0, 50]");
  Rng rng(seed);
  double worst = 0.0;
  std::string notes = describe_seed(seed);
  for (int cs = 0; cs < cases; ++cs) {
    const double t0 = rng.uniform(-2.0, 2.0);
    const double h0 = std::exp(rng.uniform(std::log(0.5), std::log(2.0)));
    const Point p0 = sigma_point(params, t0, h0);
    Tangent v;
    v.dt = rng.uniform(-1.0, 1.0);
    v.dx.assign(params.n - 1, 0.0);
    v.dx.back() = rng.uniform(-1.0, 1.0);
    if (std::abs(v.dt) + std::abs(v.dx.back()) < 1e-3) v.dt = 1.0;
    v = normalize(params, p0, v);
    try {
      const GeodesicPath path = geodesic_integrate(params, p0, v, T, integrator_tol);
      if (path.meta.status != PathStatus::Completed) {
        worst = std::numeric_limits<double>::infinity();
        notes += "; chart exit in case " + std::to_string(cs);
        break;
      }
      for (const GeodesicSample& smp : path.samples)
        for (int i = 0; i + 1 < params.n - 1; ++i)
          worst = std::max(worst, std::abs(smp.p.x[i]));
    } catch (const std::exception& e) {
      worst = std::numeric_limits<double>::infinity();
      notes += std::string("; integration failed: ") + e.what();
      break;
    }
  }
  return make_report("sigma_totally_geodesic", worst, tol, cases, notes);
}

CheckReport check_sigma_hyperbolic(const WarpParams& params, double tol,
                                   const ScalarC2* warp_override) {
  validate(params);
  double worst = 0.0;
  std::int64_t count = 0;
  const int nt = 81;
  for (int i = 0; i < nt; ++i) {
    const double t = -8.0 + 16.0 * i / (nt - 1);
    const double k = warp_override ? gauss_curvature_2d(*warp_override, t)
                                   : gauss_curvature_2d(params, t);
    worst = std::max(worst, std::abs(k + 1.0));
    ++count;
  }
  if (!warp_override) {
    for (double t = -3.0; t <= 3.0 + 1e-9; t += 1.0)
      for (double h : {0.5, 1.0, 2.0}) {
        const Point p = sigma_point(params, t, h);
        const double sec =
            sectional(params, p, t_direction(params.n), unit_fiber_along(params, p, params.n - 2));
        worst = std::max(worst, std::abs(sec + 1.0));
        ++count;
      }
  }
  return make_report("sigma_hyperbolic", worst, tol, count,
                     warp_override ? "override warp exponent" : "");
}

CheckReport check_plane_property(const WarpParams& params, const Point& p, const Tangent& w,
                                 double tol, double T, int cases, std::uint64_t seed) {
  validate_point(params, p);
  if (params.fiber != FiberKind::Hyperbolic)
    throw std::invalid_argument("check_plane_property: hyperbolic fiber only");
  if (!(T > 0.0 && T <= 50.0))
    throw std::invalid_argument("check_plane_property: T must lie in (0, 50]");
  Tangent wf = w;
  wf.dt = 0.0;
  double mag = 0.0;
  for (double c : wf.dx) mag = std::max(mag, std::abs(c));
  if (!(mag > 1e-12))
    throw std::invalid_argument(
        "check_plane_property: spanning direction must have a fiber component");

  const FiberIsometry mover = unit_tangent_mover(p.x, wf.dx);
  const LiftedIsometry bar = lift_isometry(mover, params.n);
  const LiftedIsometry inv = bar.inverse();

  // The mover should carry the base point of the reflection surface to p.
  const Point base = sigma_point(params, p.t, 1.0);
  const Point mapped = bar.apply(base);
  double map_err = 0.0;
  for (int i = 0; i < params.n - 1; ++i)
    map_err = std::max(map_err, std::abs(mapped.x[i] - p.x[i]));

  Rng rng(seed);
  double worst = 0.0;
  std::ostringstream notes;
  notes << describe_seed(seed) << "; base map error " << map_err;

  for (int cs = 0; cs < cases; ++cs) {
    const double t0 = rng.uniform(-2.0, 2.0);
    const double h0 = std::exp(rng.uniform(std::log(0.5), std::log(2.0)));
    const Point q0 = sigma_point(params, t0, h0);
    Tangent v;
    v.dt = rng.uniform(-1.0, 1.0);
    v.dx.assign(params.n - 1, 0.0);
    v.dx.back() = rng.uniform(-1.0, 1.0);
    if (std::abs(v.dt) + std::abs(v.dx.back()) < 1e-3) v.dt = 1.0;
    v = normalize(params, q0, v);

    const Point start = bar.apply(q0);
    const Tangent vstart = bar.push(q0, v);
    try {
      const GeodesicPath path = geodesic_integrate(params, start, vstart, T, 1e-10);
      if (path.meta.status != PathStatus::Completed) {
        worst = std::numeric_limits<double>::infinity();
        notes << "; chart exit in case " << cs;
        break;
      }
      for (const GeodesicSample& smp : path.samples) {
        const auto back = inv.fiber_map.apply(smp.p.x);
        for (int i = 0; i + 1 < params.n - 1; ++i) worst = std::max(worst, std::abs(back[i]));
      }
    } catch (const std::exception& e) {
      worst = std::numeric_limits<double>::infinity();
      notes << "; integration failed: " << e.what();
      break;
    }
  }

  // Sectional curvature of the pushed surface tangent planes.
  for (double t : {-2.0, 0.0, 2.0})
    for (double h : {0.5, 1.0, 2.0}) {
      const Point q = sigma_point(params, t, h);
      const Tangent u1 = bar.push(q, t_direction(params.n));
      const Tangent u2 = bar.push(q, unit_fiber_along(params, q, params.n - 2));
      const double sec = sectional(params, bar.apply(q), u1, u2);
      worst = std::max(worst, std::abs(sec + 1.0));
    }

  return make_report("plane_property", worst, tol, cases, notes.str());
}

CheckReport hyperbolic_rank_check(const WarpParams& params, const Point& p0, const Tangent& v0,
                                  double T, double tol, double integrator_tol) {
  validate_point(params, p0);
  if (!(T > 0.0 && T <= 50.0))
    throw std::invalid_argument("hyperbolic_rank_check: T must lie in (0, 50]");
  const Tangent vu = normalize(params, p0, v0);
  const Tangent dt_vec = t_direction(params.n);

  // Parallel field seed: the unit vector of span{v0, d/dt} orthogonal to v0, or any
  // fiber unit vector when v0 is the t-direction itself.
  const double c = inner(params, p0, dt_vec, vu);
  Tangent seed;
  seed.dt = dt_vec.dt - c * vu.dt;
  seed.dx.resize(params.n - 1);
  for (int i = 0; i < params.n - 1; ++i) seed.dx[i] = dt_vec.dx[i] - c * vu.dx[i];
  const double seed2 = inner(params, p0, seed, seed);
  Tangent V0 = (seed2 > 1e-16) ? normalize(params, p0, seed) : unit_fiber_along(params, p0, 0);

  std::ostringstream notes;
  notes << "T=" << T << ", integrator_tol=" << integrator_tol;
  try {
    const GeodesicPath path = geodesic_integrate(params, p0, vu, T, integrator_tol);
    if (path.meta.status != PathStatus::Completed)
      return make_report("hyperbolic_rank", std::numeric_limits<double>::infinity(), tol, 0,
                         notes.str() + "; chart exit");
    const TransportedField field = parallel_transport(path, V0);
    const std::int64_t total = static_cast<std::int64_t>(path.samples.size());
    const std::int64_t stride = std::max<std::int64_t>(1, (total - 1) / 256);
    double worst = 0.0;
    std::int64_t evals = 0;
    for (std::int64_t i = 0; i < total; i += stride) {
      const std::int64_t idx = std::min(i, total - 1);
      const GeodesicSample& smp = path.samples[idx];
      const double sec = sectional(params, smp.p, smp.v, field.w[idx]);
      worst = std::max(worst, std::abs(sec + 1.0));
      ++evals;
    }
    {  // always include the endpoint
      const GeodesicSample& smp = path.samples.back();
      const double sec = sectional(params, smp.p, smp.v, field.w.back());
      worst = std::max(worst, std::abs(sec + 1.0));
      ++evals;
    }
    return make_report("hyperbolic_rank", worst, tol, evals, notes.str());
  } catch (const std::exception& e) {
    return make_report("hyperbolic_rank", std::numeric_limits<double>::infinity(), tol, 0,
                       notes.str() + "; failed: " + e.what());
  }
}

bool constant_curvature_detect(const WarpParams& params) {
  validate(params);
  if (params.fiber != FiberKind::Hyperbolic)
    throw std::invalid_argument("constant_curvature_detect: hyperbolic fiber only");
  return std::abs(params.b * params.b + std::exp(2.0 * params.a) - 1.0) < 1e-12;
}

std::optional<double> symmetry_center(const WarpParams& params) {
  validate(params);
  if (params.fiber != FiberKind::Hyperbolic)
    throw std::invalid_argument("symmetry_center: hyperbolic fiber only");
  if (params.b == 1.0 || params.b == -1.0) return std::nullopt;
  if (constant_curvature_detect(params)) return std::nullopt;
  return 0.5 * (std::log1p(-params.b) - std::log1p(params.b));
}

CurvatureRange extremal_curvatures(const WarpParams& params) {
  validate(params);
  if (params.fiber != FiberKind::Hyperbolic)
    throw std::invalid_argument("extremal_curvatures: hyperbolic fiber only");
  CurvatureRange r;
  if (constant_curvature_detect(params)) {
    r.lo = r.hi = -1.0;
    return r;
  }
  const double e2a = std::exp(2.0 * params.a);
  const double excess = 1.0 - params.b * params.b - e2a;
  if (excess < 0.0) {
    r.hi = -1.0;
    if (params.b == 1.0 || params.b == -1.0) {
      r.lo = -std::numeric_limits<double>::infinity();
      r.lo_attained = false;
    } else {
      // Extreme of the closed form at its symmetry center.
      r.lo = -std::exp(2.0 * params.a - std::log1p(-params.b) - std::log1p(params.b));
    }
  } else {
    r.lo = -1.0;
    r.hi = -std::exp(2.0 * params.a - std::log1p(-params.b) - std::log1p(params.b));
  }
  return r;
}

}  // namespace warpgeo
