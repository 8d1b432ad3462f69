#include "warpgeo/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace warpgeo {

std::vector<double> Point::coords() const {
  std::vector<double> q(1 + x.size());
  q[0] = t;
  for (size_t i = 0; i < x.size(); ++i) q[i + 1] = x[i];
  return q;
}

std::vector<double> Tangent::comps() const {
  std::vector<double> c(1 + dx.size());
  c[0] = dt;
  for (size_t i = 0; i < dx.size(); ++i) c[i + 1] = dx[i];
  return c;
}

Point point_from_coords(std::span<const double> q) {
  if (q.size() < 2) throw std::invalid_argument("point_from_coords: need at least 2 coordinates");
  Point p;
  p.t = q[0];
  p.x.assign(q.begin() + 1, q.end());
  return p;
}

Tangent tangent_from_comps(std::span<const double> c) {
  if (c.size() < 2) throw std::invalid_argument("tangent_from_comps: need at least 2 components");
  Tangent v;
  v.dt = c[0];
  v.dx.assign(c.begin() + 1, c.end());
  return v;
}

void validate_point(const WarpParams& params, const Point& p) {
  validate(params);
  if (p.dim() != params.n) throw std::invalid_argument("point dimension does not match params.n");
  if (!std::isfinite(p.t)) throw std::invalid_argument("point has non-finite t");
  for (double xi : p.x)
    if (!std::isfinite(xi)) throw std::invalid_argument("point has non-finite fiber coordinate");
  if (params.fiber == FiberKind::Hyperbolic && p.x.back() < kHeightFloor)
    throw std::domain_error("hyperbolic fiber requires height coordinate above the floor");
}

double fiber_coefficient(const WarpParams& params, const Point& p) {
  validate_point(params, p);
  const double phi = log_warp(params, p.t);
  if (params.fiber == FiberKind::Hyperbolic) {
    const double h = p.x.back();
    return std::exp(2.0 * (phi - std::log(h)));
  }
  return std::exp(2.0 * phi);
}

MetricMatrix metric_at(const WarpParams& params, const Point& p) {
  const double c = fiber_coefficient(params, p);
  MetricMatrix g(params.n, params.n);
  g(0, 0) = 1.0;
  for (int i = 1; i < params.n; ++i) g(i, i) = c;
  return g;
}

static void check_tangent_dim(const WarpParams& params, const Tangent& u) {
  if (u.dim() != params.n) throw std::invalid_argument("tangent dimension does not match params.n");
}

double inner(const WarpParams& params, const Point& p, const Tangent& u, const Tangent& v) {
  check_tangent_dim(params, u);
  check_tangent_dim(params, v);
  const double c = fiber_coefficient(params, p);
  double s = u.dt * v.dt;
  for (size_t i = 0; i < u.dx.size(); ++i) s += c * u.dx[i] * v.dx[i];
  return s;
}

double norm(const WarpParams& params, const Point& p, const Tangent& u) {
  return std::sqrt(inner(params, p, u, u));
}

Tangent normalize(const WarpParams& params, const Point& p, const Tangent& u) {
  const double nu = norm(params, p, u);
  if (!(nu > 1e-300)) throw std::invalid_argument("normalize: zero vector");
  Tangent r = u;
  r.dt /= nu;
  for (double& d : r.dx) d /= nu;
  return r;
}

std::vector<Tangent> gram_schmidt(const WarpParams& params, const Point& p,
                                  const std::vector<Tangent>& vs) {
  std::vector<Tangent> basis;
  basis.reserve(vs.size());
  for (const Tangent& v : vs) {
    const double in_norm2 = inner(params, p, v, v);
    Tangent w = v;
    // Two projection passes; the second mops up cancellation from the first.
    for (int pass = 0; pass < 2; ++pass) {
      for (const Tangent& e : basis) {
        const double c = inner(params, p, w, e);
        w.dt -= c * e.dt;
        for (size_t i = 0; i < w.dx.size(); ++i) w.dx[i] -= c * e.dx[i];
      }
    }
    const double res2 = inner(params, p, w, w);
    if (!(res2 > 1e-14 * std::max(in_norm2, 1e-300)))
      throw std::invalid_argument("gram_schmidt: linearly dependent set");
    basis.push_back(normalize(params, p, w));
  }
  return basis;
}

std::array<double, 2> semicircle_chart(double t, double r) {
  if (!(r > 0.0)) throw std::domain_error("semicircle_chart: r must be positive");
  if (!std::isfinite(t)) throw std::invalid_argument("semicircle_chart: t must be finite");
  return {r * std::tanh(t), r / std::cosh(t)};
}

double pullback_residual(double t, double r) {
  if (!(r > 0.0)) throw std::domain_error("pullback_residual: r must be positive");
  // Long double keeps the residual at the 1e-14 level even where cosh^2(t)/r^2 is ~1e6.
  const long double tl = t, rl = r;
  const long double ch = std::cosh(tl), sh = std::sinh(tl);
  const long double sech = 1.0L / ch, th = sh / ch;
  const long double y = rl * sech;  // height of the image point
  // Columns of dF: d/dt (r tanh t, r sech t) and d/dr.
  const long double jxt = rl * sech * sech, jyt = -rl * sech * th;
  const long double jxr = th, jyr = sech;
  const long double w = 1.0L / (y * y);
  const long double ptt = w * (jxt * jxt + jyt * jyt);
  const long double ptr = w * (jxt * jxr + jyt * jyr);
  const long double prr = w * (jxr * jxr + jyr * jyr);
  const long double ett = 1.0L;
  const long double err = ch * ch / (rl * rl);
  long double m = std::abs(ptt - ett);
  m = std::max(m, std::abs(ptr));
  m = std::max(m, std::abs(prr - err));
  return static_cast<double>(m);
}

double plane_angle(const WarpParams& params, const Point& p, const Tangent& u, const Tangent& v) {
  const auto basis = gram_schmidt(params, p, {u, v});
  Tangent dt_vec;
  dt_vec.dt = 1.0;
  dt_vec.dx.assign(params.n - 1, 0.0);
  const double c0 = inner(params, p, dt_vec, basis[0]);
  const double c1 = inner(params, p, dt_vec, basis[1]);
  double c = std::sqrt(c0 * c0 + c1 * c1);
  c = std::min(1.0, std::max(0.0, c));
  return std::acos(c);
}

}  // namespace warpgeo
