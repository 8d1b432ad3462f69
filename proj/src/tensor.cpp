#include "warpgeo/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace warpgeo {

std::vector<double> Christoffel::contract(std::span<const double> u,
                                          std::span<const double> w) const {
  std::vector<double> r(dim, 0.0);
  for (int k = 0; k < dim; ++k) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      if (u[i] == 0.0) continue;
      for (int j = 0; j < dim; ++j) s += (*this)(k, i, j) * u[i] * w[j];
    }
    r[k] = s;
  }
  return r;
}

// Half-space symbols on fiber coordinates [lo, lo+k) of a larger index space;
// hgt is the global index of the height coordinate.
static void add_halfspace_symbols(Christoffel& gamma, int lo, int k, int hgt, double height) {
  const double inv_h = 1.0 / height;
  for (int i = lo; i < lo + k; ++i) {
    if (i != hgt) {
      gamma.at(i, i, hgt) += -inv_h;
      gamma.at(i, hgt, i) += -inv_h;
      gamma.at(hgt, i, i) += inv_h;
    }
  }
  gamma.at(hgt, hgt, hgt) += -inv_h;
}

Christoffel christoffel_at(const WarpParams& params, const Point& p) {
  validate_point(params, p);
  const int n = params.n;
  Christoffel gamma(n);
  const double dphi = log_warp_d1(params, p.t);
  const double c = fiber_coefficient(params, p);
  for (int i = 1; i < n; ++i) {
    gamma.at(0, i, i) = -dphi * c;
    gamma.at(i, 0, i) = dphi;
    gamma.at(i, i, 0) = dphi;
  }
  if (params.fiber == FiberKind::Hyperbolic)
    add_halfspace_symbols(gamma, 1, n - 1, n - 1, p.x.back());
  return gamma;
}

MetricField warped_metric_field(const WarpParams& params) {
  validate(params);
  MetricField f;
  f.dim = params.n;
  f.metric = [params](std::span<const double> q) {
    return metric_at(params, point_from_coords(q));
  };
  f.christoffel = [params](std::span<const double> q) {
    return christoffel_at(params, point_from_coords(q));
  };
  if (params.fiber == FiberKind::Hyperbolic) {
    f.floor_index = params.n - 1;
    f.floor_value = kHeightFloor;
  }
  return f;
}

MetricField halfspace_metric_field(int k) {
  if (k < 2) throw std::invalid_argument("halfspace_metric_field: k must be >= 2");
  MetricField f;
  f.dim = k;
  f.metric = [k](std::span<const double> q) {
    const double h = q[k - 1];
    if (!(h > kHeightFloor)) throw std::domain_error("half-space point below height floor");
    Mat g(k, k);
    const double c = 1.0 / (h * h);
    for (int i = 0; i < k; ++i) g(i, i) = c;
    return g;
  };
  f.christoffel = [k](std::span<const double> q) {
    const double h = q[k - 1];
    if (!(h > kHeightFloor)) throw std::domain_error("half-space point below height floor");
    Christoffel gamma(k);
    add_halfspace_symbols(gamma, 0, k, k - 1, h);
    return gamma;
  };
  f.floor_index = k - 1;
  f.floor_value = kHeightFloor;
  return f;
}

static void require_off_floor(const MetricField& field, std::span<const double> q, double margin) {
  if (field.floor_index >= 0 && q[field.floor_index] - field.floor_value < margin)
    throw std::domain_error("finite differencing too close to the chart boundary");
}

Christoffel christoffel_fd(const MetricField& field, std::span<const double> q) {
  const int n = field.dim;
  require_off_floor(field, q, 1e-3);
  // dg[l](i,j) = d g_ij / d q_l by central differences.
  std::vector<Mat> dg(n);
  std::vector<double> qp(q.begin(), q.end());
  for (int l = 0; l < n; ++l) {
    const double h = 1e-5 * (1.0 + std::abs(q[l]));
    qp[l] = q[l] + h;
    Mat gp = field.metric(qp);
    qp[l] = q[l] - h;
    Mat gm = field.metric(qp);
    qp[l] = q[l];
    dg[l] = Mat(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg[l](i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
  }
  const Mat ginv = mat_inverse(field.metric(q));
  Christoffel gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma.at(k, i, j) = 0.5 * s;
        gamma.at(k, j, i) = 0.5 * s;
      }
  return gamma;
}

double christoffel_fd_check(const WarpParams& params, const Point& p) {
  const MetricField field = warped_metric_field(params);
  const auto q = p.coords();
  const Christoffel fd = christoffel_fd(field, q);
  const Christoffel an = christoffel_at(params, p);
  double m = 0.0;
  for (size_t i = 0; i < fd.g.size(); ++i) m = std::max(m, std::abs(fd.g[i] - an.g[i]));
  return m;
}

std::vector<double> RiemannValue::apply(std::span<const double> u, std::span<const double> v,
                                        std::span<const double> w) const {
  std::vector<double> r(dim, 0.0);
  for (int l = 0; l < dim; ++l) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      if (u[i] == 0.0) continue;
      for (int j = 0; j < dim; ++j) {
        if (v[j] == 0.0) continue;
        const double uv = u[i] * v[j];
        for (int k = 0; k < dim; ++k) s += component(l, i, j, k) * uv * w[k];
      }
    }
    r[l] = s;
  }
  return r;
}

double RiemannValue::quad(std::span<const double> u, std::span<const double> v,
                          std::span<const double> w, std::span<const double> z) const {
  const auto rw = apply(u, v, w);
  return bilinear(std::span<const double>(rw), metric, z);
}

RiemannValue riemann_of_field(const MetricField& field, std::span<const double> q) {
  const int n = field.dim;
  require_off_floor(field, q, 1e-3);
  const Christoffel gamma = field.christoffel(q);

  // dgamma[i] = d gamma / d q_i, centered with one Richardson level.
  std::vector<Christoffel> dgamma(n, Christoffel(n));
  std::vector<double> qp(q.begin(), q.end());
  for (int i = 0; i < n; ++i) {
    const double h = 1e-4 * (1.0 + std::abs(q[i]));
    auto diff = [&](double step) {
      qp[i] = q[i] + step;
      Christoffel gp = field.christoffel(qp);
      qp[i] = q[i] - step;
      Christoffel gm = field.christoffel(qp);
      qp[i] = q[i];
      for (size_t m = 0; m < gp.g.size(); ++m) gp.g[m] = (gp.g[m] - gm.g[m]) / (2.0 * step);
      return gp;
    };
    const Christoffel d1 = diff(h);
    const Christoffel d2 = diff(0.5 * h);
    for (size_t m = 0; m < d1.g.size(); ++m) dgamma[i].g[m] = (4.0 * d2.g[m] - d1.g[m]) / 3.0;
  }

  RiemannValue r;
  r.dim = n;
  r.comp.assign(static_cast<size_t>(n) * n * n * n, 0.0);
  r.metric = field.metric(q);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dgamma[i](l, j, k) - dgamma[j](l, i, k);
          for (int m = 0; m < n; ++m)
            s += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          r.comp[((static_cast<size_t>(l) * n + i) * n + j) * n + k] = s;
        }
  return r;
}

RiemannValue riemann_at(const WarpParams& params, const Point& p) {
  validate_point(params, p);
  return riemann_of_field(warped_metric_field(params), p.coords());
}

double sectional(const RiemannValue& r, const Tangent& u, const Tangent& v) {
  const auto uc = u.comps();
  const auto vc = v.comps();
  const double uu = bilinear(uc, r.metric, uc);
  const double vv = bilinear(vc, r.metric, vc);
  const double uv = bilinear(uc, r.metric, vc);
  const double gram = uu * vv - uv * uv;
  if (!(gram > 1e-14 * std::max(uu * vv, 1e-300)))
    throw std::invalid_argument("sectional: degenerate plane");
  return r.quad(uc, vc, vc, uc) / gram;
}

double sectional(const WarpParams& params, const Point& p, const Tangent& u, const Tangent& v) {
  return sectional(riemann_at(params, p), u, v);
}

double sectional_closed_form(const WarpParams& params, double t, double theta) {
  validate(params);
  if (params.fiber != FiberKind::Hyperbolic)
    throw std::invalid_argument("sectional_closed_form: no closed form for the flat fiber");
  if (!(theta >= 0.0 && theta <= std::acos(-1.0) / 2 + 1e-12))
    throw std::invalid_argument("sectional_closed_form: theta must lie in [0, pi/2]");
  const double phi = log_warp(params, t);
  const double one_m_b2 = (1.0 - params.b) * (1.0 + params.b);
  // 4(1 - b^2 - e^{2a}) / ((1+b)e^t + (1-b)e^{-t})^2, with the denominator written
  // as 4 e^{2(a + phi)} so nothing overflows before it has to.
  const double amplitude = one_m_b2 * std::exp(-2.0 * (params.a + phi)) - std::exp(-2.0 * phi);
  const double s = std::sin(theta);
  return -1.0 + amplitude * s * s;
}

double gauss_curvature_2d(const WarpParams& params, double t) {
  const double d1 = log_warp_d1(params, t);
  const double d2 = log_warp_d2(params, t);
  return -d2 - d1 * d1;
}

double gauss_curvature_2d(const ScalarC2& f, double t) {
  const double d1 = f.d1(t);
  const double d2 = f.d2(t);
  return -d2 - d1 * d1;
}

std::pair<Tangent, Tangent> plane_at_angle(const WarpParams& params, const Point& p,
                                           double theta) {
  validate_point(params, p);
  const int n = params.n;
  const double c = fiber_coefficient(params, p);
  const double fiber_unit = 1.0 / std::sqrt(c);
  if (n == 2) {
    if (std::abs(theta) > 1e-12)
      throw std::invalid_argument("plane_at_angle: n = 2 only admits the theta = 0 plane");
    Tangent u{1.0, {0.0}};
    Tangent w{0.0, {fiber_unit}};
    return {u, w};
  }
  Tangent u;  // cos(theta) d/dt + sin(theta) * unit vector along x_{n-1}
  u.dt = std::cos(theta);
  u.dx.assign(n - 1, 0.0);
  u.dx.back() = std::sin(theta) * fiber_unit;
  Tangent w;  // unit vector along x_1
  w.dt = 0.0;
  w.dx.assign(n - 1, 0.0);
  w.dx.front() = fiber_unit;
  return {u, w};
}

}  // namespace warpgeo
