#include "warpgeo/flows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace warpgeo {

namespace {

// Dormand-Prince 5(4) tableau (RK5(4)7M).
constexpr double kC[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5.0},
    {3.0 / 40.0, 9.0 / 40.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0},
};
constexpr double kB5[7] = {35.0 / 384.0,      0.0,          500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0,  11.0 / 84.0,  0.0};
constexpr double kB4[7] = {5179.0 / 57600.0,  0.0,          7571.0 / 16695.0, 393.0 / 640.0,
                           -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0};

struct Controller {
  double err_old = 1e-4;
  bool rejected = false;

  // Hairer-style PI update; returns the next proposed step size.
  double next_h(double h, double err, bool accepted) {
    constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safety = 0.9;
    const double fac11 = std::pow(std::max(err, 1e-32), expo1);
    if (accepted) {
      double fac = fac11 / std::pow(err_old, beta);
      fac = std::clamp(fac / safety, 0.1, 5.0);
      double hn = h / fac;
      if (rejected && std::abs(hn) > std::abs(h)) hn = h;
      err_old = std::max(err, 1e-4);
      rejected = false;
      return hn;
    }
    rejected = true;
    return h / std::min(5.0, fac11 / safety);
  }
};

using Rhs = std::function<void(double, std::span<const double>, std::span<double>)>;
using Guard = std::function<bool(std::span<const double>)>;

struct Stepper {
  int n = 0;
  Rhs rhs;
  Guard in_domain;  // optional; checked on accepted states
  double tol = 1e-10;
  PathMeta* meta = nullptr;
  Controller ctrl;
  std::int64_t max_steps = 0;

  std::vector<double> y, fy, ynew, ytmp, yerr;
  std::vector<std::vector<double>> k;
  double s = 0.0;
  double h_prop = 0.0;

  bool domain_exit = false;
  double exit_s = 0.0;

  void init(std::span<const double> y0, double s0, double h0) {
    y.assign(y0.begin(), y0.end());
    fy.resize(y.size());
    ynew.resize(y.size());
    ytmp.resize(y.size());
    yerr.resize(y.size());
    k.assign(7, std::vector<double>(y.size()));
    s = s0;
    h_prop = h0;
    rhs(s, y, fy);
    ++meta->rhs_evals;
  }

  double error_norm() const {
    double acc = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
      const double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
      const double e = yerr[i] / sc;
      acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(y.size()));
  }

  // Advances to s_target (signed direction). Returns false on domain exit.
  bool advance_to(double s_target) {
    const double dir = (s_target >= s) ? 1.0 : -1.0;
    int domain_rejects = 0;
    while (dir * (s_target - s) > 0.0) {
      if (meta->steps_accepted + meta->steps_rejected > max_steps)
        throw std::runtime_error("geodesic integration exceeded the step budget");
      double h = dir * std::min(std::abs(h_prop), std::abs(s_target - s));
      const bool hits_target = std::abs(h) >= std::abs(s_target - s) * (1.0 - 1e-14);
      if (std::abs(h) < 1e-14 * (1.0 + std::abs(s))) {
        if (domain_rejects > 0) {  // squeezed against the chart boundary
          domain_exit = true;
          exit_s = s;
          return false;
        }
        throw std::runtime_error("tolerance not achievable: step size underflow");
      }

      bool stage_domain_error = false;
      try {
        k[0] = fy;
        for (int st = 1; st < 7; ++st) {
          for (size_t i = 0; i < y.size(); ++i) {
            double acc = 0.0;
            for (int j = 0; j < st; ++j) acc += kA[st][j] * k[j][i];
            ytmp[i] = y[i] + h * acc;
          }
          rhs(s + kC[st] * h, ytmp, k[st]);
          ++meta->rhs_evals;
        }
      } catch (const std::domain_error&) {
        stage_domain_error = true;
      }
      if (stage_domain_error) {
        ++meta->steps_rejected;
        ++domain_rejects;
        h_prop = 0.25 * h;
        continue;
      }

      for (size_t i = 0; i < y.size(); ++i) {
        double acc5 = 0.0, acc4 = 0.0;
        for (int j = 0; j < 7; ++j) {
          acc5 += kB5[j] * k[j][i];
          acc4 += kB4[j] * k[j][i];
        }
        ynew[i] = y[i] + h * acc5;
        yerr[i] = h * (acc5 - acc4);
      }
      const double err = error_norm();
      if (err <= 1.0) {
        y = ynew;
        fy = k[6];  // FSAL: stage 7 sits at the accepted state
        s = hits_target ? s_target : s + h;
        ++meta->steps_accepted;
        h_prop = next_h_keep_dir(h, err, true, dir);
        domain_rejects = 0;
        if (in_domain && !in_domain(y)) {
          domain_exit = true;
          exit_s = s;
          return false;
        }
      } else {
        ++meta->steps_rejected;
        h_prop = next_h_keep_dir(h, err, false, dir);
      }
    }
    return true;
  }

  double next_h_keep_dir(double h, double err, bool accepted, double dir) {
    const double hn = ctrl.next_h(h, err, accepted);
    return dir * std::abs(hn);
  }
};

constexpr double kDefaultSpacing = 0.01;
constexpr int kMinSamples = 64;

void check_options(const IntegrateOptions& opts) {
  if (!(opts.tol >= 1e-13 && opts.tol <= 1e-4))
    throw std::invalid_argument("integration tolerance must lie in [1e-13, 1e-4]");
  if (opts.sample_spacing < 0.0) throw std::invalid_argument("sample_spacing must be >= 0");
}

std::vector<double> pack_state(std::span<const double> q, std::span<const double> v) {
  std::vector<double> y(q.size() + v.size());
  std::copy(q.begin(), q.end(), y.begin());
  std::copy(v.begin(), v.end(), y.begin() + q.size());
  return y;
}

}  // namespace

RawPath integrate_geodesic(const MetricField& field, std::span<const double> q0,
                           std::span<const double> v0, double T, const IntegrateOptions& opts) {
  check_options(opts);
  const int n = field.dim;
  if (static_cast<int>(q0.size()) != n || static_cast<int>(v0.size()) != n)
    throw std::invalid_argument("integrate_geodesic: dimension mismatch");
  if (!std::isfinite(T) || T == 0.0)
    throw std::invalid_argument("integrate_geodesic: T must be finite and nonzero");
  double vmag = 0.0;
  for (double c : v0) vmag += c * c;
  if (!(vmag > 0.0)) throw std::invalid_argument("integrate_geodesic: zero initial velocity");

  const double spacing = opts.sample_spacing > 0.0
                             ? opts.sample_spacing
                             : std::min(std::abs(T) / kMinSamples, kDefaultSpacing);
  const int nseg = std::max(kMinSamples, static_cast<int>(std::ceil(std::abs(T) / spacing)));

  RawPath path;
  path.dim = n;
  path.meta.tol = opts.tol;
  path.samples.reserve(nseg + 1);

  Stepper st;
  st.n = n;
  st.tol = opts.tol;
  st.meta = &path.meta;
  st.max_steps = opts.max_steps;
  st.rhs = [&field, n](double, std::span<const double> y, std::span<double> f) {
    const auto q = y.subspan(0, n);
    const auto v = y.subspan(n, n);
    const Christoffel gamma = field.christoffel(q);
    const auto acc = gamma.contract(v, v);
    for (int i = 0; i < n; ++i) {
      f[i] = v[i];
      f[n + i] = -acc[i];
    }
  };
  if (field.floor_index >= 0) {
    const int fi = field.floor_index;
    const double margin = 2.0 * field.floor_value;
    st.in_domain = [fi, margin](std::span<const double> y) { return y[fi] > margin; };
  }

  st.init(pack_state(q0, v0), 0.0, T / nseg);
  path.samples.push_back({0.0, {q0.begin(), q0.end()}, {v0.begin(), v0.end()}});

  for (int kseg = 1; kseg <= nseg; ++kseg) {
    const double s_target = (kseg == nseg) ? T : T * (static_cast<double>(kseg) / nseg);
    if (!st.advance_to(s_target)) {
      path.meta.status = PathStatus::DomainExit;
      path.meta.exit_s = st.exit_s;
      return path;
    }
    RawSample smp;
    smp.s = s_target;
    smp.q.assign(st.y.begin(), st.y.begin() + n);
    smp.v.assign(st.y.begin() + n, st.y.end());
    path.samples.push_back(std::move(smp));
  }
  return path;
}

namespace {

// Cubic Hermite interpolation of (q, v) between path samples; velocities act as
// slopes for q, accelerations from the field as slopes for v.
struct PathInterpolant {
  const RawPath* path;
  int n;
  std::vector<std::vector<double>> accel;

  PathInterpolant(const MetricField& field, const RawPath& p) : path(&p), n(p.dim) {
    accel.reserve(p.samples.size());
    for (const RawSample& smp : p.samples) {
      const Christoffel gamma = field.christoffel(smp.q);
      auto a = gamma.contract(smp.v, smp.v);
      for (double& c : a) c = -c;
      accel.push_back(std::move(a));
    }
  }

  int interval_of(double s) const {
    const auto& smp = path->samples;
    const double dir = (smp.back().s >= smp.front().s) ? 1.0 : -1.0;
    int lo = 0, hi = static_cast<int>(smp.size()) - 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (dir * (s - smp[mid].s) >= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

  void eval(double s, std::vector<double>& q, std::vector<double>& v) const {
    const auto& smp = path->samples;
    const int i = interval_of(s);
    const RawSample& s0 = smp[i];
    const RawSample& s1 = smp[i + 1];
    const double h = s1.s - s0.s;
    const double th = (s - s0.s) / h;
    const double th2 = th * th, th3 = th2 * th;
    const double h00 = 2 * th3 - 3 * th2 + 1, h10 = th3 - 2 * th2 + th;
    const double h01 = -2 * th3 + 3 * th2, h11 = th3 - th2;
    q.resize(n);
    v.resize(n);
    for (int c = 0; c < n; ++c) {
      q[c] = h00 * s0.q[c] + h10 * h * s0.v[c] + h01 * s1.q[c] + h11 * h * s1.v[c];
      v[c] = h00 * s0.v[c] + h10 * h * accel[i][c] + h01 * s1.v[c] + h11 * h * accel[i + 1][c];
    }
  }
};

}  // namespace

std::vector<std::vector<double>> transport_along(const MetricField& field, const RawPath& path,
                                                 std::span<const double> w0,
                                                 const IntegrateOptions& opts) {
  check_options(opts);
  const int n = field.dim;
  if (static_cast<int>(w0.size()) != n)
    throw std::invalid_argument("transport_along: dimension mismatch");
  if (path.samples.size() < 2)
    throw std::invalid_argument("transport_along: path has fewer than 2 samples");

  const PathInterpolant interp(field, path);
  std::vector<std::vector<double>> out;
  out.reserve(path.samples.size());
  out.push_back({w0.begin(), w0.end()});

  PathMeta scratch;
  scratch.tol = opts.tol;
  Stepper st;
  st.n = n;
  st.tol = opts.tol;
  st.meta = &scratch;
  st.max_steps = opts.max_steps;
  std::vector<double> q, v;
  st.rhs = [&](double s, std::span<const double> w, std::span<double> f) {
    interp.eval(s, q, v);
    const Christoffel gamma = field.christoffel(q);
    const auto dw = gamma.contract(v, w);
    for (int i = 0; i < n; ++i) f[i] = -dw[i];
  };

  const double s0 = path.samples.front().s;
  const double s1 = path.samples[1].s;
  st.init(w0, s0, s1 - s0);
  for (size_t i = 1; i < path.samples.size(); ++i) {
    st.advance_to(path.samples[i].s);
    out.push_back(st.y);
  }
  return out;
}

double geodesic_residual(const MetricField& field, const RawPath& path) {
  if (path.samples.size() < 3)
    throw std::invalid_argument("geodesic_residual: need at least 3 samples");
  const int n = field.dim;
  const PathInterpolant interp(field, path);
  std::vector<double> qm, vm;
  double worst = 0.0;
  for (size_t i = 0; i + 1 < path.samples.size(); ++i) {
    const RawSample& a = path.samples[i];
    const RawSample& b = path.samples[i + 1];
    const double h = b.s - a.s;
    interp.eval(0.5 * (a.s + b.s), qm, vm);
    const Christoffel gm = field.christoffel(qm);
    auto am = gm.contract(vm, vm);
    for (double& c : am) c = -c;
    double norm2 = 0.0;
    for (int c = 0; c < n; ++c) {
      const double simpson = (h / 6.0) * (interp.accel[i][c] + 4.0 * am[c] + interp.accel[i + 1][c]);
      const double defect = b.v[c] - a.v[c] - simpson;
      norm2 += defect * defect;
    }
    worst = std::max(worst, std::sqrt(norm2));
  }
  return worst;
}

RawPath to_raw(const GeodesicPath& path) {
  RawPath raw;
  raw.dim = path.params.n;
  raw.meta = path.meta;
  raw.samples.reserve(path.samples.size());
  for (const GeodesicSample& s : path.samples)
    raw.samples.push_back({s.s, s.p.coords(), s.v.comps()});
  return raw;
}

GeodesicPath from_raw(const WarpParams& params, const RawPath& raw) {
  GeodesicPath path;
  path.params = params;
  path.meta = raw.meta;
  path.samples.reserve(raw.samples.size());
  for (const RawSample& s : raw.samples)
    path.samples.push_back({s.s, point_from_coords(s.q), tangent_from_comps(s.v)});
  return path;
}

GeodesicPath geodesic_integrate(const WarpParams& params, const Point& p0, const Tangent& v0,
                                double T, const IntegrateOptions& opts) {
  validate_point(params, p0);
  if (v0.dim() != params.n) throw std::invalid_argument("geodesic_integrate: tangent dimension");
  const MetricField field = warped_metric_field(params);
  const RawPath raw = integrate_geodesic(field, p0.coords(), v0.comps(), T, opts);
  return from_raw(params, raw);
}

GeodesicPath geodesic_integrate(const WarpParams& params, const Point& p0, const Tangent& v0,
                                double T, double tol) {
  IntegrateOptions opts;
  opts.tol = tol;
  return geodesic_integrate(params, p0, v0, T, opts);
}

Point exp_map(const WarpParams& params, const Point& p, const Tangent& v, double tol) {
  validate_point(params, p);
  double mag = std::abs(v.dt);
  for (double c : v.dx) mag = std::max(mag, std::abs(c));
  if (mag == 0.0) return p;
  const GeodesicPath path = geodesic_integrate(params, p, v, 1.0, tol);
  if (path.meta.status != PathStatus::Completed)
    throw std::domain_error("exp_map: geodesic left the chart domain");
  return path.back().p;
}

TransportedField parallel_transport(const GeodesicPath& path, const Tangent& w0) {
  if (path.samples.empty()) throw std::invalid_argument("parallel_transport: empty path");
  if (w0.dim() != path.params.n)
    throw std::invalid_argument("parallel_transport: tangent dimension");
  const MetricField field = warped_metric_field(path.params);
  const RawPath raw = to_raw(path);
  IntegrateOptions opts;
  opts.tol = path.meta.tol;
  const auto comps = transport_along(field, raw, w0.comps(), opts);
  TransportedField out;
  out.base = path;
  out.w.reserve(comps.size());
  for (const auto& c : comps) out.w.push_back(tangent_from_comps(c));
  return out;
}

double geodesic_residual(const GeodesicPath& path) {
  return geodesic_residual(warped_metric_field(path.params), to_raw(path));
}

}  // namespace warpgeo
