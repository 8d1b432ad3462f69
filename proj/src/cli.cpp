#include "warpgeo/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "warpgeo/io.hpp"
#include "warpgeo/random.hpp"
#include "warpgeo/tensor.hpp"

namespace warpgeo::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

Point random_point(const WarpParams& params, Rng& rng) {
  Point p;
  p.t = rng.uniform(-3.0, 3.0);
  p.x.resize(params.n - 1);
  for (int i = 0; i + 1 < params.n - 1; ++i) p.x[i] = rng.uniform(-1.0, 1.0);
  if (params.fiber == FiberKind::Hyperbolic)
    p.x.back() = std::exp(rng.uniform(std::log(0.5), std::log(2.0)));
  else
    p.x.back() = rng.uniform(-1.0, 1.0);
  return p;
}

Tangent random_tangent(const WarpParams& params, Rng& rng, bool fiber_only = false) {
  Tangent v;
  v.dt = fiber_only ? 0.0 : rng.uniform(-1.0, 1.0);
  v.dx.resize(params.n - 1);
  double mag = std::abs(v.dt);
  for (double& d : v.dx) {
    d = rng.uniform(-1.0, 1.0);
    mag = std::max(mag, std::abs(d));
  }
  if (mag < 1e-3) v.dx[0] = 1.0;
  return v;
}

Tangent t_direction(int n) {
  Tangent u;
  u.dt = 1.0;
  u.dx.assign(n - 1, 0.0);
  return u;
}

// Unit vector of span{v, d/dt} orthogonal to v; any unit fiber vector when v is
// the t-direction itself. Shared by the transport and rank commands.
Tangent rank_seed_vector(const WarpParams& params, const Point& p, const Tangent& v_unit) {
  const Tangent dt_vec = t_direction(params.n);
  const double c = inner(params, p, dt_vec, v_unit);
  Tangent seed;
  seed.dt = dt_vec.dt - c * v_unit.dt;
  seed.dx.resize(params.n - 1);
  for (int i = 0; i < params.n - 1; ++i) seed.dx[i] = dt_vec.dx[i] - c * v_unit.dx[i];
  if (inner(params, p, seed, seed) > 1e-16) return normalize(params, p, seed);
  Tangent fib;
  fib.dt = 0.0;
  fib.dx.assign(params.n - 1, 0.0);
  fib.dx[0] = 1.0;
  return normalize(params, p, fib);
}

std::string param_label(const WarpParams& params) {
  std::ostringstream os;
  os << "a=" << params.a << " b=" << params.b << " n=" << params.n << " fiber="
     << (params.fiber == FiberKind::Hyperbolic ? "hyperbolic" : "euclidean");
  return os.str();
}

CheckReport check_warp_ode(const WarpParams& params) {
  const ScalarC2 f = warp_scalar(params);
  double worst = 0.0;
  const int nt = 1000;
  for (int i = 0; i < nt; ++i) {
    const double t = -20.0 + 40.0 * i / (nt - 1);
    worst = std::max(worst, std::abs(warp_ode_residual(f, t)));
  }
  return make_report("warp_ode", worst, 1e-12, nt);
}

CheckReport check_curvature_law(const WarpParams& params, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  const int cases = 60;
  for (int cs = 0; cs < cases; ++cs) {
    const Point p = random_point(params, rng);
    const double theta = (params.n >= 3) ? rng.uniform(0.0, kPi / 2) : 0.0;
    const auto span_pair = plane_at_angle(params, p, theta);
    const double num = sectional(params, p, span_pair.first, span_pair.second);
    const double closed = sectional_closed_form(params, p.t, theta);
    worst = std::max(worst, std::abs(num - closed));
  }
  return make_report("curvature_law", worst, 1e-5, cases, "seed=" + std::to_string(seed));
}

FiberGenerator random_generator(const WarpParams& params, Rng& rng) {
  const int hdim = params.n - 2;
  switch (rng.uniform_int(0, 3)) {
    case 0: {
      std::vector<double> c(hdim);
      for (double& ci : c) ci = rng.uniform(-1.0, 1.0);
      return HorizontalTranslation{std::move(c)};
    }
    case 1:
      return Dilation{std::exp(rng.uniform(-1.0, 1.0))};
    case 2: {
      // Random orthogonal matrix by Gram-Schmidt on random columns.
      Mat q(hdim, hdim);
      for (int col = 0; col < hdim; ++col) {
        std::vector<double> v(hdim);
        for (double& vi : v) vi = rng.uniform(-1.0, 1.0);
        for (int prev = 0; prev < col; ++prev) {
          double dot = 0.0;
          for (int i = 0; i < hdim; ++i) dot += v[i] * q(i, prev);
          for (int i = 0; i < hdim; ++i) v[i] -= dot * q(i, prev);
        }
        double nn = 0.0;
        for (double vi : v) nn += vi * vi;
        nn = std::sqrt(nn);
        if (nn < 1e-8) {  // retry with a basis vector
          std::fill(v.begin(), v.end(), 0.0);
          v[col] = 1.0;
          for (int prev = 0; prev < col; ++prev) {
            double dot = 0.0;
            for (int i = 0; i < hdim; ++i) dot += v[i] * q(i, prev);
            for (int i = 0; i < hdim; ++i) v[i] -= dot * q(i, prev);
          }
          nn = 0.0;
          for (double vi : v) nn += vi * vi;
          nn = std::sqrt(nn);
        }
        for (int i = 0; i < hdim; ++i) q(i, col) = v[i] / nn;
      }
      return Rotation{std::move(q)};
    }
    default:
      return Inversion{};
  }
}

CheckReport check_isometry_lift(const WarpParams& params, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  std::int64_t samples = 0;

  std::vector<FiberIsometry> words;
  // Each generator alone, then random words of length <= 5.
  {
    std::vector<double> c(params.n - 2);
    for (double& ci : c) ci = rng.uniform(-1.0, 1.0);
    words.push_back(FiberIsometry::translation(std::move(c)));
    words.push_back(FiberIsometry::dilation(1.7));
    words.push_back(FiberIsometry::horizontal_reflection(params.n - 1));
    words.push_back(FiberIsometry::inversion());
  }
  for (int wln = 0; wln < 10; ++wln) {
    FiberIsometry f;
    const int len = rng.uniform_int(1, 5);
    for (int g = 0; g < len; ++g) f.word.push_back(random_generator(params, rng));
    words.push_back(std::move(f));
  }

  for (const FiberIsometry& f : words)
    for (int pt = 0; pt < 5; ++pt) {
      const Point p = random_point(params, rng);
      worst = std::max(worst, isometry_pullback_residual(params, f, p));
      ++samples;
    }
  return make_report("isometry_lift", worst, 1e-9, samples, "seed=" + std::to_string(seed));
}

CheckReport check_rank_batch(const WarpParams& params, int geodesics, double T,
                             std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  std::int64_t samples = 0;
  for (int g = 0; g < geodesics; ++g) {
    const Point p0 = random_point(params, rng);
    const Tangent v0 = random_tangent(params, rng);
    const CheckReport r = hyperbolic_rank_check(params, p0, v0, T, 1e-5);
    worst = std::max(worst, r.max_residual);
    samples += r.samples;
  }
  return make_report("hyperbolic_rank", worst, 1e-5, samples,
                     "geodesics=" + std::to_string(geodesics) + " seed=" + std::to_string(seed));
}

CheckReport check_constant_curvature(const WarpParams& params, std::uint64_t seed) {
  Rng rng(seed);
  const bool detect = constant_curvature_detect(params);
  double dev = 0.0;
  const int cases = 100;
  for (int cs = 0; cs < cases; ++cs) {
    const Point p = random_point(params, rng);
    for (int attempt = 0; attempt < 8; ++attempt) {
      try {
        const double sec =
            sectional(params, p, random_tangent(params, rng), random_tangent(params, rng));
        dev = std::max(dev, std::abs(sec + 1.0));
        break;
      } catch (const std::invalid_argument&) {
        continue;  // degenerate random plane; redraw
      }
    }
  }
  std::ostringstream details;
  details << "detect=" << (detect ? "true" : "false") << " max|sec+1|=" << dev
          << " seed=" << seed;
  if (detect) return make_report("constant_curvature", dev, 1e-5, cases, details.str());
  return make_report("constant_curvature", dev > 1e-2 ? 0.0 : 1.0, 0.5, cases, details.str());
}

CheckReport check_symmetry_center(const WarpParams& params) {
  const auto t0 = symmetry_center(params);
  if (!t0) return make_report("symmetry_center", 0.0, 1e-12, 0, "no distinguished center");
  double worst = 0.0;
  std::int64_t samples = 0;
  for (double s = 0.25; s <= 3.0 + 1e-9; s += 0.25)
    for (double theta : {kPi / 6, kPi / 3, kPi / 2}) {
      const double plus = sectional_closed_form(params, *t0 + s, theta);
      const double minus = sectional_closed_form(params, *t0 - s, theta);
      worst = std::max(worst, std::abs(plus - minus));
      ++samples;
    }
  return make_report("symmetry_center", worst, 1e-12, samples);
}

CheckReport check_extremal_consistency(const WarpParams& params, std::uint64_t seed) {
  const CurvatureRange range = extremal_curvatures(params);
  Rng rng(seed);
  double excess = 0.0;
  const int cases = 200;
  for (int cs = 0; cs < cases; ++cs) {
    const Point p = random_point(params, rng);
    const double theta = (params.n >= 3) ? rng.uniform(0.0, kPi / 2) : 0.0;
    const auto span_pair = plane_at_angle(params, p, theta);
    const double sec = sectional(params, p, span_pair.first, span_pair.second);
    excess = std::max(excess, range.lo - sec);
    excess = std::max(excess, sec - range.hi);
  }
  std::ostringstream details;
  details << "lo=" << range.lo << (range.lo_attained ? "" : " (limit)") << " hi=" << range.hi
          << (range.hi_attained ? "" : " (limit)") << " seed=" << seed;
  return make_report("extremal_consistency", std::max(excess, 0.0), 1e-6, cases, details.str());
}

CheckReport check_euclidean_nonpositive(const WarpParams& params, std::uint64_t seed) {
  Rng rng(seed);
  double worst_pos = 0.0;
  const int cases = 100;
  for (int cs = 0; cs < cases; ++cs) {
    const Point p = random_point(params, rng);
    for (int attempt = 0; attempt < 8; ++attempt) {
      try {
        const double sec =
            sectional(params, p, random_tangent(params, rng), random_tangent(params, rng));
        worst_pos = std::max(worst_pos, sec);
        break;
      } catch (const std::invalid_argument&) {
        continue;
      }
    }
  }
  return make_report("euclidean_nonpositive", std::max(worst_pos, 0.0), 1e-8, cases,
                     "seed=" + std::to_string(seed));
}

CheckReport check_euclidean_t_planes(const WarpParams& params, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  const int cases = 50;
  for (int cs = 0; cs < cases; ++cs) {
    const Point p = random_point(params, rng);
    const Tangent w = random_tangent(params, rng, /*fiber_only=*/true);
    const double sec = sectional(params, p, t_direction(params.n), w);
    worst = std::max(worst, std::abs(sec + 1.0));
  }
  return make_report("euclidean_t_planes", worst, 1e-6, cases, "seed=" + std::to_string(seed));
}

CheckReport check_pullback_chart() {
  double worst = 0.0;
  const int nt = 50, nr = 50;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nr; ++j) {
      const double t = -5.0 + 10.0 * i / (nt - 1);
      const double r = 0.1 + (10.0 - 0.1) * j / (nr - 1);
      worst = std::max(worst, pullback_residual(t, r));
    }
  return make_report("pullback_chart", worst, 1e-10, nt * nr);
}

}  // namespace

Range parse_range(const std::string& text) {
  Range r;
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("range must have the form lo:hi:count");
  size_t used = 0;
  r.lo = std::stod(text.substr(0, c1), &used);
  r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1), &used);
  r.count = std::stoi(text.substr(c2 + 1), &used);
  if (!(std::isfinite(r.lo) && std::isfinite(r.hi) && r.count >= 2))
    throw std::invalid_argument("range needs finite endpoints and count >= 2");
  return r;
}

std::vector<std::pair<double, double>> default_verify_grid() {
  const double ln2 = std::log(2.0);
  std::vector<std::pair<double, double>> grid;
  for (double a : {0.0, 0.5, -0.5, ln2})
    for (double b : {0.0, 0.5, -0.5, 1.0, -1.0}) grid.push_back({a, b});
  return grid;
}

std::vector<CheckReport> run_verify_suite(const WarpParams& params, double tol,
                                          std::uint64_t seed) {
  std::vector<CheckReport> reports;
  auto tag = [&params](CheckReport r) {
    r.details = param_label(params) + (r.details.empty() ? "" : "; " + r.details);
    return r;
  };

  reports.push_back(tag(check_warp_ode(params)));
  reports.push_back(tag(check_sigma_hyperbolic(params, 1e-6)));
  if (params.n >= 3)
    reports.push_back(tag(check_sigma_totally_geodesic(params, 5.0, 1e-6, 25, seed, tol)));
  if (params.fiber == FiberKind::Hyperbolic) {
    {
      Rng rng(seed + 1);
      const Point p = random_point(params, rng);
      const Tangent w = random_tangent(params, rng, /*fiber_only=*/true);
      reports.push_back(tag(check_plane_property(params, p, w, 1e-5, 5.0, 10, seed + 1)));
    }
    reports.push_back(tag(check_curvature_law(params, seed + 2)));
    reports.push_back(tag(check_isometry_lift(params, seed + 3)));
    reports.push_back(tag(check_rank_batch(params, 8, 10.0, seed + 4)));
    reports.push_back(tag(check_constant_curvature(params, seed + 5)));
    reports.push_back(tag(check_symmetry_center(params)));
    reports.push_back(tag(check_extremal_consistency(params, seed + 6)));
  } else {
    reports.push_back(tag(check_rank_batch(params, 8, 10.0, seed + 4)));
    reports.push_back(tag(check_euclidean_nonpositive(params, seed + 5)));
    reports.push_back(tag(check_euclidean_t_planes(params, seed + 6)));
  }
  return reports;
}

namespace {

bool write_output(const std::string& path, const std::string& content, std::string& err) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return true;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    err = "cannot open " + path;
    return false;
  }
  os << content;
  if (!os) {
    err = "write failed for " + path;
    return false;
  }
  return true;
}

std::ostream& summary_stream(const RunConfig& config) {
  // Keep stdout clean when the data itself goes there.
  return config.out.empty() ? std::cerr : std::cout;
}

int run_verify(const RunConfig& config) {
  std::vector<CheckReport> reports;
  reports.push_back(check_pullback_chart());
  std::vector<WarpParams> combos;
  if (config.a_set || config.b_set) {
    combos.push_back(config.params);
  } else {
    for (auto [a, b] : default_verify_grid()) {
      WarpParams p = config.params;
      p.a = a;
      p.b = b;
      combos.push_back(p);
    }
  }
  std::uint64_t seed = config.seed;
  for (const WarpParams& p : combos) {
    auto rs = run_verify_suite(p, config.tol, seed);
    reports.insert(reports.end(), rs.begin(), rs.end());
    seed += 1000;
  }

  nlohmann::json j = reports;
  std::string err;
  if (!write_output(config.out, j.dump(2) + "\n", err)) {
    std::cerr << "error: " << err << "\n";
    return 3;
  }

  std::ostream& os = summary_stream(config);
  bool all_pass = true;
  os << "check                    residual      tolerance    result\n";
  for (const CheckReport& r : reports) {
    all_pass = all_pass && r.pass;
    char line[160];
    std::snprintf(line, sizeof line, "%-24s %-13.3g %-12.3g %s\n", r.name.c_str(),
                  r.max_residual, r.tolerance, r.pass ? "pass" : "FAIL");
    os << line;
  }
  os << (all_pass ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
  return all_pass ? 0 : 1;
}

int run_profile(const RunConfig& config) {
  if (config.params.fiber != FiberKind::Hyperbolic) {
    std::cerr << "error: curvature-profile requires the hyperbolic fiber\n";
    return 2;
  }
  if (config.params.n < 3 && config.theta > 1e-12) {
    std::cerr << "error: theta > 0 needs n >= 3\n";
    return 2;
  }
  Point p;
  p.x.assign(config.params.n - 1, 0.0);
  p.x.back() = 1.0;

  std::ostringstream csv;
  nlohmann::json rows = nlohmann::json::array();
  csv << "t,theta,sec_closed_form,sec_numeric,abs_diff\n";
  for (int i = 0; i < config.t_range.count; ++i) {
    const double t = config.t_range.at(i);
    p.t = t;
    const double closed = sectional_closed_form(config.params, t, config.theta);
    const auto span_pair = plane_at_angle(config.params, p, config.theta);
    const double numeric = sectional(config.params, p, span_pair.first, span_pair.second);
    const double diff = std::abs(numeric - closed);
    if (config.format == "json") {
      rows.push_back({{"t", t},
                      {"theta", config.theta},
                      {"sec_closed_form", closed},
                      {"sec_numeric", numeric},
                      {"abs_diff", diff}});
    } else {
      csv << fmt17(t) << ',' << fmt17(config.theta) << ',' << fmt17(closed) << ','
          << fmt17(numeric) << ',' << fmt17(diff) << "\n";
    }
  }
  std::string err;
  const std::string payload = config.format == "json" ? rows.dump(2) + "\n" : csv.str();
  if (!write_output(config.out, payload, err)) {
    std::cerr << "error: " << err << "\n";
    return 3;
  }
  return 0;
}

int parse_initial_condition(const RunConfig& config, Point& p0, Tangent& v0) {
  const int n = config.params.n;
  if (static_cast<int>(config.from.size()) != n || static_cast<int>(config.dir.size()) != n) {
    std::cerr << "error: --from and --dir need exactly n = " << n << " components\n";
    return 2;
  }
  p0 = point_from_coords(config.from);
  v0 = tangent_from_comps(config.dir);
  return 0;
}

void print_path_summary(const RunConfig& config, const GeodesicPath& path, std::ostream& os) {
  const GeodesicSample& end = path.back();
  os << "samples: " << path.samples.size() << ", accepted steps: " << path.meta.steps_accepted
     << ", rejected: " << path.meta.steps_rejected << "\n";
  if (path.meta.status == PathStatus::DomainExit)
    os << "chart exit at s = " << fmt17(path.meta.exit_s) << "\n";
  os << "endpoint: s=" << fmt17(end.s) << " t=" << fmt17(end.p.t);
  for (double x : end.p.x) os << " x=" << fmt17(x);
  os << "\n";
  if (config.params.n == 2 && config.params.fiber == FiberKind::Hyperbolic) {
    const auto hp = semicircle_chart(end.p.t, end.p.x[0]);
    os << "endpoint (half-plane model): (" << fmt17(hp[0]) << ", " << fmt17(hp[1]) << ")\n";
  }
}

int run_geodesic(const RunConfig& config, bool transport) {
  Point p0;
  Tangent v0;
  if (int rc = parse_initial_condition(config, p0, v0); rc != 0) return rc;
  IntegrateOptions opts;
  opts.tol = config.tol;
  const GeodesicPath path = geodesic_integrate(config.params, p0, v0, config.T, opts);

  std::string payload;
  if (transport) {
    const Tangent vu = normalize(config.params, p0, v0);
    const Tangent w0 = rank_seed_vector(config.params, p0, vu);
    const TransportedField field = parallel_transport(path, w0);
    if (config.format == "json") {
      nlohmann::json j = {{"path", path}, {"w", field.w}};
      payload = j.dump(2) + "\n";
    } else {
      payload = transported_to_csv(field);
    }
  } else if (config.format == "json") {
    nlohmann::json j = path;
    payload = j.dump(2) + "\n";
  } else {
    payload = path_to_csv(path);
  }

  std::string err;
  if (!write_output(config.out, payload, err)) {
    std::cerr << "error: " << err << "\n";
    return 3;
  }
  print_path_summary(config, path, summary_stream(config));
  return 0;
}

int run_rank(const RunConfig& config) {
  struct Case {
    Point p0;
    Tangent v0;
  };
  std::vector<Case> cases;
  if (!config.from.empty() || !config.dir.empty()) {
    Point p0;
    Tangent v0;
    if (int rc = parse_initial_condition(config, p0, v0); rc != 0) return rc;
    cases.push_back({p0, v0});
  } else {
    Rng rng(config.seed);
    for (int i = 0; i < 10; ++i)
      cases.push_back({random_point(config.params, rng), random_tangent(config.params, rng)});
  }

  constexpr double rank_tol = 1e-5;
  std::ostringstream csv;
  nlohmann::json rows = nlohmann::json::array();
  csv << "geodesic,s,sec,residual\n";
  double worst = 0.0;
  for (size_t g = 0; g < cases.size(); ++g) {
    const Tangent vu = normalize(config.params, cases[g].p0, cases[g].v0);
    const GeodesicPath path = geodesic_integrate(config.params, cases[g].p0, vu, config.T,
                                                 IntegrateOptions{config.tol});
    const Tangent w0 = rank_seed_vector(config.params, cases[g].p0, vu);
    const TransportedField field = parallel_transport(path, w0);
    const size_t total = path.samples.size();
    const size_t stride = std::max<size_t>(1, (total - 1) / 256);
    for (size_t i = 0; i < total; i += stride) {
      const GeodesicSample& smp = path.samples[i];
      const double sec = sectional(config.params, smp.p, smp.v, field.w[i]);
      const double resid = std::abs(sec + 1.0);
      worst = std::max(worst, resid);
      if (config.format == "json")
        rows.push_back({{"geodesic", g}, {"s", smp.s}, {"sec", sec}, {"residual", resid}});
      else
        csv << g << ',' << fmt17(smp.s) << ',' << fmt17(sec) << ',' << fmt17(resid) << "\n";
    }
  }
  std::string err;
  const std::string payload = config.format == "json" ? rows.dump(2) + "\n" : csv.str();
  if (!write_output(config.out, payload, err)) {
    std::cerr << "error: " << err << "\n";
    return 3;
  }
  summary_stream(config) << "max |sec + 1| = " << fmt17(worst)
                         << (worst < rank_tol ? " (pass)" : " (FAIL)") << "\n";
  return worst < rank_tol ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    switch (config.command) {
      case Command::Verify:
        return run_verify(config);
      case Command::CurvatureProfile:
        return run_profile(config);
      case Command::Geodesic:
        return run_geodesic(config, false);
      case Command::Transport:
        return run_geodesic(config, true);
      case Command::RankCheck:
        return run_rank(config);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_main(int argc, const char* const* argv) {
  CLI::App app{"warped-product geometry engine"};
  app.require_subcommand(1);

  RunConfig config;
  std::string fiber = "hyperbolic";
  std::string t_range_text = "-5:5:101";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--a", config.params.a, "warp shift parameter");
    sub->add_option("--b", config.params.b, "warp slope parameter in [-1, 1]");
    sub->add_option("--n", config.params.n, "total dimension (>= 2)");
    sub->add_option("--fiber", fiber, "fiber geometry")
        ->check(CLI::IsMember({"hyperbolic", "euclidean"}));
    sub->add_option("--tol", config.tol, "integrator tolerance");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--out", config.out, "output file (default: stdout)");
    sub->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "run the verification checks");
  add_common(verify);
  CLI::App* profile =
      app.add_subcommand("curvature-profile", "closed-form vs numeric curvature profile");
  add_common(profile);
  profile->add_option("--theta", config.theta, "plane angle in radians");
  profile->add_option("--t-range", t_range_text, "t grid as lo:hi:count");
  CLI::App* geod = app.add_subcommand("geodesic", "integrate a geodesic");
  add_common(geod);
  geod->add_option("--from", config.from, "start coordinates t,x1,..")->delimiter(',');
  geod->add_option("--dir", config.dir, "initial velocity dt,dx1,..")->delimiter(',');
  geod->add_option("--T", config.T, "parameter time");
  CLI::App* trans = app.add_subcommand("transport", "parallel transport along a geodesic");
  add_common(trans);
  trans->add_option("--from", config.from, "start coordinates t,x1,..")->delimiter(',');
  trans->add_option("--dir", config.dir, "initial velocity dt,dx1,..")->delimiter(',');
  trans->add_option("--T", config.T, "parameter time");
  CLI::App* rank = app.add_subcommand("rank-check", "hyperbolic rank residuals along geodesics");
  add_common(rank);
  rank->add_option("--from", config.from, "start coordinates t,x1,..")->delimiter(',');
  rank->add_option("--dir", config.dir, "initial velocity dt,dx1,..")->delimiter(',');
  rank->add_option("--T", config.T, "parameter time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help exits with 0
  }

  config.params.fiber = fiber == "euclidean" ? FiberKind::Euclidean : FiberKind::Hyperbolic;
  config.a_set = verify->count("--a") > 0;
  config.b_set = verify->count("--b") > 0;
  try {
    validate(config.params);
    if (profile->parsed()) config.t_range = parse_range(t_range_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (verify->parsed()) config.command = Command::Verify;
  if (profile->parsed()) config.command = Command::CurvatureProfile;
  if (geod->parsed()) config.command = Command::Geodesic;
  if (trans->parsed()) config.command = Command::Transport;
  if (rank->parsed()) config.command = Command::RankCheck;
  return run(config);
}

}  // namespace warpgeo::cli
