#include "warpgeo/isometry.hpp"

#include <cmath>
#include <stdexcept>

namespace warpgeo {

FiberIsometry FiberIsometry::translation(std::vector<double> c) {
  FiberIsometry f;
  f.word.push_back(HorizontalTranslation{std::move(c)});
  return f;
}

FiberIsometry FiberIsometry::dilation(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Dilation: lambda must be positive");
  FiberIsometry f;
  f.word.push_back(Dilation{lambda});
  return f;
}

FiberIsometry FiberIsometry::rotation(Mat q) {
  FiberIsometry f;
  f.word.push_back(Rotation{std::move(q)});
  return f;
}

FiberIsometry FiberIsometry::inversion() {
  FiberIsometry f;
  f.word.push_back(Inversion{});
  return f;
}

FiberIsometry FiberIsometry::horizontal_reflection(int fiber_dim) {
  if (fiber_dim < 1) throw std::invalid_argument("horizontal_reflection: fiber_dim must be >= 1");
  Mat q(fiber_dim - 1, fiber_dim - 1);
  for (int i = 0; i < fiber_dim - 1; ++i) q(i, i) = -1.0;
  return rotation(std::move(q));
}

FiberIsometry FiberIsometry::then(const FiberIsometry& outer) const {
  FiberIsometry f = outer;
  f.word.insert(f.word.end(), word.begin(), word.end());
  return f;
}

FiberIsometry FiberIsometry::inverse() const {
  FiberIsometry inv;
  inv.word.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (const auto* t = std::get_if<HorizontalTranslation>(&*it)) {
      auto c = t->c;
      for (double& ci : c) ci = -ci;
      inv.word.push_back(HorizontalTranslation{std::move(c)});
    } else if (const auto* d = std::get_if<Dilation>(&*it)) {
      inv.word.push_back(Dilation{1.0 / d->lambda});
    } else if (const auto* r = std::get_if<Rotation>(&*it)) {
      inv.word.push_back(Rotation{mat_transpose(r->q)});
    } else {
      inv.word.push_back(Inversion{});
    }
  }
  return inv;
}

void FiberIsometry::validate(int fiber_dim) const {
  const int hdim = fiber_dim - 1;
  for (const FiberGenerator& g : word) {
    if (const auto* t = std::get_if<HorizontalTranslation>(&g)) {
      if (static_cast<int>(t->c.size()) != hdim)
        throw std::invalid_argument("HorizontalTranslation: wrong dimension");
    } else if (const auto* d = std::get_if<Dilation>(&g)) {
      if (!(d->lambda > 0.0)) throw std::invalid_argument("Dilation: lambda must be positive");
    } else if (const auto* r = std::get_if<Rotation>(&g)) {
      if (r->q.rows != hdim || r->q.cols != hdim)
        throw std::invalid_argument("Rotation: wrong dimension");
      const Mat qtq = mat_mul(mat_transpose(r->q), r->q);
      if (max_abs_diff(qtq, Mat::identity(hdim)) > 1e-12)
        throw std::invalid_argument("Rotation: matrix is not orthogonal");
    }
  }
}

namespace {

std::vector<double> apply_one(const FiberGenerator& g, std::vector<double> x) {
  const int m = static_cast<int>(x.size());
  if (const auto* t = std::get_if<HorizontalTranslation>(&g)) {
    for (int i = 0; i < m - 1; ++i) x[i] += t->c[i];
    return x;
  }
  if (const auto* d = std::get_if<Dilation>(&g)) {
    for (double& xi : x) xi *= d->lambda;
    return x;
  }
  if (const auto* r = std::get_if<Rotation>(&g)) {
    std::vector<double> h(x.begin(), x.end() - 1);
    const auto rh = mat_vec(r->q, h);
    for (int i = 0; i < m - 1; ++i) x[i] = rh[i];
    return x;
  }
  double n2 = 0.0;
  for (double xi : x) n2 += xi * xi;
  if (!(n2 > 0.0)) throw std::domain_error("Inversion applied at x = 0");
  for (double& xi : x) xi /= n2;
  return x;
}

Mat differential_one(const FiberGenerator& g, std::span<const double> x) {
  const int m = static_cast<int>(x.size());
  if (std::holds_alternative<HorizontalTranslation>(g)) return Mat::identity(m);
  if (const auto* d = std::get_if<Dilation>(&g)) {
    Mat j(m, m);
    for (int i = 0; i < m; ++i) j(i, i) = d->lambda;
    return j;
  }
  if (const auto* r = std::get_if<Rotation>(&g)) {
    Mat j(m, m);
    for (int i = 0; i < m - 1; ++i)
      for (int k = 0; k < m - 1; ++k) j(i, k) = r->q(i, k);
    j(m - 1, m - 1) = 1.0;
    return j;
  }
  double n2 = 0.0;
  for (double xi : x) n2 += xi * xi;
  if (!(n2 > 0.0)) throw std::domain_error("Inversion applied at x = 0");
  Mat j(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) j(i, k) = ((i == k) ? 1.0 : 0.0) / n2 - 2.0 * x[i] * x[k] / (n2 * n2);
  return j;
}

}  // namespace

std::vector<double> FiberIsometry::apply(std::span<const double> x) const {
  std::vector<double> y(x.begin(), x.end());
  for (auto it = word.rbegin(); it != word.rend(); ++it) y = apply_one(*it, std::move(y));
  return y;
}

Mat FiberIsometry::differential(std::span<const double> x) const {
  const int m = static_cast<int>(x.size());
  Mat j = Mat::identity(m);
  std::vector<double> y(x.begin(), x.end());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    j = mat_mul(differential_one(*it, y), j);
    y = apply_one(*it, std::move(y));
  }
  return j;
}

Point LiftedIsometry::apply(const Point& p) const {
  Point q;
  q.t = p.t;
  q.x = fiber_map.apply(p.x);
  return q;
}

Mat LiftedIsometry::differential(const Point& p) const {
  const Mat jf = fiber_map.differential(p.x);
  Mat j(n, n);
  j(0, 0) = 1.0;
  for (int i = 0; i < n - 1; ++i)
    for (int k = 0; k < n - 1; ++k) j(i + 1, k + 1) = jf(i, k);
  return j;
}

Tangent LiftedIsometry::push(const Point& p, const Tangent& u) const {
  const Mat jf = fiber_map.differential(p.x);
  Tangent r;
  r.dt = u.dt;
  r.dx = mat_vec(jf, u.dx);
  return r;
}

LiftedIsometry LiftedIsometry::inverse() const { return {fiber_map.inverse(), n}; }

LiftedIsometry lift_isometry(const FiberIsometry& f, int n) {
  if (n < 2) throw std::invalid_argument("lift_isometry: n must be >= 2");
  f.validate(n - 1);
  return {f, n};
}

double isometry_pullback_residual(const WarpParams& params, const FiberIsometry& f,
                                  const Point& p) {
  validate_point(params, p);
  const LiftedIsometry bar = lift_isometry(f, params.n);
  const Point fp = bar.apply(p);
  const Mat j = bar.differential(p);
  const Mat pulled = mat_mul(mat_transpose(j), mat_mul(metric_at(params, fp), j));
  return max_abs_diff(pulled, metric_at(params, p));
}

FiberIsometry unit_tangent_mover(std::span<const double> x, std::span<const double> dir) {
  const int m = static_cast<int>(x.size());
  if (m < 1 || static_cast<int>(dir.size()) != m)
    throw std::invalid_argument("unit_tangent_mover: dimension mismatch");
  if (!(x[m - 1] > 0.0)) throw std::domain_error("unit_tangent_mover: target not in half-space");
  double dn = 0.0;
  for (double d : dir) dn += d * d;
  if (!(dn > 0.0)) throw std::invalid_argument("unit_tangent_mover: zero direction");
  dn = std::sqrt(dn);
  const double wv = dir[m - 1] / dn;  // vertical component of the unit direction
  double hs = 0.0;
  for (int i = 0; i < m - 1; ++i) hs += dir[i] * dir[i];
  hs = std::sqrt(hs) / dn;

  FiberIsometry word;
  auto prepend = [&word](FiberGenerator g) { word.word.insert(word.word.begin(), std::move(g)); };

  std::vector<double> pt(m, 0.0);  // tracks the image of the base point (0, ..., 0, 1)
  pt[m - 1] = 1.0;

  if (wv < 1.0 - 1e-12) {
    // Translate horizontally, then invert: turns the upward direction at the base
    // point to any prescribed tilt in the (e_1, height) plane.
    const double c = -std::sqrt((1.0 + wv) / (1.0 - wv));
    std::vector<double> shift(m - 1, 0.0);
    if (m >= 2) shift[0] = c;
    prepend(HorizontalTranslation{shift});
    prepend(Inversion{});
    pt = word.apply(std::span<const double>(pt));

    if (hs > 1e-14 && m >= 2) {
      // Rotate e_1 onto the horizontal heading of dir.
      std::vector<double> hhat(m - 1);
      for (int i = 0; i < m - 1; ++i) hhat[i] = dir[i] / (dn * hs);
      Mat q(m - 1, m - 1);
      if (m - 1 == 1) {
        q(0, 0) = hhat[0] >= 0.0 ? 1.0 : -1.0;
      } else if (hhat[0] < -1.0 + 1e-14) {
        for (int i = 0; i < m - 1; ++i) q(i, i) = (i <= 1) ? -1.0 : 1.0;
      } else {
        // Rotation taking a = e_1 to b = hhat: I + 2 b a^T - (a+b)(a+b)^T / (1 + a.b).
        std::vector<double> ab(m - 1);
        ab[0] = 1.0 + hhat[0];
        for (int i = 1; i < m - 1; ++i) ab[i] = hhat[i];
        const double denom = 1.0 + hhat[0];
        for (int i = 0; i < m - 1; ++i)
          for (int k = 0; k < m - 1; ++k)
            q(i, k) = ((i == k) ? 1.0 : 0.0) + 2.0 * hhat[i] * ((k == 0) ? 1.0 : 0.0) -
                      ab[i] * ab[k] / denom;
      }
      Mat qcopy = q;
      FiberIsometry rot = FiberIsometry::rotation(std::move(qcopy));
      pt = rot.apply(std::span<const double>(pt));
      prepend(Rotation{std::move(q)});
    }
  }

  const double lambda = x[m - 1] / pt[m - 1];
  prepend(Dilation{lambda});
  std::vector<double> offset(m - 1);
  for (int i = 0; i < m - 1; ++i) offset[i] = x[i] - lambda * pt[i];
  prepend(HorizontalTranslation{std::move(offset)});
  return word;
}

}  // namespace warpgeo
