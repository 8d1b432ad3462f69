#pragma once
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace warpgeo {

// Dense row-major matrix, sized for chart dimensions (n <= ~16), not for BLAS work.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

inline Mat mat_mul(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  Mat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

inline std::vector<double> mat_vec(const Mat& m, std::span<const double> v) {
  if (m.cols != static_cast<int>(v.size())) throw std::invalid_argument("mat_vec: shape mismatch");
  std::vector<double> r(m.rows, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

inline Mat mat_transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

// x^T g y for a (not necessarily diagonal) bilinear form g.
inline double bilinear(std::span<const double> x, const Mat& g, std::span<const double> y) {
  double s = 0.0;
  for (int i = 0; i < g.rows; ++i) {
    double row = 0.0;
    for (int j = 0; j < g.cols; ++j) row += g(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

inline double max_abs_diff(const Mat& x, const Mat& y) {
  double m = 0.0;
  for (size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

// In-place Cholesky feasibility: true iff the matrix is symmetric positive definite.
inline bool cholesky_spd(Mat m) {
  if (m.rows != m.cols) return false;
  const int n = m.rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * (1.0 + std::abs(m(i, j)))) return false;
  for (int k = 0; k < n; ++k) {
    double d = m(k, k);
    for (int j = 0; j < k; ++j) d -= m(k, j) * m(k, j);
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    m(k, k) = d;
    for (int i = k + 1; i < n; ++i) {
      double s = m(i, k);
      for (int j = 0; j < k; ++j) s -= m(i, j) * m(k, j);
      m(i, k) = s / d;
    }
  }
  return true;
}

// Gauss-Jordan inverse with partial pivoting; matrices here are tiny and well conditioned.
inline Mat mat_inverse(const Mat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("mat_inverse: not square");
  const int n = m.rows;
  Mat a = m;
  Mat inv = Mat::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) throw std::runtime_error("mat_inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace warpgeo
