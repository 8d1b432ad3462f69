#pragma once
#include <variant>
#include <vector>

#include "warpgeo/geometry.hpp"

namespace warpgeo {

// Generators of Isom(H^{n-1}) in the upper half-space model, acting on the fiber
// coordinates (x_1, ..., x_{n-1}). Horizontal means the first n-2 coordinates.
struct HorizontalTranslation {
  std::vector<double> c;  // length n-2
};
struct Dilation {
  double lambda = 1.0;  // > 0
};
struct Rotation {
  Mat q;  // orthogonal (n-2) x (n-2), acting on the horizontal coordinates
};
struct Inversion {};  // x -> x / |x|^2

using FiberGenerator = std::variant<HorizontalTranslation, Dilation, Rotation, Inversion>;

// A composition word over the generators; apply() composes right-to-left,
// i.e. word.back() acts first.
struct FiberIsometry {
  std::vector<FiberGenerator> word;

  static FiberIsometry identity() { return {}; }
  static FiberIsometry translation(std::vector<double> c);
  static FiberIsometry dilation(double lambda);
  static FiberIsometry rotation(Mat q);
  static FiberIsometry inversion();
  // The horizontal reflection (x_1, ..., x_{n-2}, h) -> (-x_1, ..., -x_{n-2}, h).
  static FiberIsometry horizontal_reflection(int fiber_dim);

  FiberIsometry then(const FiberIsometry& outer) const;  // outer ∘ this
  FiberIsometry inverse() const;

  // Validates generator invariants for a fiber of dimension m = n-1.
  void validate(int fiber_dim) const;

  std::vector<double> apply(std::span<const double> x) const;
  // Differential at x as an m x m matrix.
  Mat differential(std::span<const double> x) const;
};

// The induced map of the product manifold: identity on t, F on the fiber.
struct LiftedIsometry {
  FiberIsometry fiber_map;
  int n = 0;

  Point apply(const Point& p) const;
  Tangent push(const Point& p, const Tangent& u) const;  // differential at p
  Mat differential(const Point& p) const;                // n x n
  LiftedIsometry inverse() const;
};

LiftedIsometry lift_isometry(const FiberIsometry& f, int n);

/// Max-entry deviation of J^T G(Fp) J from G(p), J the differential of the lift;
/// zero (to rounding) exactly when the lift preserves the warped metric.
double isometry_pullback_residual(const WarpParams& params, const FiberIsometry& f,
                                  const Point& p);

// A fiber isometry carrying the base unit tangent (the upward unit vector at
// (0, ..., 0, 1)) to the prescribed unit tangent: target point x, coordinate
// direction dir (need not be normalized). Word length <= 5.
FiberIsometry unit_tangent_mover(std::span<const double> x, std::span<const double> dir);

}  // namespace warpgeo
