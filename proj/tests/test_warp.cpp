#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpgeo/warp.hpp"

using namespace warpgeo;

namespace {

// Independent oracle: classical RK4 on f'' = 1 - (f')^2 from (f, f')(0) = (-a, b).
double rk4_warp_ode(double a, double b, double t_end, double step) {
  double f = -a, d = b, t = 0.0;
  const double sign = t_end >= 0.0 ? 1.0 : -1.0;
  auto rhs = [](double dval) { return 1.0 - dval * dval; };
  while (sign * (t_end - t) > 1e-15) {
    const double h = sign * std::min(step, sign * (t_end - t));
    const double k1f = d, k1d = rhs(d);
    const double k2f = d + 0.5 * h * k1d, k2d = rhs(d + 0.5 * h * k1d);
    const double k3f = d + 0.5 * h * k2d, k3d = rhs(d + 0.5 * h * k2d);
    const double k4f = d + h * k3d, k4d = rhs(d + h * k3d);
    f += h / 6.0 * (k1f + 2 * k2f + 2 * k3f + k4f);
    d += h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
    t += h;
  }
  return f;
}

double fd_d1(const WarpParams& p, double t) {
  const double h = 1e-6 * (1.0 + std::abs(t));
  return (log_warp(p, t + h) - log_warp(p, t - h)) / (2.0 * h);
}

double fd_d2(const WarpParams& p, double t, double h = 1e-4) {
  auto second = [&](double step) {
    return (log_warp(p, t + step) - 2.0 * log_warp(p, t) + log_warp(p, t - step)) / (step * step);
  };
  // One Richardson level on the second central difference.
  return (4.0 * second(h / 2) - second(h)) / 3.0;
}

WarpParams hyper(double a, double b, int n = 3) { return WarpParams{a, b, n, FiberKind::Hyperbolic}; }

}  // namespace

TEST_CASE("log_warp pins the stated values") {
  CHECK(log_warp(hyper(0, 0), 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_warp(hyper(0, 1), 5.0) == doctest::Approx(5.0).epsilon(1e-15));
  // ln cosh 1
  CHECK(log_warp(hyper(0, 0), 1.0) == doctest::Approx(0.43378083048302710).epsilon(1e-14));
}

TEST_CASE("log_warp_d1 pins the stated values") {
  CHECK(log_warp_d1(hyper(-3, 0.25), 0.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(log_warp_d1(hyper(0, 1), 7.0) == 1.0);
  // tanh 1, cross-checked against the centered difference of log_warp
  const double expect = 0.76159415595576485;
  CHECK(log_warp_d1(hyper(0, 0), 1.0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(fd_d1(hyper(0, 0), 1.0) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("log_warp_d2 pins the stated values") {
  CHECK(log_warp_d2(hyper(0, 0), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(log_warp_d2(hyper(2, 1), 3.0) == 0.0);
  // sech^2(1), cross-checked against the Richardson second difference
  const double expect = 0.41997434161402614;
  CHECK(log_warp_d2(hyper(0, 0), 1.0) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(fd_d2(hyper(0, 0), 1.0) == doctest::Approx(expect).epsilon(1e-7));
}

TEST_CASE("warp ODE residual vanishes for the family and not otherwise") {
  for (double a : {-2.0, 0.0, 1.5})
    for (double b : {-1.0, -0.3, 0.0, 0.8, 1.0})
      for (double t : {-7.0, -1.0, 0.0, 2.5, 11.0})
        CHECK(std::abs(warp_ode_residual(warp_scalar(hyper(a, b)), t)) < 1e-12);

  // f(t) = t^2: f'' + (f')^2 - 1 = 2 + 4t^2 - 1.
  const ScalarC2 parabola{[](double t) { return t * t; }, [](double t) { return 2 * t; },
                          [](double) { return 2.0; }};
  CHECK(warp_ode_residual(parabola, 1.0) == doctest::Approx(5.0));

  // f = ln cosh solves the equation: sech^2 + tanh^2 = 1.
  const ScalarC2 lncosh{[](double t) { return std::log(std::cosh(t)); },
                        [](double t) { return std::tanh(t); },
                        [](double t) { return 1.0 / (std::cosh(t) * std::cosh(t)); }};
  CHECK(std::abs(warp_ode_residual(lncosh, 0.5)) < 1e-15);
}

TEST_CASE("warp_factor pins the stated values") {
  CHECK(warp_factor(hyper(0, 0), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(warp_factor(hyper(std::log(2.0), 0), 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(warp_factor(hyper(0, -1), -3.0) == doctest::Approx(std::exp(3.0)).epsilon(1e-14));
}

TEST_CASE("initial conditions of the family: value -a, slope b") {
  for (double a : {-4.0, -0.5, 0.0, 0.25, 3.0})
    for (double b : {-1.0, -0.99, -0.5, 0.0, 0.37, 0.99, 1.0}) {
      CHECK(std::abs(log_warp(hyper(a, b), 0.0) + a) < 1e-14);
      CHECK(std::abs(log_warp_d1(hyper(a, b), 0.0) - b) < 1e-14);
    }
}

TEST_CASE("slope stays in [-1, 1] and the warp factor positive") {
  for (double a : {-3.0, 0.0, 2.0})
    for (double b : {-1.0, -0.6, 0.0, 0.4, 1.0})
      for (int i = 0; i <= 100; ++i) {
        const double t = -20.0 + 0.4 * i;
        const double d1 = log_warp_d1(hyper(a, b), t);
        CHECK(d1 >= -1.0);
        CHECK(d1 <= 1.0);
        CHECK(warp_factor(hyper(a, b), t) > 0.0);
      }
}

TEST_CASE("ODE residual on the dense grid, analytic and finite-difference") {
  for (double a : {-1.0, 0.0, 0.7})
    for (double b : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const WarpParams p = hyper(a, b);
      const ScalarC2 analytic = warp_scalar(p);
      const ScalarC2 fd{analytic.value, [&p](double t) { return fd_d1(p, t); },
                        [&p](double t) { return fd_d2(p, t, 1e-3); }};
      for (int i = 0; i < 1000; ++i) {
        const double t = -20.0 + 40.0 * i / 999.0;
        CHECK(std::abs(warp_ode_residual(analytic, t)) < 1e-12);
        CHECK(std::abs(warp_ode_residual(fd, t)) < 1e-6);
      }
    }
}

TEST_CASE("agreement with the RK4 oracle over [0, 5]") {
  for (double a : {-1.0, 0.0, 0.5})
    for (double b : {-1.0, -0.5, 0.0, 0.7, 1.0}) {
      const double oracle = rk4_warp_ode(a, b, 5.0, 1e-4);
      CHECK(log_warp(hyper(a, b), 5.0) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("large-argument evaluation stays finite") {
  CHECK(std::isfinite(log_warp(hyper(300.0, 0.3), 700.0)));
  CHECK(std::isfinite(log_warp(hyper(-300.0, 0.3), -700.0)));
  CHECK(log_warp_d1(hyper(0, 0.3), 700.0) == doctest::Approx(1.0));
  CHECK(log_warp_d1(hyper(0, 0.3), -700.0) == doctest::Approx(-1.0));
  CHECK(std::isfinite(warp_factor(hyper(0, 0), 700.0)));
  CHECK(warp_factor(hyper(0, 0), -700.0) > 0.0);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(log_warp(hyper(0, 1.5), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(log_warp(hyper(0, 0), std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(validate(WarpParams{0, 0, 1, FiberKind::Hyperbolic}), std::invalid_argument);
  const ScalarC2 bad{[](double) { return 0.0; }, [](double) { return std::nan(""); },
                     [](double) { return 0.0; }};
  CHECK_THROWS_AS(warp_ode_residual(bad, 0.0), std::domain_error);
}
