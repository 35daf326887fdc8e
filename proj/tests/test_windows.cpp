#include <doctest.h>

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "clcst/errors.hpp"
#include "clcst/windows.hpp"

using namespace clcst;

namespace {

// Midpoint rule on [-R, R]^2, fine enough for unit-scale Gaussians.
template <class F>
double quad2(F&& fn, double R = 12.0, int m = 600) {
  const double h = 2 * R / m;
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double y[2] = {-R + (i + 0.5) * h, -R + (j + 0.5) * h};
      s += fn(std::span<const double>(y, 2));
    }
  }
  return s * h * h;
}

}  // namespace

TEST_CASE("Gaussian integrals and norms match closed forms and quadrature") {
  const double two_pi = 2 * std::numbers::pi;
  const Window g = Window::gaussian(2, {0.8, 1.6});
  CHECK(g.integral() == doctest::Approx(two_pi * 0.8 * 1.6));
  CHECK(g.l2_norm_squared() == doctest::Approx(std::numbers::pi * 0.8 * 1.6));
  CHECK(quad2([&](auto y) { return g(y); }) == doctest::Approx(g.integral()).epsilon(1e-9));
  const Window u = g.normalized();
  CHECK(u.unit_integral());
  CHECK(u.integral() == doctest::Approx(1.0));
  const double y[2] = {0.0, 0.0};
  CHECK(u(y) == doctest::Approx(1.0 / (two_pi * 0.8 * 1.6)));
  const Window g3 = Window::gaussian(3, 0.5);
  CHECK(g3.integral() == doctest::Approx(std::pow(two_pi, 1.5) * 0.125));
}

TEST_CASE("DOG window") {
  const Window d2 = Window::dog(2, 0.5);
  CHECK(std::abs(d2.integral()) < 1e-14);
  CHECK_THROWS_AS(d2.normalized(), ZeroIntegral);
  CHECK(quad2([&](auto y) { return d2(y); }) == doctest::Approx(0.0).scale(1.0));
  CHECK(d2.l2_norm_squared() == doctest::Approx(quad2([&](auto y) { return d2(y) * d2(y); })).epsilon(1e-9));
  CHECK(d2.l1_norm() == doctest::Approx(quad2([&](auto y) { return std::abs(d2(y)); })).epsilon(1e-4));
  const Window d3 = Window::dog(3, 0.5);
  CHECK(d3.integral() == doctest::Approx(std::pow(2 * std::numbers::pi, 1.5) * (0.5 - 1.0)));
  CHECK(d3.normalized().integral() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Window::dog(2, 1.0), DomainError);
  CHECK_THROWS_AS(Window::dog(2, 0.0), DomainError);
}

TEST_CASE("combination is linear") {
  const Window a = Window::gaussian(2, 1.0), b = Window::gaussian(2, 0.3);
  const Window c = Window::combine(2.0, a, -0.5, b);
  const double y[2] = {0.4, -0.2};
  CHECK(c(y) == doctest::Approx(2.0 * a(y) - 0.5 * b(y)));
  CHECK(c.integral() == doctest::Approx(2.0 * a.integral() - 0.5 * b.integral()));
  CHECK(c.l2_norm_squared() == doctest::Approx(quad2([&](auto z) { return c(z) * c(z); })).epsilon(1e-9));
  CHECK_THROWS_AS(Window::combine(1.0, a, 1.0, Window::gaussian(3, 1.0)), DimensionMismatch);
}

TEST_CASE("JSON round trip") {
  const Window c = Window::combine(1.5, Window::gaussian(2, {0.5, 2.0}), 0.25, Window::dog(2, 0.4)).scaled(3.0);
  const Window r = Window::from_json(c.to_json(), 2);
  for (double t : {0.0, 0.3, 1.7}) {
    const double y[2] = {t, -0.5 * t};
    CHECK(r(y) == doctest::Approx(c(y)));
  }
  const Window unit = Window::from_json(nlohmann::json{{"kind", "gaussian"}, {"sigma", 0.7}, {"normalization", "unit"}}, 2);
  CHECK(unit.integral() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Window::from_json(nlohmann::json{{"kind", "morlet"}}, 2), FormatError);
  CHECK_THROWS_AS(Window::gaussian(2, -1.0), DomainError);
}
