#include <doctest.h>

#include <cmath>
#include <numbers>

#include "clcst/errors.hpp"
#include "clcst/grid.hpp"

using namespace clcst;

TEST_CASE("lattice geometry") {
  const GridSpec g = GridSpec::make(2, 6.0, 64);
  CHECK(g.dx() == doctest::Approx(0.1875));
  CHECK(g.dw() == doctest::Approx(std::numbers::pi / 6.0));
  CHECK(g.coordinate(0) == -6.0);
  CHECK(g.coordinate(32) == 0.0);
  CHECK(g.frequency(32) == 0.0);
  CHECK(g.frequency(0) == doctest::Approx(-32 * std::numbers::pi / 6.0));
  CHECK(g.points() == 4096);
  std::vector<int> idx(2);
  g.unravel(65, idx);
  CHECK(idx[0] == 1);
  CHECK(idx[1] == 1);
  CHECK(g.ravel(idx) == 65);
  const GridSpec p = g.padded();
  CHECK(p.dx() == g.dx());
  CHECK(p.samples == 128);
}

TEST_CASE("n = 3 grids use the positive signature") {
  const GridSpec g = GridSpec::make(3, 4.0, 8);
  CHECK(g.signature == Signature::positive);
  CHECK(g.algebra().pseudoscalar_square() == -1);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec::make(2, 6.0, 63), DomainError);
  CHECK_THROWS_AS(GridSpec::make(2, -1.0, 64), DomainError);
  CHECK_THROWS_AS(GridSpec::make(4, 1.0, 8), UnsupportedDimension);
}

TEST_CASE("inner product against a hand sum") {
  const GridSpec g = GridSpec::make(2, 2.0, 4);
  GridSignal f(g), h(g);
  for (std::size_t k = 0; k < g.points(); ++k) {
    for (std::size_t b = 0; b < 4; ++b) {
      f.value(k, b) = std::sin(1.0 + k + 3.0 * b);
      h.value(k, b) = std::cos(2.0 * k - b);
    }
  }
  Multivector expect(g.algebra());
  for (std::size_t k = 0; k < g.points(); ++k) expect += f.at(k) * clifford_conjugate(h.at(k));
  expect *= g.dx() * g.dx();
  CHECK(max_abs_diff(inner_product(f, h), expect) < 1e-14);
  CHECK(norm_squared(f) == doctest::Approx(scalar_part(inner_product(f, f))));
}

TEST_CASE("chirp multiplication is right multiplication by exp(I rate |x|^2)") {
  const GridSpec g = GridSpec::make(2, 2.0, 4);
  GridSignal f(g);
  for (std::size_t k = 0; k < g.points(); ++k) {
    for (std::size_t b = 0; b < 4; ++b) f.value(k, b) = 0.1 * k + b;
  }
  const GridSignal c = chirp_multiply(f, 0.7);
  const auto x = g.spatial_coordinates();
  for (std::size_t k = 0; k < g.points(); ++k) {
    const double r2 = x[2 * k] * x[2 * k] + x[2 * k + 1] * x[2 * k + 1];
    CHECK(max_abs_diff(c.at(k), f.at(k) * pseudoscalar_exp(g.algebra(), 0.7 * r2)) < 1e-14);
  }
}

TEST_CASE("boundary mass fraction") {
  const GridSpec g = GridSpec::make(2, 6.0, 32);
  const GridSignal narrow = sample_scalar([](auto x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); }, g);
  CHECK(boundary_mass_fraction(narrow) < 1e-20);
  GridSignal flat = sample_scalar([](auto) { return 1.0; }, g);
  CHECK(boundary_mass_fraction(flat) == doctest::Approx((32.0 * 32 - 30.0 * 30) / (32.0 * 32)));
}

TEST_CASE("mismatched signals are rejected") {
  GridSignal a(GridSpec::make(2, 6.0, 8)), b(GridSpec::make(2, 6.0, 16));
  CHECK_THROWS_AS(inner_product(a, b), DimensionMismatch);
  GridSignal c(GridSpec::make(2, 6.0, 8), Domain::frequency);
  CHECK_THROWS_AS(inner_product(a, c), DimensionMismatch);
}
