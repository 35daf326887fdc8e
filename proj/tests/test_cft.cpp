#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "clcst/cft.hpp"
#include "clcst/config.hpp"
#include "clcst/errors.hpp"

using namespace clcst;
using cd = std::complex<double>;

namespace {

GridSignal random_signal(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  GridSignal f(g);
  for (double& v : f.raw()) v = d(rng);
  return f;
}

double rel(const GridSignal& a, const GridSignal& b) { return max_abs_diff(a, b) / max_abs(b); }

}  // namespace

TEST_CASE("scalar+I signals in n = 2 match a complex DFT written out by hand") {
  // With values in span{1, e12} the algebra is the complex numbers, I -> i.
  const GridSpec g = GridSpec::make(2, 3.0, 8);
  GridSignal f = random_signal(g, 1);
  for (double& v : f.component(1)) v = 0.0;
  for (double& v : f.component(2)) v = 0.0;
  const GridSignal F = cft_forward(f);
  const auto x = g.spatial_coordinates();
  const auto w = g.frequency_coordinates();
  double worst = 0.0;
  for (std::size_t k = 0; k < g.points(); ++k) {
    cd acc = 0.0;
    for (std::size_t j = 0; j < g.points(); ++j) {
      const double ph = w[2 * k] * x[2 * j] + w[2 * k + 1] * x[2 * j + 1];
      acc += cd(f.value(j, 0), f.value(j, 3)) * std::exp(cd(0.0, -ph));
    }
    acc *= g.dx() * g.dx() / (2.0 * std::numbers::pi);
    worst = std::max(worst, std::abs(acc - cd(F.value(k, 0), F.value(k, 3))));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("FFT path equals the literal lattice sum") {
  for (int n : {2, 3}) {
    const GridSpec g = GridSpec::make(n, 3.0, n == 2 ? 8 : 4);
    const GridSignal f = random_signal(g, 2 + n);
    CHECK(rel(cft_forward(f), cft_forward_direct(f)) < 1e-13);
    const GridSignal F = cft_forward(f);
    CHECK(rel(cft_inverse(F), cft_inverse_direct(F)) < 1e-13);
  }
}

TEST_CASE("round trip and Plancherel") {
  for (int n : {2, 3}) {
    const GridSpec g = GridSpec::make(n, 4.0, n == 2 ? 32 : 8);
    const GridSignal f = random_signal(g, 11), h = random_signal(g, 12);
    CHECK(relative_l2_error(cft_inverse(cft_forward(f)), f) < 1e-13);
    CHECK(max_abs_diff(inner_product(f, h), inner_product(cft_forward(f), cft_forward(h))) <
          1e-12 * std::sqrt(norm_squared(f) * norm_squared(h)));
  }
}

TEST_CASE("unit Gaussian is a fixed point up to truncation at |x| = L") {
  const GridSpec g = GridSpec::make(2, 6.0, 64);
  const GridSignal f = synthesize("gaussian", g);
  const GridSignal F = cft_forward(f);
  std::vector<int> idx = {32, 35};
  const double w = 3 * g.dw();
  CHECK(F.value(g.ravel(idx), 0) == doctest::Approx(std::exp(-0.5 * w * w)).epsilon(1e-7));
  CHECK(std::abs(F.value(g.ravel(idx), 3)) < 1e-12);
}

TEST_CASE("convolution matches the lattice sum") {
  const GridSpec g = GridSpec::make(2, 2.0, 8);
  const GridSignal f = random_signal(g, 5), h = random_signal(g, 6);
  const GridSignal c = convolve(f, h);
  const int N = g.samples;
  std::vector<int> j(2), t(2), d(2);
  double worst = 0.0;
  for (std::size_t k = 0; k < g.points(); ++k) {
    g.unravel(k, j);
    Multivector acc(g.algebra());
    for (std::size_t m = 0; m < g.points(); ++m) {
      g.unravel(m, t);
      for (int a = 0; a < 2; ++a) d[a] = ((j[a] - t[a] + N / 2) % N + N) % N;  // x_j - x_t, wrapped
      acc += f.at(m) * h.at(g.ravel(d));
    }
    acc *= g.dx() * g.dx();
    worst = std::max(worst, max_abs_diff(acc, c.at(k)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("convolution theorem needs a commuting g in n = 2") {
  const GridSpec g = GridSpec::make(2, 4.0, 16);
  const GridSignal f = random_signal(g, 8);
  GridSignal even = random_signal(g, 9);
  for (double& v : even.component(1)) v = 0.0;
  for (double& v : even.component(2)) v = 0.0;
  GridSignal rhs = pointwise_product(cft_forward(f), cft_forward(even));
  for (double& v : rhs.raw()) v *= 2.0 * std::numbers::pi;
  CHECK(rel(cft_forward(convolve(f, even)), rhs) < 1e-12);
  // An odd-grade g does not commute with exp(-I w.x); the product form breaks.
  const GridSignal odd = random_signal(g, 10);
  GridSignal rhs2 = pointwise_product(cft_forward(f), cft_forward(odd));
  for (double& v : rhs2.raw()) v *= 2.0 * std::numbers::pi;
  CHECK(rel(cft_forward(convolve(f, odd)), rhs2) > 1e-3);
}

TEST_CASE("domain checks") {
  const GridSpec g = GridSpec::make(2, 4.0, 8);
  GridSignal f(g);
  CHECK_THROWS_AS(cft_inverse(f), DimensionMismatch);
  CHECK_THROWS_AS(cft_forward(cft_forward(f)), DimensionMismatch);
}
