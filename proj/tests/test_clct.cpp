#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "clcst/cft.hpp"
#include "clcst/clct.hpp"
#include "clcst/config.hpp"
#include "clcst/errors.hpp"

using namespace clcst;

namespace {

double rel(const GridSignal& a, const GridSignal& b) { return max_abs_diff(a, b) / max_abs(b); }

GridSignal mixture(const GridSpec& g, std::uint64_t seed) {
  SynthesisOptions o;
  o.seed = seed;
  return synthesize("gaussian_mixture", g, o);
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(LCTParams::make(1, 2, 0, 1));
  CHECK_THROWS_AS(LCTParams::make(1, 2, 3, 4), DomainError);
  CHECK_THROWS_AS(LCTParams::make(1, 1, 0, 1 + 1e-9), DomainError);
  CHECK(LCTParams::make(1, 2, 0, 1).chirp_rate() == 0.25);
}

TEST_CASE("kernel value against its closed form") {
  const auto& alg = AlgebraContext::get(2);
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.5, 2.0);
  const std::vector<double> u = {0.3, -0.7}, x = {1.1, 0.4};
  const Multivector K = clct_kernel(M, u, x, alg);
  const double ph = (1.0 * (1.21 + 0.16) - 2 * (0.33 - 0.28) + 2.0 * (0.09 + 0.49)) / 4.0;
  const double c = 1.0 / std::sqrt(4 * std::numbers::pi * std::numbers::pi * 2.0);
  CHECK(K[0] == doctest::Approx(c * std::cos(ph)));
  CHECK(K[3] == doctest::Approx(c * std::sin(ph)));
  CHECK_THROWS_AS(clct_kernel(LCTParams::make(1, 0, 0, 1), u, x, alg), DomainError);
}

TEST_CASE("chirp-FFT-chirp equals the direct quadrature") {
  std::mt19937_64 rng(4);
  for (int n : {2, 3}) {
    const GridSpec g = GridSpec::make(n, 3.0, n == 2 ? 16 : 6);
    const LCTParams M = LCTParams::make(0.8, -1.3, 0.4, (1.0 + -1.3 * 0.4) / 0.8);
    const GridSignal f = mixture(g, rng());
    const GridSignal a = clct_forward(f, M), b = clct_direct(f, M);
    CHECK(a.scale() == M.B);
    CHECK(rel(a, b) < 1e-12);
  }
}

TEST_CASE("Fourier and Fresnel-like special cases") {
  const GridSpec g = GridSpec::make(2, 5.0, 32);
  const GridSignal f = mixture(g, 3);
  CHECK(max_abs_diff(clct_forward(f, LCTParams::fourier()), cft_forward(f)) == 0.0);
  // A = D = 1, C = 0 only adds chirps around the CFT.
  const LCTParams M = LCTParams::make(1.0, 1.0, 0.0, 1.0);
  GridSignal expect = chirp_multiply(cft_forward(chirp_multiply(f, 0.5)), 0.5);
  CHECK(max_abs_diff(clct_forward(f, M), expect) < 1e-14);
}

TEST_CASE("B = 0 dilation branch") {
  const GridSpec g = GridSpec::make(2, 4.0, 16);
  const GridSignal f = mixture(g, 5);
  // D = 1, C = 0.5: identity up to a chirp.
  CHECK(max_abs_diff(clct_forward(f, LCTParams::make(1, 0, 0.5, 1)), chirp_multiply(f, -0.25)) < 1e-15);
  // D = -1 is the reflection; even n gives the factor (-1)^{n/2} = -1.
  const GridSignal r = clct_forward(f, LCTParams::make(-1, 0, 0, -1));
  std::vector<int> a(2), b(2);
  for (std::size_t k = 0; k < g.points(); ++k) {
    g.unravel(k, a);
    for (int i = 0; i < 2; ++i) b[i] = (16 - a[i]) % 16;
    CHECK(r.value(k, 2) == -f.value(g.ravel(b), 2));
  }
  // D = 2 samples every other point and scales by 1/2.
  const GridSignal d = clct_forward(f, LCTParams::make(0.5, 0, 0, 2));
  std::vector<int> c = {9, 7};  // x = (1, -1) dx
  std::vector<int> s = {10, 6};
  CHECK(d.value(g.ravel(c), 0) == doctest::Approx(0.5 * f.value(g.ravel(s), 0)));
  CHECK_THROWS_AS(clct_forward(f, LCTParams::make(1 / 1.5, 0, 0, 1.5)), DomainError);
  CHECK_THROWS_AS(clct_forward(GridSignal(GridSpec::make(3, 4.0, 8)), LCTParams::make(-1, 0, 0, -1)), DomainError);
}

TEST_CASE("product theorem for scalar g") {
  const GridSpec g = GridSpec::make(2, 6.0, 32);
  const LCTParams M = LCTParams::make(1.5, 0.7, -0.2, (1 + 0.7 * -0.2) / 1.5);
  const GridSignal f = mixture(g, 8);
  const GridSignal h = synthesize("gaussian", g, {0.7});
  GridSignal G = cft_forward(h);
  G.set_domain(Domain::frequency, M.B);
  GridSignal rhs = pointwise_product(clct_forward(f, M), G);
  for (double& v : rhs.raw()) v *= 2.0 * std::numbers::pi;
  CHECK(rel(clct_forward(lct_convolve(f, h, M), M), rhs) < 1e-10);
}
