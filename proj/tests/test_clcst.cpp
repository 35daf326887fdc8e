#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "clcst/cft.hpp"
#include "clcst/clcst.hpp"
#include "clcst/config.hpp"
#include "clcst/errors.hpp"
#include "clcst/parallel.hpp"

using namespace clcst;

namespace {

GridSignal mixture(const GridSpec& g, std::uint64_t seed) {
  SynthesisOptions o;
  o.seed = seed;
  return synthesize("gaussian_mixture", g, o);
}

}  // namespace

TEST_CASE("path names") {
  for (auto p : {EvaluationPath::direct, EvaluationPath::three_step, EvaluationPath::spectral}) {
    CHECK(parse_path(to_string(p)) == p);
  }
  CHECK_THROWS(parse_path("fast"));
}

TEST_CASE("kernel against its closed form") {
  const auto& alg = AlgebraContext::get(2);
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  const Window psi = Window::gaussian(2, 1.0);
  const std::vector<double> b = {0.5, -1.0}, u = {2.0, -0.5}, x = {1.0, 0.25};
  const Multivector K = clcst_kernel(M, psi, b, u, 0.0, x, alg);
  // R A_u (x - b) = (1, -0.625), a = 1/4.
  const double w = std::exp(-0.5 * (1.0 + 0.390625));
  const double ph = (2.0 - 0.125) + 0.25 * 1.25 - 0.25 * 1.0625;
  CHECK(K[0] == doctest::Approx(w * std::cos(ph)));
  CHECK(K[3] == doctest::Approx(w * std::sin(ph)));
  CHECK(K[1] == 0.0);
  CHECK_THROWS_AS(clcst_kernel(M, psi, b, std::vector<double>{0.0, 1.0}, 0.0, x, alg), DomainError);
}

TEST_CASE("all evaluation paths agree with a kernel-by-kernel sum") {
  for (int n : {2, 3}) {
    const GridSpec g = GridSpec::make(n, 3.0, n == 2 ? 12 : 6);
    const GridSignal f = mixture(g, 21 + n);
    const Window psi = Window::gaussian(n, 0.8).normalized();
    const LCTParams M = LCTParams::make(0.5, 1.5, -0.4, 0.8);
    const SliceEngine engine(f, psi, M);
    const auto& alg = g.algebra();
    const auto x = g.spatial_coordinates();
    const std::vector<double> u(n, 1.1);
    const double theta = 0.35;
    const GridSignal three = engine.slice(u, theta, EvaluationPath::three_step);
    const GridSignal spec = engine.slice(u, theta, EvaluationPath::spectral);
    const GridSignal direct = engine.slice(u, theta, EvaluationPath::direct);
    const double h = std::pow(g.dx() / std::sqrt(2 * std::numbers::pi), n);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.points(); k += 7) {
      std::span<const double> bk(x.data() + k * n, n);
      Multivector acc(alg);
      for (std::size_t j = 0; j < g.points(); ++j) {
        std::span<const double> xj(x.data() + j * n, n);
        acc += f.at(j) * clifford_conjugate(clcst_kernel(M, psi, bk, u, theta, xj, alg));
      }
      acc *= h;
      worst = std::max(worst, max_abs_diff(acc, direct.at(k)));
      worst = std::max(worst, max_abs_diff(acc, engine.direct(bk, u, theta)));
    }
    const double ref = max_abs(direct);
    CHECK(worst / ref < 1e-13);
    CHECK(max_abs_diff(three, direct) / ref < 1e-12);
    CHECK(max_abs_diff(spec, direct) / ref < 1e-8);
  }
}

TEST_CASE("volume layout and b subsets") {
  const GridSpec g = GridSpec::make(2, 3.0, 8);
  const GridSignal f = mixture(g, 2);
  const Window psi = Window::dog(2, 0.5);
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  AnalysisGrid full{{}, UGrid::tensor({{-1.0, 1.5}, {0.5}}), ThetaGrid::make({0.0, 1.0})};
  AnalysisGrid sub = full;
  sub.b.indices = {3, 17, 60};
  const CLCSTVolume a = clcst::clcst(f, psi, M, full), s = clcst::clcst(f, psi, M, sub);
  CHECK(a.b_count() == 64);
  CHECK(s.b_count() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t t = 0; t < 2; ++t) {
      CHECK(max_abs_diff(s.at(i, 1, t), a.at(sub.b.indices[i], 1, t)) == 0.0);
    }
  }
  CHECK(max_abs_diff(a.slice(0, 1), SliceEngine(f, psi, M).slice(full.u.points[0], 1.0, EvaluationPath::three_step)) ==
        0.0);
}

TEST_CASE("results do not depend on the worker count") {
  const GridSpec g = GridSpec::make(2, 4.0, 16);
  const GridSignal f = mixture(g, 5);
  const Window psi = Window::gaussian(2, 0.6).normalized();
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  const UGrid u = UGrid::default_for(g);
  const ThetaGrid th = ThetaGrid::default_grid();
  const int saved = worker_count();
  set_worker_count(1);
  const ResolutionResult r1 = reconstruct_resolution(f, psi, M, u, th);
  const CLCSTVolume v1 = clcst::clcst(f, psi, M, {{}, u, th});
  set_worker_count(3);
  const ResolutionResult r3 = reconstruct_resolution(f, psi, M, u, th);
  const CLCSTVolume v3 = clcst::clcst(f, psi, M, {{}, u, th});
  set_worker_count(saved);
  CHECK(max_abs_diff(r1.f, r3.f) == 0.0);
  CHECK(max_abs_diff(v1, v3) == 0.0);
  CHECK(r1.profile.mean == r3.profile.mean);
}

TEST_CASE("singular-bin fill is exact for even quartics") {
  const GridSpec g = GridSpec::make(2, 4.0, 16);
  GridSignal G(g, Domain::frequency);
  GridSignal truth(g, Domain::frequency);
  const auto w = g.frequency_coordinates();
  for (std::size_t k = 0; k < g.points(); ++k) {
    const double p = w[2 * k], q = w[2 * k + 1];
    const double v = 1.0 + 0.3 * p * p - 0.02 * std::pow(p, 4) + 0.5 * q * q * p * p + 0.01 * std::pow(q, 4);
    truth.value(k, 0) = v;
    truth.value(k, 3) = -2.0 * v;
    const bool singular = p == 0.0 || q == 0.0;
    G.value(k, 0) = singular ? 0.0 : v;
    G.value(k, 3) = singular ? 0.0 : -2.0 * v;
  }
  fill_singular_bins(G);
  CHECK(max_abs_diff(G, truth) < 1e-12 * max_abs(truth));
  GridSignal small(GridSpec::make(2, 1.0, 4), Domain::frequency);
  CHECK_THROWS_AS(fill_singular_bins(small), DomainError);
}

TEST_CASE("admissibility profile") {
  const GridSpec g = GridSpec::make(2, 4.0, 16);
  const Window psi = Window::gaussian(2, 0.5);
  const UGrid u = UGrid::single({1.0, 2.0});
  const AdmissibilityProfile p = admissibility(psi, g, u, ThetaGrid::make({0.0}));
  CHECK(p.min <= p.mean);
  CHECK(p.mean <= p.max);
  CHECK(p.relative_variation == doctest::Approx((p.max - p.min) / p.mean));
  CHECK(p.max > 0.0);
}

TEST_CASE("marginal and resolution reconstructions recover a smooth signal") {
  const GridSpec g = GridSpec::make(2, 6.0, 32);
  const GridSignal f = synthesize("gaussian", g, {0.9});
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  const Window psi = Window::gaussian(2, 0.7).normalized();
  CHECK(relative_l2_error(reconstruct_marginal(f, psi, M), f) < 1e-2);
  CHECK_THROWS_AS(reconstruct_marginal(f, Window::dog(2, 0.5), M), ZeroIntegral);

  const Window narrow = Window::gaussian(2, 0.2);
  const ResolutionResult r = reconstruct_resolution(f, narrow, M, UGrid::lattice(g), ThetaGrid::make({0.0}));
  CHECK(r.profile.relative_variation < 0.1);
  CHECK(relative_l2_error(r.f, f) < 5e-2);
  CHECK_THROWS_AS(reconstruct_resolution(f, narrow, M, UGrid::lattice(g), ThetaGrid::make({0.0}), EvaluationPath::direct),
                  DomainError);
}

TEST_CASE("reproducing kernel is Hermitian and bounded by Cauchy-Schwarz") {
  const GridSpec g = GridSpec::make(2, 4.0, 16);
  const Window psi = Window::gaussian(2, 1.0);
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  const KernelPoint p1{{0.5, 0.0}, {1.0, 1.5}, 0.0}, p2{{0.0, -0.5}, {1.2, 1.0}, 0.6};
  const double C = 2.0;
  const Multivector k12 = reproducing_kernel(psi, M, g, p1, p2, C);
  const Multivector k21 = reproducing_kernel(psi, M, g, p2, p1, C);
  CHECK(max_abs_diff(k12, clifford_conjugate(k21)) < 1e-14);
  CHECK(modulus(k12) <= kernel_bound_cauchy_schwarz(psi, M, g, p1, p2, C) * (1 + 1e-12));
  CHECK_THROWS_AS(reproducing_kernel(psi, M, g, p1, p2, 0.0), DomainError);
}
