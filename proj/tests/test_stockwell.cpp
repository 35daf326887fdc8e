#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "clcst/clcst.hpp"
#include "clcst/config.hpp"
#include "clcst/errors.hpp"
#include "clcst/stockwell.hpp"

using namespace clcst;

TEST_CASE("scaling and rotation") {
  const ScalingMatrix A({2.0, -0.5});
  CHECK(A.abs_det() == 1.0);
  double y[2] = {1.0, 4.0}, z[2];
  A.apply(y, z);
  CHECK(z[0] == 2.0);
  CHECK(z[1] == -2.0);
  Rotation{std::numbers::pi / 2}.apply(z);
  CHECK(z[0] == doctest::Approx(2.0));
  CHECK(z[1] == doctest::Approx(2.0));
  CHECK_THROWS_AS(ScalingMatrix({1.0, 0.0}), DomainError);

  const Window psi = Window::gaussian(2, {1.0, 3.0});
  const double u[2] = {2.0, 1.0};
  const WindowFamily fam(psi, u, std::numbers::pi / 2);
  const double p[2] = {0.5, 0.25}, q[2] = {-0.25, 1.0};  // R A_u p = (-0.25, 1)
  CHECK(fam(p) == doctest::Approx(psi(q)));
  CHECK(fam.abs_det() == 2.0);
}

TEST_CASE("u and theta grids") {
  const GridSpec g = GridSpec::make(2, 4.0, 16);
  const UGrid d = UGrid::default_for(g);
  CHECK(d.size() == 64);
  CHECK(d.weight == doctest::Approx(g.dw() * g.dw()));
  const UGrid l = UGrid::lattice(g);
  CHECK(l.size() == 15 * 15);
  for (const auto& p : l.points) CHECK((p[0] != 0.0 && p[1] != 0.0));
  CHECK_THROWS_AS(UGrid::single({0.0, 1.0}), DomainError);
  CHECK(ThetaGrid::make({0.0, 1.0, 2.0}).weight == doctest::Approx(std::numbers::pi / 4));
  CHECK(ThetaGrid::make({0.3}).weight == 1.0);
  CHECK_THROWS_AS(ThetaGrid::make({}), DomainError);
}

TEST_CASE("Stockwell slice equals the literal sum") {
  const GridSpec g = GridSpec::make(2, 3.0, 12);
  SynthesisOptions o;
  o.seed = 3;
  const GridSignal f = synthesize("gaussian_mixture", g, o);
  const Window psi = Window::gaussian(2, {0.9, 0.6}).normalized();
  const std::vector<double> u = {1.3, -0.8};
  const double theta = 0.4;
  const GridSignal S = cst_slice(f, psi, u, theta);
  const WindowFamily fam(psi, u, theta);
  const auto& alg = g.algebra();
  const auto x = g.spatial_coordinates();
  const double pref = fam.abs_det() * g.dx() * g.dx() / (2 * std::numbers::pi);
  double worst = 0.0;
  for (std::size_t k = 0; k < g.points(); ++k) {
    Multivector acc(alg);
    for (std::size_t j = 0; j < g.points(); ++j) {
      const double y[2] = {x[2 * j] - x[2 * k], x[2 * j + 1] - x[2 * k + 1]};
      const double ph = -(x[2 * j] * u[0] + x[2 * j + 1] * u[1]);
      acc += f.at(j) * pseudoscalar_exp(alg, ph) * fam(y);
    }
    worst = std::max(worst, max_abs_diff(acc * pref, S.at(k)));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("cst volume matches single slices") {
  const GridSpec g = GridSpec::make(2, 3.0, 8);
  const GridSignal f = synthesize("gaussian", g);
  const Window psi = Window::gaussian(2, 1.0);
  AnalysisGrid grid{{}, UGrid::tensor({{-1.0, 1.0}, {2.0}}), ThetaGrid::make({0.0, 0.7})};
  const CLCSTVolume vol = cst(f, psi, grid);
  CHECK(vol.u_count() == 2);
  CHECK(vol.theta_count() == 2);
  const std::vector<double> u = {1.0, 2.0};
  CHECK(max_abs_diff(vol.slice(1, 1), cst_slice(f, psi, u, 0.7)) == 0.0);
}
