#include <doctest.h>

#include <cmath>
#include <random>

#include "clcst/algebra.hpp"
#include "clcst/errors.hpp"

using namespace clcst;

namespace {

Multivector random_mv(const AlgebraContext& alg, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Multivector m(alg);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = d(rng);
  return m;
}

}  // namespace

TEST_CASE("quaternion relations in Cl(0,2)") {
  const auto& alg = AlgebraContext::get(2);
  const auto e1 = Multivector::blade(alg, 1), e2 = Multivector::blade(alg, 2), e12 = Multivector::blade(alg, 3);
  CHECK((e1 * e2)[3] == 1.0);
  CHECK((e2 * e1)[3] == -1.0);
  CHECK((e12 * e12)[0] == -1.0);
  // e1 e12 = e1 e1 e2 = -e2
  CHECK((e1 * e12)[2] == -1.0);
  CHECK((e12 * e1)[2] == 1.0);
}

TEST_CASE("pseudoscalar square depends on the signature") {
  CHECK(AlgebraContext::get(2, Signature::negative).pseudoscalar_square() == -1);
  CHECK(AlgebraContext::get(3, Signature::negative).pseudoscalar_square() == 1);
  CHECK(AlgebraContext::get(3, Signature::positive).pseudoscalar_square() == -1);
  CHECK(AlgebraContext::get(6, Signature::negative).pseudoscalar_square() == -1);
  CHECK(AlgebraContext::get(7, Signature::positive).pseudoscalar_square() == -1);
  CHECK(&AlgebraContext::for_transforms(3) == &AlgebraContext::get(3, Signature::positive));
  CHECK_THROWS_AS(AlgebraContext::for_transforms(4), UnsupportedDimension);
}

TEST_CASE("pseudoscalar is central in odd dimension") {
  const auto& alg = AlgebraContext::for_transforms(3);
  const auto I = Multivector::pseudoscalar(alg);
  for (std::size_t b = 0; b < alg.blade_count(); ++b) {
    const auto e = Multivector::blade(alg, b);
    CHECK(max_abs_diff(I * e, e * I) == 0.0);
  }
}

TEST_CASE("conjugation signs") {
  // Cl(0,n): (-1)^{r(r+1)/2}; Cl(n,0): reversion (-1)^{r(r-1)/2}.
  for (int n : {2, 3, 5}) {
    const auto& neg = AlgebraContext::get(n, Signature::negative);
    const auto& pos = AlgebraContext::get(n, Signature::positive);
    for (std::size_t b = 0; b < neg.blade_count(); ++b) {
      const int r = AlgebraContext::grade(b);
      CHECK(neg.conjugate_sign(b) == ((r * (r + 1) / 2) % 2 ? -1 : 1));
      CHECK(pos.conjugate_sign(b) == ((r * (r - 1) / 2) % 2 ? -1 : 1));
      CHECK(pos.conjugate_sign(b) == pos.reversion_sign(b));
    }
  }
}

TEST_CASE("conjugate is the blade inverse") {
  for (auto sig : {Signature::negative, Signature::positive}) {
    const auto& alg = AlgebraContext::get(3, sig);
    for (std::size_t b = 0; b < alg.blade_count(); ++b) {
      const auto e = Multivector::blade(alg, b);
      CHECK(max_abs_diff(e * clifford_conjugate(e), Multivector::scalar(alg, 1.0)) == 0.0);
    }
  }
}

TEST_CASE("random multivector axioms") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3}) {
    const auto& alg = AlgebraContext::for_transforms(n);
    for (int t = 0; t < 50; ++t) {
      const auto a = random_mv(alg, rng), b = random_mv(alg, rng), c = random_mv(alg, rng);
      CHECK(max_abs_diff((a * b) * c, a * (b * c)) < 1e-13);
      CHECK(max_abs_diff(a * (b + c), a * b + a * c) < 1e-13);
      CHECK(max_abs_diff(clifford_conjugate(a * b), clifford_conjugate(b) * clifford_conjugate(a)) < 1e-13);
      CHECK(max_abs_diff(reversion(a * b), reversion(b) * reversion(a)) < 1e-13);
      double ss = 0.0;
      for (double v : a.coeffs()) ss += v * v;
      CHECK(modulus(a) == doctest::Approx(std::sqrt(ss)).epsilon(1e-14));
    }
  }
}

TEST_CASE("grade projection splits a multivector") {
  std::mt19937_64 rng(3);
  const auto& alg = AlgebraContext::get(3);
  const auto m = random_mv(alg, rng);
  Multivector sum(alg);
  for (int r = 0; r <= 3; ++r) sum += grade_project(m, r);
  CHECK(max_abs_diff(sum, m) == 0.0);
  CHECK(grade_project(m, 2)[3] == m[3]);
  CHECK(grade_project(m, 2)[1] == 0.0);
}

TEST_CASE("pseudoscalar exponential") {
  const auto& alg = AlgebraContext::get(2);
  const auto e = pseudoscalar_exp(alg, 0.3) * pseudoscalar_exp(alg, 0.5);
  CHECK(max_abs_diff(e, pseudoscalar_exp(alg, 0.8)) < 1e-15);
  CHECK(modulus(pseudoscalar_exp(alg, 2.1)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(pseudoscalar_exp(AlgebraContext::get(3, Signature::negative), 0.1), UnsupportedDimension);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(Multivector(AlgebraContext::get(2), std::vector<double>(3)), DimensionMismatch);
  CHECK_THROWS_AS(Multivector::scalar(AlgebraContext::get(2), 1) * Multivector::scalar(AlgebraContext::get(3), 1),
                  DimensionMismatch);
  CHECK_THROWS_AS(AlgebraContext::get(0), DomainError);
  CHECK(AlgebraContext::get(3).blade_name(5) == "e13");
}
