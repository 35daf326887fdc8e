#include "clcst/algebra.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "clcst/errors.hpp"

namespace clcst {

namespace {

// Sign from reordering e_a e_b into canonical order: one transposition for every
// pair (i in a, j in b) with i > j.
int reorder_sign(std::size_t a, std::size_t b) {
  int swaps = 0;
  for (std::size_t s = a >> 1; s != 0; s >>= 1) swaps += std::popcount(s & b);
  return (swaps & 1) ? -1 : 1;
}

}  // namespace

AlgebraContext::AlgebraContext(int n, Signature sig)
    : n_(n), sig_(sig), count_(std::size_t{1} << n), sign_(count_ * count_) {
  for (std::size_t a = 0; a < count_; ++a) {
    for (std::size_t b = 0; b < count_; ++b) {
      int s = reorder_sign(a, b);
      if (sig_ == Signature::negative && (std::popcount(a & b) & 1)) s = -s;
      sign_[a * count_ + b] = static_cast<std::int8_t>(s);
    }
  }
}

const AlgebraContext& AlgebraContext::get(int n, Signature sig) {
  if (n < 1 || n > kMaxDimension) {
    throw DomainError("algebra dimension must be in [1, " + std::to_string(kMaxDimension) + "], got " +
                      std::to_string(n));
  }
  static std::mutex mu;
  static std::map<std::pair<int, Signature>, std::unique_ptr<AlgebraContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, sig}];
  if (!slot) slot.reset(new AlgebraContext(n, sig));
  return *slot;
}

Signature AlgebraContext::transform_signature(int n) {
  switch (n % 4) {
    case 1:
    case 2:
      return Signature::negative;
    case 3:
      return Signature::positive;
    default:
      throw UnsupportedDimension("no signature gives a pseudoscalar with I^2 = -1 for n = " + std::to_string(n));
  }
}

const AlgebraContext& AlgebraContext::for_transforms(int n) { return get(n, transform_signature(n)); }

int AlgebraContext::grade(std::size_t blade) { return std::popcount(blade); }

int AlgebraContext::reversion_sign(std::size_t blade) const {
  int r = grade(blade);
  return ((r * (r - 1) / 2) & 1) ? -1 : 1;
}

std::string AlgebraContext::blade_name(std::size_t blade) const {
  if (blade == 0) return "1";
  std::string s = "e";
  for (int i = 0; i < n_; ++i) {
    if (blade & (std::size_t{1} << i)) s += std::to_string(i + 1);
  }
  return s;
}

void AlgebraContext::multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) const {
  for (std::size_t k = 0; k < count_; ++k) out[k] = 0.0;
  for (std::size_t i = 0; i < count_; ++i) {
    if (a[i] == 0.0) continue;
    const std::int8_t* row = &sign_[i * count_];
    for (std::size_t j = 0; j < count_; ++j) {
      if (b[j] == 0.0) continue;
      out[i ^ j] += row[j] * a[i] * b[j];
    }
  }
}

void AlgebraContext::multiply_phase_right(std::span<const double> a, double c, double s,
                                          std::span<double> out) const {
  const std::size_t p = count_ - 1;
  for (std::size_t i = 0; i < count_; ++i) out[i] = c * a[i];
  for (std::size_t i = 0; i < count_; ++i) out[i ^ p] += s * product_sign(i, p) * a[i];
}

Multivector::Multivector(const AlgebraContext& alg) : alg_(&alg), c_(alg.blade_count(), 0.0) {}

Multivector::Multivector(const AlgebraContext& alg, std::vector<double> coeffs) : alg_(&alg), c_(std::move(coeffs)) {
  if (c_.size() != alg.blade_count()) {
    throw DimensionMismatch("multivector needs " + std::to_string(alg.blade_count()) + " coefficients, got " +
                            std::to_string(c_.size()));
  }
}

Multivector Multivector::scalar(const AlgebraContext& alg, double value) {
  Multivector m(alg);
  m.c_[0] = value;
  return m;
}

Multivector Multivector::blade(const AlgebraContext& alg, std::size_t index, double value) {
  if (index >= alg.blade_count()) throw DomainError("blade index out of range");
  Multivector m(alg);
  m.c_[index] = value;
  return m;
}

Multivector Multivector::pseudoscalar(const AlgebraContext& alg) { return blade(alg, alg.pseudoscalar_blade()); }

void require_same_algebra(const Multivector& a, const Multivector& b) {
  if (&a.algebra() != &b.algebra()) throw DimensionMismatch("multivectors belong to different algebras");
}

Multivector& Multivector::operator+=(const Multivector& o) {
  require_same_algebra(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  require_same_algebra(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator-(Multivector a) { return a *= -1.0; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator*(double s, Multivector a) { return a *= s; }

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  require_same_algebra(a, b);
  Multivector out(a.algebra());
  a.algebra().multiply(a.coeffs(), b.coeffs(), out.coeffs());
  return out;
}

Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }

Multivector grade_project(const Multivector& m, int r) {
  Multivector out(m.algebra());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (AlgebraContext::grade(i) == r) out[i] = m[i];
  }
  return out;
}

Multivector clifford_conjugate(const Multivector& m) {
  Multivector out(m.algebra());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m.algebra().conjugate_sign(i) * m[i];
  return out;
}

Multivector reversion(const Multivector& m) {
  Multivector out(m.algebra());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m.algebra().reversion_sign(i) * m[i];
  return out;
}

double scalar_part(const Multivector& m) { return m[0]; }

double modulus(const Multivector& m) { return std::sqrt(scalar_part(m * clifford_conjugate(m))); }

double max_abs_diff(const Multivector& a, const Multivector& b) {
  require_same_algebra(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Multivector pseudoscalar_exp(const AlgebraContext& alg, double phase) {
  if (alg.pseudoscalar_square() != -1) {
    throw UnsupportedDimension("pseudoscalar of this algebra squares to +1 (n = " + std::to_string(alg.dimension()) +
                               "); exp(I phase) is not a rotation");
  }
  Multivector m(alg);
  m[0] = std::cos(phase);
  m[alg.pseudoscalar_blade()] = std::sin(phase);
  return m;
}

}  // namespace clcst
