#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace clcst {

/// Metric of the generators: e_i^2 = -1 (negative) or e_i^2 = +1 (positive).
enum class Signature { negative, positive };

/**
 * @brief Product table for a Clifford algebra over R^n.
 *
 * Blades are indexed by bitmask: bit i set means e_{i+1} is a factor, so
 * index 0 is the scalar and index 2^n - 1 is the pseudoscalar. Instances are
 * interned; use get() and compare by address.
 */
class AlgebraContext {
 public:
  static constexpr int kMaxDimension = 7;

  static const AlgebraContext& get(int n, Signature sig = Signature::negative);

  /// Algebra used by the transforms: the signature whose pseudoscalar squares to -1.
  static const AlgebraContext& for_transforms(int n);
  static Signature transform_signature(int n);

  int dimension() const { return n_; }
  Signature signature() const { return sig_; }
  std::size_t blade_count() const { return count_; }
  std::size_t pseudoscalar_blade() const { return count_ - 1; }

  /// Sign of e_a e_b; the product blade is a ^ b.
  int product_sign(std::size_t a, std::size_t b) const { return sign_[a * count_ + b]; }
  static int grade(std::size_t blade);

  /// conj(e_A) = conjugate_sign(A) e_A, with conj(e_A) = e_A^{-1}.
  int conjugate_sign(std::size_t blade) const { return product_sign(blade, blade); }
  int reversion_sign(std::size_t blade) const;
  int pseudoscalar_square() const { return product_sign(count_ - 1, count_ - 1); }

  std::string blade_name(std::size_t blade) const;

  // Span kernels. Output must not alias the inputs.
  void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) const;
  /// out = a * (c + s I)
  void multiply_phase_right(std::span<const double> a, double c, double s, std::span<double> out) const;

 private:
  AlgebraContext(int n, Signature sig);
  int n_;
  Signature sig_;
  std::size_t count_;
  std::vector<std::int8_t> sign_;
};

/// Element of an algebra, stored as 2^n blade coefficients.
class Multivector {
 public:
  explicit Multivector(const AlgebraContext& alg);
  Multivector(const AlgebraContext& alg, std::vector<double> coeffs);

  static Multivector scalar(const AlgebraContext& alg, double value);
  static Multivector blade(const AlgebraContext& alg, std::size_t index, double value = 1.0);
  static Multivector pseudoscalar(const AlgebraContext& alg);

  const AlgebraContext& algebra() const { return *alg_; }
  std::size_t size() const { return c_.size(); }
  std::span<const double> coeffs() const { return c_; }
  std::span<double> coeffs() { return c_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

 private:
  const AlgebraContext* alg_;
  std::vector<double> c_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator-(Multivector a);
Multivector operator*(Multivector a, double s);
Multivector operator*(double s, Multivector a);
/// Geometric product.
Multivector operator*(const Multivector& a, const Multivector& b);

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector grade_project(const Multivector& m, int r);
Multivector clifford_conjugate(const Multivector& m);
Multivector reversion(const Multivector& m);
double scalar_part(const Multivector& m);

/// Clifford modulus sqrt(Sc(m conj(m))), i.e. the Euclidean norm of the coefficients.
double modulus(const Multivector& m);
double max_abs_diff(const Multivector& a, const Multivector& b);

/// exp(I phase) = cos(phase) + I sin(phase); requires I^2 = -1.
Multivector pseudoscalar_exp(const AlgebraContext& alg, double phase);

void require_same_algebra(const Multivector& a, const Multivector& b);

}  // namespace clcst
