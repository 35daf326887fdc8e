#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace clcst {

/// DOG_lambda(x) = lambda^{-2} exp(-|x|^2 / (2 lambda^2)) - exp(-|x|^2 / 2).
double dog_eval(double lambda, std::span<const double> x);

/**
 * @brief Real scalar analysis window psi on R^n.
 *
 * A Gaussian (isotropic or one sigma per axis), a difference of Gaussians,
 * or a real linear combination of two windows. The stored scale multiplies
 * the shape; normalized() returns the unit-integral version.
 */
class Window {
 public:
  enum class Kind { gaussian, dog, combination };

  static Window gaussian(int n, double sigma);
  static Window gaussian(int n, std::vector<double> sigmas);
  static Window dog(int n, double lambda);
  static Window combine(double alpha, const Window& a, double beta, const Window& b);

  Kind kind() const { return kind_; }
  int dimension() const { return n_; }
  double scale() const { return scale_; }
  const std::vector<double>& sigmas() const { return sigmas_; }
  double lambda() const { return lambda_; }
  bool unit_integral() const { return unit_; }

  double operator()(std::span<const double> y) const;

  /// Closed-form integral over R^n.
  double integral() const;
  /// Closed-form L2 norm squared.
  double l2_norm_squared() const;
  /// L1 norm; closed form for Gaussians, quadrature for sign-changing windows.
  double l1_norm() const;
  /// Rescaled to unit integral; throws ZeroIntegral when the integral vanishes.
  Window normalized() const;
  Window scaled(double s) const;

  std::string describe() const;
  nlohmann::json to_json() const;
  static Window from_json(const nlohmann::json& j, int n);

 private:
  Window() = default;
  struct Atom {
    double weight;
    std::vector<double> sigmas;
  };
  /// The window as a weighted sum of Gaussians exp(-sum y_i^2 / (2 s_i^2)).
  std::vector<Atom> atoms() const;
  double shape(std::span<const double> y) const;

  Kind kind_ = Kind::gaussian;
  int n_ = 2;
  double scale_ = 1.0;
  bool unit_ = false;
  std::vector<double> sigmas_;
  double lambda_ = 0.0;
  double alpha_ = 0.0, beta_ = 0.0;
  std::shared_ptr<const Window> a_, b_;
};

}  // namespace clcst
