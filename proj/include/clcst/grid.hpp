#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "clcst/algebra.hpp"

namespace clcst {

/**
 * @brief Uniform centered lattice on [-L, L)^n with N samples per axis.
 *
 * Spatial samples sit at x_j = -L + j dx, dx = 2L/N. The matching frequency
 * lattice is w_m = (m - N/2) pi / L. Points are flattened row-major with
 * axis 0 slowest.
 */
struct GridSpec {
  int n = 2;
  double half_width = 6.0;
  int samples = 64;
  Signature signature = Signature::negative;

  /// Validates and picks the transform signature for n.
  static GridSpec make(int n, double half_width, int samples);

  const AlgebraContext& algebra() const { return AlgebraContext::get(n, signature); }
  double dx() const { return 2.0 * half_width / samples; }
  double dw() const { return 3.14159265358979323846 / half_width; }
  std::size_t points() const;
  double coordinate(int j) const { return -half_width + j * dx(); }
  double frequency(int m) const { return (m - samples / 2) * dw(); }

  void unravel(std::size_t index, std::span<int> out) const;
  std::size_t ravel(std::span<const int> idx) const;

  /// Flattened table of spatial coordinates, points() x n.
  std::vector<double> spatial_coordinates() const;
  /// Flattened table of frequency lattice points, points() x n.
  std::vector<double> frequency_coordinates() const;

  /// Same spacing, factor times wider: the zero-padding lattice.
  GridSpec padded(int factor = 2) const;

  bool operator==(const GridSpec& o) const = default;
};

enum class Domain { spatial, frequency };

/**
 * @brief Multivector samples on a lattice, blade-major.
 *
 * Frequency-domain signals carry a scale s: the sample at lattice index m
 * sits at s * w_m (1 for Fourier output, B for linear canonical output).
 */
class GridSignal {
 public:
  explicit GridSignal(const GridSpec& spec, Domain domain = Domain::spatial, double scale = 1.0);

  const GridSpec& spec() const { return spec_; }
  const AlgebraContext& algebra() const { return *alg_; }
  Domain domain() const { return domain_; }
  double scale() const { return scale_; }
  void set_domain(Domain d, double scale = 1.0) {
    domain_ = d;
    scale_ = scale;
  }

  std::size_t points() const { return points_; }
  std::size_t blades() const { return alg_->blade_count(); }

  std::span<double> component(std::size_t blade) { return {data_.data() + blade * points_, points_}; }
  std::span<const double> component(std::size_t blade) const { return {data_.data() + blade * points_, points_}; }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  double value(std::size_t point, std::size_t blade) const { return data_[blade * points_ + point]; }
  double& value(std::size_t point, std::size_t blade) { return data_[blade * points_ + point]; }

  Multivector at(std::size_t point) const;
  void set(std::size_t point, const Multivector& m);

  /// Physical position of every sample (x for spatial, s w for frequency), points() x n.
  std::vector<double> positions() const;

 private:
  GridSpec spec_;
  const AlgebraContext* alg_;
  Domain domain_;
  double scale_;
  std::size_t points_;
  std::vector<double> data_;
};

using SignalFunction = std::function<Multivector(std::span<const double>)>;

GridSignal sample(const SignalFunction& fn, const GridSpec& spec);
GridSignal sample_scalar(const std::function<double(std::span<const double>)>& fn, const GridSpec& spec);

void require_compatible(const GridSignal& a, const GridSignal& b);

/// Lattice inner product h^n sum f conj(g), h = dx (spatial) or |s| dw (frequency).
Multivector inner_product(const GridSignal& f, const GridSignal& g);
/// Scalar part of the inner product with itself.
double norm_squared(const GridSignal& f);
double relative_l2_error(const GridSignal& approx, const GridSignal& exact);
double max_abs_diff(const GridSignal& a, const GridSignal& b);
double max_abs(const GridSignal& a);

/// f(x) exp(I rate |x|^2), right-multiplied.
GridSignal chirp_multiply(const GridSignal& f, double rate);
/// Right multiplication by a multivector, and left multiplication.
GridSignal multiply_right(const GridSignal& f, const Multivector& m);
GridSignal multiply_left(const Multivector& m, const GridSignal& f);

/// Fraction of the squared norm carried by the outermost sample shell of every axis.
double boundary_mass_fraction(const GridSignal& f);

}  // namespace clcst
