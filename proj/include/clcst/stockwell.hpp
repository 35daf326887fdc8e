#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clcst/grid.hpp"
#include "clcst/windows.hpp"

namespace clcst {

/// A_u = diag(u_1, ..., u_n); every u_i must be nonzero.
struct ScalingMatrix {
  std::vector<double> u;

  explicit ScalingMatrix(std::vector<double> diag);
  double abs_det() const;
  void apply(std::span<const double> y, std::span<double> out) const;
};

/// Planar rotation R_{-theta} acting on axes 1 and 2:
/// (y1, y2) -> (y1 cos t - y2 sin t, y1 sin t + y2 cos t).
struct Rotation {
  double theta = 0.0;
  void apply(std::span<double> y) const;
};

/// y -> psi(R_{-theta} A_u y).
class WindowFamily {
 public:
  WindowFamily(const Window& psi, std::span<const double> u, double theta);
  double operator()(std::span<const double> y) const;
  double abs_det() const { return scaling_.abs_det(); }

 private:
  const Window* psi_;
  ScalingMatrix scaling_;
  double cos_, sin_;
};

/// Frequency vectors u with a common quadrature weight.
struct UGrid {
  std::vector<std::vector<double>> points;
  double weight = 1.0;

  /// Tensor product of per-axis values; the weight is the product of per-axis spacings.
  static UGrid tensor(const std::vector<std::vector<double>>& axes);
  /// +-{1..N/4} dw on every axis.
  static UGrid default_for(const GridSpec& spec);
  /// Every frequency-lattice bin with no zero component.
  static UGrid lattice(const GridSpec& spec);
  static UGrid single(std::vector<double> u);

  std::size_t size() const { return points.size(); }
};

/// Rotation angles with a common weight pi / (2 (m - 1)), or 1 for a single angle.
struct ThetaGrid {
  std::vector<double> values;
  double weight = 1.0;

  static ThetaGrid make(std::vector<double> values);
  /// {0, pi/4, pi/2}.
  static ThetaGrid default_grid();
  std::size_t size() const { return values.size(); }
};

/// Subset of b lattice indices; empty means the whole lattice.
struct BSelection {
  std::vector<std::size_t> indices;
  bool all() const { return indices.empty(); }
  std::size_t count(const GridSpec& spec) const { return all() ? spec.points() : indices.size(); }
  std::size_t at(std::size_t i) const { return all() ? i : indices[i]; }
};

/**
 * Stockwell slice over the b lattice for one (u, theta):
 *   S(b) = (2 pi)^{-n/2} |det A_u| sum_x f(x) psi(R A_u (x - b)) e^{-I x.u} dx,
 * computed as one linear correlation with a zero-padded FFT.
 */
GridSignal cst_slice(const GridSignal& f, const Window& psi, std::span<const double> u, double theta);

struct AnalysisGrid {
  BSelection b;
  UGrid u;
  ThetaGrid theta;

  static AnalysisGrid default_for(const GridSpec& spec);
};

}  // namespace clcst
