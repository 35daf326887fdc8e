#pragma once

#include <string>

#include "clcst/grid.hpp"

namespace clcst {

/// Unimodular parameter matrix M = (A, B, C, D), AD - BC = 1.
struct LCTParams {
  double A = 0.0, B = 1.0, C = -1.0, D = 0.0;

  static constexpr double kUnimodularTolerance = 1e-12;

  /// Throws DomainError unless |AD - BC - 1| <= kUnimodularTolerance.
  static LCTParams make(double A, double B, double C, double D);
  /// M = (0, 1, -1, 0), for which the transform is the Clifford Fourier transform.
  static LCTParams fourier() { return {0.0, 1.0, -1.0, 0.0}; }

  void validate() const;
  /// Input chirp rate A / (2B); zero when B = 0.
  double chirp_rate() const { return B == 0.0 ? 0.0 : A / (2.0 * B); }
  std::string to_string() const;
};

/// Normalization 1 / sqrt((2 pi)^n |B|).
double lct_normalization(const LCTParams& M, int n);

/// K_M(u, x) = C_M exp(I (A|x|^2/(2B) - x.u/B + D|u|^2/(2B))) for B != 0.
Multivector clct_kernel(const LCTParams& M, std::span<const double> u, std::span<const double> x,
                        const AlgebraContext& alg);

/**
 * Linear canonical transform via chirp, CFT, chirp. For B != 0 the result
 * lives on the frequency lattice scaled by B (u_m = B w_m). For B = 0 the
 * result is the sampled dilation D^{-n/2} f(D u) e^{-I C D |u|^2 / 2}
 * on the spatial lattice; D must then be an integer.
 */
GridSignal clct_forward(const GridSignal& f, const LCTParams& M);

/// Literal lattice quadrature of the defining integral, kernel right-multiplied.
GridSignal clct_direct(const GridSignal& f, const LCTParams& M);

/// f Theta g: chirp f, convolve with g, remove the chirp.
GridSignal lct_convolve(const GridSignal& f, const GridSignal& g, const LCTParams& M);

}  // namespace clcst
