#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clcst/clct.hpp"
#include "clcst/grid.hpp"
#include "clcst/stockwell.hpp"
#include "clcst/windows.hpp"

namespace clcst {

/**
 * Evaluation routes for
 *   V(b, u, theta) = (2 pi)^{-n/2} |det A_u| integral f(x) psi(R A_u (x - b))
 *                    e^{-I (x.u + a|b|^2 - a|x|^2)} dx,   a = A / (2B).
 *
 * direct:     the lattice sum term by term, O(N^n) per point.
 * three_step: chirp the input, Stockwell-correlate with one zero-padded FFT
 *             per (u, theta), multiply by the output chirp.
 * spectral:   product of the input spectrum and the conjugated window spectrum
 *             on the zero-padded lattice, then one inverse CFT.
 */
enum class EvaluationPath { direct, three_step, spectral };

std::string to_string(EvaluationPath p);
EvaluationPath parse_path(const std::string& s);

/// K(x) = |det A_u| e^{I (x.u + a|b|^2 - a|x|^2)} psi(R A_u (x - b)).
Multivector clcst_kernel(const LCTParams& M, const Window& psi, std::span<const double> b, std::span<const double> u,
                         double theta, std::span<const double> x, const AlgebraContext& alg);

/// Evaluates slices V(., u, theta) of one signal. Const methods are thread-safe.
class SliceEngine {
 public:
  SliceEngine(const GridSignal& f, const Window& psi, const LCTParams& M);

  const GridSpec& spec() const { return f_.spec(); }
  const LCTParams& params() const { return M_; }
  const Window& window() const { return psi_; }
  /// The chirped input f(x) e^{I a |x|^2}.
  const GridSignal& chirped_input() const { return fhat_; }

  /// V(., u, theta) on the whole b lattice (stored as a spatial-domain signal in b).
  GridSignal slice(std::span<const double> u, double theta, EvaluationPath path) const;
  /// Spectral form with b ranging over the zero-padded lattice (2L, 2N).
  GridSignal padded_slice(std::span<const double> u, double theta) const;
  /// Direct sum at arbitrary b (not necessarily a lattice point).
  Multivector direct(std::span<const double> b, std::span<const double> u, double theta) const;

 private:
  GridSignal three_step_slice(std::span<const double> u, double theta) const;
  GridSignal direct_slice(std::span<const double> u, double theta) const;
  const GridSignal& padded_spectrum() const;

  GridSignal f_;
  Window psi_;
  LCTParams M_;
  GridSignal fhat_;
  GridSignal padded_spectrum_;
};

struct VolumeMeta {
  GridSpec spec;
  BSelection b;
  UGrid u;
  ThetaGrid theta;
  LCTParams M;
  Window window = Window::gaussian(2, 1.0);
  EvaluationPath path = EvaluationPath::three_step;
};

/// V sampled on (b, u, theta); stored blade-major, then b, u, theta row-major.
class CLCSTVolume {
 public:
  explicit CLCSTVolume(VolumeMeta meta);

  const VolumeMeta& meta() const { return meta_; }
  const AlgebraContext& algebra() const { return meta_.spec.algebra(); }
  std::size_t b_count() const { return nb_; }
  std::size_t u_count() const { return nu_; }
  std::size_t theta_count() const { return nt_; }
  std::size_t blades() const { return algebra().blade_count(); }

  std::size_t offset(std::size_t blade, std::size_t b, std::size_t u, std::size_t t) const {
    return ((blade * nb_ + b) * nu_ + u) * nt_ + t;
  }
  Multivector at(std::size_t b, std::size_t u, std::size_t t) const;
  void set(std::size_t b, std::size_t u, std::size_t t, const Multivector& m);
  /// The (u, theta) slice over the full b lattice; requires BSelection::all().
  GridSignal slice(std::size_t u, std::size_t t) const;

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

 private:
  VolumeMeta meta_;
  std::size_t nb_, nu_, nt_;
  std::vector<double> data_;
};

CLCSTVolume clcst(const GridSignal& f, const Window& psi, const LCTParams& M, const AnalysisGrid& grid,
                  EvaluationPath path = EvaluationPath::three_step);

/// Stockwell transform of f itself (no chirps), via cst_slice.
CLCSTVolume cst(const GridSignal& f, const Window& psi, const AnalysisGrid& grid);

double max_abs_diff(const CLCSTVolume& a, const CLCSTVolume& b);
double max_abs(const CLCSTVolume& a);

/// Unitary CFT of e^{I u.y} psi(R A_u y) sampled on the lattice of spec.
GridSignal window_spectrum(const Window& psi, const GridSpec& spec, std::span<const double> u, double theta);

struct AdmissibilityProfile {
  GridSignal C;  // scalar, frequency domain
  double min = 0.0, max = 0.0, mean = 0.0;
  /// (max - min) / mean over the lattice.
  double relative_variation = 0.0;
};

/// C(w) = sum over (u, theta) of weight |det A_u|^2 |Phi_{u,theta}(w)|^2.
AdmissibilityProfile admissibility(const Window& psi, const GridSpec& spec, const UGrid& u, const ThetaGrid& theta);

/// Sum over b of V(b, u, theta) e^{I a |b|^2} db for one slice.
Multivector marginal_value(const GridSignal& slice, const LCTParams& M);

/// Fills bins with a zero component (where A_u is singular) by even extrapolation
/// from three bins on each side, axis by axis.
void fill_singular_bins(GridSignal& G);

struct MarginalOptions {
  double theta = 0.0;
  EvaluationPath path = EvaluationPath::three_step;
};

/// Reconstruction from the b-marginal on the frequency lattice, streaming over u.
GridSignal reconstruct_marginal(const GridSignal& f, const Window& psi, const LCTParams& M,
                                const MarginalOptions& opt = {});
/// Same from a stored volume; the volume's u grid must cover every lattice bin
/// without zero components, over the full b lattice.
GridSignal reconstruct_marginal(const CLCSTVolume& vol, std::size_t theta_index = 0);

struct ResolutionResult {
  GridSignal f;
  AdmissibilityProfile profile;
};

/// Resolution-of-identity synthesis sum_{u,theta} weight sum_b V(b) K_b(x) / mean(C), streaming.
ResolutionResult reconstruct_resolution(const GridSignal& f, const Window& psi, const LCTParams& M, const UGrid& u,
                                        const ThetaGrid& theta, EvaluationPath path = EvaluationPath::three_step);
ResolutionResult reconstruct_resolution(const CLCSTVolume& vol);

struct KernelPoint {
  std::vector<double> b, u;
  double theta = 0.0;
};

/// <K_{p1} / C, K_{p2}> on the lattice.
Multivector reproducing_kernel(const Window& psi, const LCTParams& M, const GridSpec& spec, const KernelPoint& p1,
                               const KernelPoint& p2, double C);
/// Closed-form bound (|det A_u|^{1-n} |det A_u'|^{1-n} / C)^{1/2} ||psi||_1. Self-kernels can exceed it.
double kernel_bound_closed_form(const Window& psi, const KernelPoint& p1, const KernelPoint& p2, double C);
/// Cauchy-Schwarz bound ||K_{p1}|| ||K_{p2}|| / C with lattice norms; in the continuum this is
/// (|det A_u| |det A_u'|)^{1/2} ||psi||_2^2 / C.
double kernel_bound_cauchy_schwarz(const Window& psi, const LCTParams& M, const GridSpec& spec, const KernelPoint& p1,
                                   const KernelPoint& p2, double C);

}  // namespace clcst
