// Zero-padded FFT convolution helpers shared by the Stockwell and CLCST code.
#pragma once

#include <span>
#include <vector>

#include "clcst/stockwell.hpp"
#include "fft.hpp"

namespace clcst::detail {

/// Flat index on the doubled lattice of each original sample, shifted by `shift` per axis.
std::vector<std::size_t> embed_indices(const GridSpec& g, int shift);

/// FFT of d -> fam(sign * d * dx) on the doubled lattice, d wrapped into [-N, N).
std::vector<cplx> padded_window_spectrum(const WindowFamily& fam, const GridSpec& g, double sign);

/// out_m = sum_j h_j window[m - j] for every blade, linear (non-wrapping) on the doubled lattice.
void padded_convolve(const GridSignal& h, const std::vector<cplx>& W, GridSignal& out);

/// f(x) e^{sign I x.u}, right-multiplied and scaled.
GridSignal modulate(const GridSignal& f, std::span<const double> u, double sign, double scale = 1.0);

}  // namespace clcst::detail
