// Thin FFTW wrapper shared by the transform modules.
#pragma once

#include <complex>
#include <vector>

#include "clcst/grid.hpp"

namespace clcst::detail {

using cplx = std::complex<double>;

/// In-place n-d complex DFT over a row-major cube of side N. sign = -1 is e^{-2 pi i},
/// +1 is e^{+2 pi i}; neither direction is scaled.
void dft(std::vector<cplx>& data, int n, int N, int sign);

/// DFT between the centered spatial lattice and the centered frequency lattice:
/// sign = -1 gives sum_j a_j e^{-i w_m x_j}, sign = +1 gives sum_m a_m e^{+i w_m x_j}.
void centered_dft(std::vector<cplx>& data, int n, int N, int sign);

/// Apply sum_j f(x_j) e^{sign I w.x} to every blade of f, combining each component's
/// complex result as Re + Im * I. Output is unscaled.
void clifford_dft(const GridSignal& f, GridSignal& out, int sign);

}  // namespace clcst::detail
