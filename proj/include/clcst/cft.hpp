#pragma once

#include "clcst/grid.hpp"

namespace clcst {

// Clifford Fourier transform with the kernel right-multiplied:
//   F(w) = (2 pi)^{-n/2} integral f(x) e^{-I w.x} dx
// discretized on the centered lattices. Forward and inverse are exact
// inverses of each other on the lattice.

GridSignal cft_forward(const GridSignal& f);
GridSignal cft_inverse(const GridSignal& F);

// Literal O(N^{2n}) lattice sums, kept as a test oracle.
GridSignal cft_forward_direct(const GridSignal& f);
GridSignal cft_inverse_direct(const GridSignal& F);

/// h(x) = integral f(t) g(x - t) dt on the lattice, periodic.
GridSignal convolve(const GridSignal& f, const GridSignal& g);

/// Pointwise product f(w) g(w).
GridSignal pointwise_product(const GridSignal& f, const GridSignal& g);

}  // namespace clcst
