#include "lattice_conv.hpp"

#include "phase.hpp"

#include <algorithm>
#include <cmath>

namespace clcst::detail {

std::vector<std::size_t> embed_indices(const GridSpec& g, int shift) {
  const int P = 2 * g.samples;
  std::vector<std::size_t> out(g.points());
  std::vector<int> idx(g.n);
  for (std::size_t j = 0; j < out.size(); ++j) {
    g.unravel(j, idx);
    std::size_t k = 0;
    for (int a = 0; a < g.n; ++a) k = k * P + static_cast<std::size_t>(idx[a] + shift);
    out[j] = k;
  }
  return out;
}

std::vector<cplx> padded_window_spectrum(const WindowFamily& fam, const GridSpec& g, double sign) {
  const int P = 2 * g.samples;
  std::size_t total = 1;
  for (int a = 0; a < g.n; ++a) total *= P;
  std::vector<cplx> W(total);
  std::vector<int> idx(g.n, 0);
  std::vector<double> y(g.n);
  for (std::size_t k = 0; k < total; ++k) {
    for (int a = 0; a < g.n; ++a) {
      const int d = idx[a] < g.samples ? idx[a] : idx[a] - P;
      y[a] = sign * d * g.dx();
    }
    W[k] = fam(y);
    for (int a = g.n - 1; a >= 0; --a) {
      if (++idx[a] < P) break;
      idx[a] = 0;
    }
  }
  detail::dft(W, g.n, P, -1);
  return W;
}

// Two real blades share one complex FFT since the window spectrum belongs to a real window.
void padded_convolve(const GridSignal& h, const std::vector<cplx>& W, GridSignal& out) {
  const GridSpec& g = h.spec();
  const int P = 2 * g.samples;
  const auto pos = embed_indices(g, 0);
  const std::size_t np = h.points();
  const double inv = 1.0 / static_cast<double>(W.size());
  std::vector<cplx> z(W.size());
  for (std::size_t b = 0; b < h.blades(); b += 2) {
    auto h0 = h.component(b), h1 = h.component(b + 1);
    std::fill(z.begin(), z.end(), cplx{});
    for (std::size_t j = 0; j < np; ++j) z[pos[j]] = {h0[j], h1[j]};
    detail::dft(z, g.n, P, -1);
    for (std::size_t k = 0; k < z.size(); ++k) z[k] *= W[k];
    detail::dft(z, g.n, P, +1);
    auto o0 = out.component(b), o1 = out.component(b + 1);
    for (std::size_t j = 0; j < np; ++j) {
      o0[j] = z[pos[j]].real() * inv;
      o1[j] = z[pos[j]].imag() * inv;
    }
  }
}

GridSignal modulate(const GridSignal& f, std::span<const double> u, double sign, double scale) {
  GridSignal out(f.spec(), f.domain(), f.scale());
  const auto phase = separable_phase(f, [&](int a, double t) { return sign * u[a] * t; });
  apply_phase_right(f, phase, scale, out);
  return out;
}

}  // namespace clcst::detail
