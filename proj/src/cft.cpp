#include "clcst/cft.hpp"

#include <cmath>
#include <numbers>

#include "clcst/errors.hpp"
#include "fft.hpp"

namespace clcst {

namespace {

void require_transformable(const GridSignal& f, Domain expected) {
  if (f.algebra().pseudoscalar_square() != -1) {
    throw UnsupportedDimension("the transforms need a pseudoscalar with I^2 = -1");
  }
  if (f.domain() != expected) {
    throw DimensionMismatch(expected == Domain::spatial ? "expected a spatial-domain signal"
                                                        : "expected a frequency-domain signal");
  }
}

void scale_all(GridSignal& f, double s) {
  for (double& v : f.raw()) v *= s;
}

}  // namespace

GridSignal cft_forward(const GridSignal& f) {
  require_transformable(f, Domain::spatial);
  const GridSpec& g = f.spec();
  GridSignal out(g, Domain::frequency, 1.0);
  detail::clifford_dft(f, out, -1);
  scale_all(out, std::pow(g.dx() / std::sqrt(2.0 * std::numbers::pi), g.n));
  return out;
}

GridSignal cft_inverse(const GridSignal& F) {
  require_transformable(F, Domain::frequency);
  if (F.scale() != 1.0) throw DimensionMismatch("cft_inverse expects the unscaled frequency lattice");
  const GridSpec& g = F.spec();
  GridSignal out(g, Domain::spatial, 1.0);
  detail::clifford_dft(F, out, +1);
  scale_all(out, std::pow(g.dw() / std::sqrt(2.0 * std::numbers::pi), g.n));
  return out;
}

static GridSignal direct_sum(const GridSignal& in, Domain out_domain, double sign, double cell) {
  const GridSpec& g = in.spec();
  const AlgebraContext& alg = in.algebra();
  const auto x = g.spatial_coordinates();
  const auto w = g.frequency_coordinates();
  const auto& src = in.domain() == Domain::spatial ? x : w;
  const auto& dst = out_domain == Domain::spatial ? x : w;
  GridSignal out(g, out_domain, 1.0);
  const std::size_t np = g.points();
  for (std::size_t k = 0; k < np; ++k) {
    Multivector acc(alg);
    for (std::size_t j = 0; j < np; ++j) {
      double phase = 0.0;
      for (int a = 0; a < g.n; ++a) phase += dst[k * g.n + a] * src[j * g.n + a];
      acc += in.at(j) * pseudoscalar_exp(alg, sign * phase);
    }
    out.set(k, acc * (cell / std::pow(2.0 * std::numbers::pi, 0.5 * g.n)));
  }
  return out;
}

GridSignal cft_forward_direct(const GridSignal& f) {
  require_transformable(f, Domain::spatial);
  return direct_sum(f, Domain::frequency, -1.0, std::pow(f.spec().dx(), f.spec().n));
}

GridSignal cft_inverse_direct(const GridSignal& F) {
  require_transformable(F, Domain::frequency);
  return direct_sum(F, Domain::spatial, +1.0, std::pow(F.spec().dw(), F.spec().n));
}

GridSignal convolve(const GridSignal& f, const GridSignal& g) {
  require_compatible(f, g);
  if (f.domain() != Domain::spatial) throw DimensionMismatch("convolve expects spatial-domain signals");
  const GridSpec& spec = f.spec();
  const AlgebraContext& alg = f.algebra();
  const std::size_t nb = alg.blade_count(), np = f.points();
  const int n = spec.n, N = spec.samples;

  auto spectrum = [&](const GridSignal& s) {
    std::vector<std::vector<detail::cplx>> out(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      auto c = s.component(b);
      bool nonzero = false;
      for (double v : c) nonzero = nonzero || v != 0.0;
      if (!nonzero) continue;
      out[b].assign(c.begin(), c.end());
      detail::dft(out[b], n, N, -1);
    }
    return out;
  };
  const auto Fs = spectrum(f);
  const auto Gs = spectrum(g);

  std::vector<std::vector<detail::cplx>> H(nb, std::vector<detail::cplx>(np));
  for (std::size_t a = 0; a < nb; ++a) {
    if (Fs[a].empty()) continue;
    for (std::size_t b = 0; b < nb; ++b) {
      if (Gs[b].empty()) continue;
      const double s = alg.product_sign(a, b);
      auto& h = H[a ^ b];
      for (std::size_t k = 0; k < np; ++k) h[k] += s * Fs[a][k] * Gs[b][k];
    }
  }

  // Circular result c[m] = sum_t f[t] g[m - t]; since x_j - x_t = x_{j - t + N/2},
  // the lattice convolution is h[j] = c[j + N/2].
  GridSignal out(spec);
  const double scale = std::pow(spec.dx(), n) / static_cast<double>(np);
  std::vector<int> idx(n);
  for (std::size_t b = 0; b < nb; ++b) {
    detail::dft(H[b], n, N, +1);
    auto o = out.component(b);
    for (std::size_t j = 0; j < np; ++j) {
      spec.unravel(j, idx);
      for (int a = 0; a < n; ++a) idx[a] = (idx[a] + N / 2) % N;
      o[j] = scale * H[b][spec.ravel(idx)].real();
    }
  }
  return out;
}

GridSignal pointwise_product(const GridSignal& f, const GridSignal& g) {
  require_compatible(f, g);
  const AlgebraContext& alg = f.algebra();
  GridSignal out(f.spec(), f.domain(), f.scale());
  for (std::size_t a = 0; a < alg.blade_count(); ++a) {
    auto fa = f.component(a);
    for (std::size_t b = 0; b < alg.blade_count(); ++b) {
      auto gb = g.component(b);
      auto o = out.component(a ^ b);
      const double s = alg.product_sign(a, b);
      for (std::size_t k = 0; k < f.points(); ++k) o[k] += s * fa[k] * gb[k];
    }
  }
  return out;
}

}  // namespace clcst
