#include "clcst/grid.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "clcst/errors.hpp"
#include "phase.hpp"

namespace clcst {

GridSpec GridSpec::make(int n, double half_width, int samples) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw DomainError("grid half-width must be positive");
  if (samples < 2 || samples % 2 != 0) {
    throw DomainError("samples per axis must be even and >= 2, got " + std::to_string(samples));
  }
  GridSpec g;
  g.n = n;
  g.half_width = half_width;
  g.samples = samples;
  g.signature = AlgebraContext::transform_signature(n);
  AlgebraContext::get(n, g.signature);
  return g;
}

std::size_t GridSpec::points() const {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= static_cast<std::size_t>(samples);
  return p;
}

void GridSpec::unravel(std::size_t index, std::span<int> out) const {
  for (int a = n - 1; a >= 0; --a) {
    out[a] = static_cast<int>(index % samples);
    index /= samples;
  }
}

std::size_t GridSpec::ravel(std::span<const int> idx) const {
  std::size_t index = 0;
  for (int a = 0; a < n; ++a) index = index * samples + static_cast<std::size_t>(idx[a]);
  return index;
}

static std::vector<double> lattice_table(const GridSpec& g, bool frequency) {
  const std::size_t p = g.points();
  std::vector<double> table(p * g.n);
  std::vector<int> idx(g.n);
  for (std::size_t k = 0; k < p; ++k) {
    g.unravel(k, idx);
    for (int a = 0; a < g.n; ++a) table[k * g.n + a] = frequency ? g.frequency(idx[a]) : g.coordinate(idx[a]);
  }
  return table;
}

std::vector<double> GridSpec::spatial_coordinates() const { return lattice_table(*this, false); }
std::vector<double> GridSpec::frequency_coordinates() const { return lattice_table(*this, true); }

GridSpec GridSpec::padded(int factor) const {
  GridSpec g = *this;
  g.half_width = half_width * factor;
  g.samples = samples * factor;
  return g;
}

GridSignal::GridSignal(const GridSpec& spec, Domain domain, double scale)
    : spec_(spec),
      alg_(&spec.algebra()),
      domain_(domain),
      scale_(scale),
      points_(spec.points()),
      data_(points_ * alg_->blade_count(), 0.0) {}

Multivector GridSignal::at(std::size_t point) const {
  Multivector m(*alg_);
  for (std::size_t b = 0; b < blades(); ++b) m[b] = data_[b * points_ + point];
  return m;
}

void GridSignal::set(std::size_t point, const Multivector& m) {
  if (&m.algebra() != alg_) throw DimensionMismatch("multivector algebra differs from the signal algebra");
  for (std::size_t b = 0; b < blades(); ++b) data_[b * points_ + point] = m[b];
}

std::vector<double> GridSignal::positions() const {
  if (domain_ == Domain::spatial) return spec_.spatial_coordinates();
  std::vector<double> t = spec_.frequency_coordinates();
  for (double& v : t) v *= scale_;
  return t;
}

GridSignal sample(const SignalFunction& fn, const GridSpec& spec) {
  GridSignal out(spec);
  const auto x = spec.spatial_coordinates();
  for (std::size_t k = 0; k < out.points(); ++k) {
    Multivector m = fn(std::span<const double>(x.data() + k * spec.n, spec.n));
    out.set(k, m);
  }
  return out;
}

GridSignal sample_scalar(const std::function<double(std::span<const double>)>& fn, const GridSpec& spec) {
  GridSignal out(spec);
  const auto x = spec.spatial_coordinates();
  auto c = out.component(0);
  for (std::size_t k = 0; k < out.points(); ++k) c[k] = fn(std::span<const double>(x.data() + k * spec.n, spec.n));
  return out;
}

void require_compatible(const GridSignal& a, const GridSignal& b) {
  if (!(a.spec() == b.spec())) throw DimensionMismatch("signals live on different grids");
  if (a.domain() != b.domain() || a.scale() != b.scale()) {
    throw DimensionMismatch("signals live in different domains");
  }
}

static double cell_volume(const GridSignal& f) {
  const GridSpec& g = f.spec();
  const double h = f.domain() == Domain::spatial ? g.dx() : std::abs(f.scale()) * g.dw();
  return std::pow(h, g.n);
}

Multivector inner_product(const GridSignal& f, const GridSignal& g) {
  require_compatible(f, g);
  const AlgebraContext& alg = f.algebra();
  const std::size_t nb = alg.blade_count();
  Multivector acc(alg);
  // f conj(g) = sum_{a,b} f_a g_b e_a conj(e_b); one dot product per blade pair.
  for (std::size_t a = 0; a < nb; ++a) {
    auto fa = f.component(a);
    for (std::size_t b = 0; b < nb; ++b) {
      auto gb = g.component(b);
      double dot = 0.0;
      for (std::size_t k = 0; k < f.points(); ++k) dot += fa[k] * gb[k];
      if (dot == 0.0) continue;
      acc[a ^ b] += alg.product_sign(a, b) * alg.conjugate_sign(b) * dot;
    }
  }
  return acc * cell_volume(f);
}

double norm_squared(const GridSignal& f) {
  double s = 0.0;
  for (double v : f.raw()) s += v * v;
  return s * cell_volume(f);
}

double relative_l2_error(const GridSignal& approx, const GridSignal& exact) {
  require_compatible(approx, exact);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < exact.raw().size(); ++i) {
    const double d = approx.raw()[i] - exact.raw()[i];
    num += d * d;
    den += exact.raw()[i] * exact.raw()[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double max_abs_diff(const GridSignal& a, const GridSignal& b) {
  require_compatible(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) d = std::max(d, std::abs(a.raw()[i] - b.raw()[i]));
  return d;
}

double max_abs(const GridSignal& a) {
  double d = 0.0;
  for (double v : a.raw()) d = std::max(d, std::abs(v));
  return d;
}

namespace detail {

std::vector<std::complex<double>> separable_phase(const GridSignal& f, const std::function<double(int, double)>& phi) {
  const GridSpec& g = f.spec();
  const int N = g.samples;
  std::vector<std::vector<std::complex<double>>> axes(g.n, std::vector<std::complex<double>>(N));
  for (int a = 0; a < g.n; ++a) {
    for (int j = 0; j < N; ++j) {
      const double t = f.domain() == Domain::spatial ? g.coordinate(j) : f.scale() * g.frequency(j);
      axes[a][j] = std::polar(1.0, phi(a, t));
    }
  }
  // Row-major product over axes; the last axis runs fastest.
  std::vector<std::complex<double>> out(f.points());
  std::vector<int> idx(g.n, 0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::complex<double> z = axes[0][idx[0]];
    for (int a = 1; a < g.n; ++a) z *= axes[a][idx[a]];
    out[k] = z;
    for (int a = g.n - 1; a >= 0; --a) {
      if (++idx[a] < N) break;
      idx[a] = 0;
    }
  }
  return out;
}

void apply_phase_right(const GridSignal& f, const std::vector<std::complex<double>>& phase, double scale,
                       GridSignal& out) {
  const AlgebraContext& alg = f.algebra();
  if (alg.pseudoscalar_square() != -1) throw UnsupportedDimension("phase factors need a pseudoscalar with I^2 = -1");
  const std::size_t p = alg.pseudoscalar_blade();
  for (std::size_t b = 0; b < alg.blade_count(); ++b) {
    const double sign = alg.product_sign(b, p);
    auto src = f.component(b);
    auto re = out.component(b);
    auto im = out.component(b ^ p);
    for (std::size_t k = 0; k < src.size(); ++k) {
      const double v = scale * src[k];
      re[k] += phase[k].real() * v;
      im[k] += sign * phase[k].imag() * v;
    }
  }
}

}  // namespace detail

GridSignal chirp_multiply(const GridSignal& f, double rate) {
  GridSignal out(f.spec(), f.domain(), f.scale());
  if (rate == 0.0) {
    out.raw() = f.raw();
    return out;
  }
  const auto phase = detail::separable_phase(f, [rate](int, double t) { return rate * t * t; });
  detail::apply_phase_right(f, phase, 1.0, out);
  return out;
}

GridSignal multiply_right(const GridSignal& f, const Multivector& m) {
  if (&m.algebra() != &f.algebra()) throw DimensionMismatch("multivector algebra differs from the signal algebra");
  GridSignal out(f.spec(), f.domain(), f.scale());
  const AlgebraContext& alg = f.algebra();
  for (std::size_t a = 0; a < alg.blade_count(); ++a) {
    auto fa = f.component(a);
    for (std::size_t b = 0; b < alg.blade_count(); ++b) {
      if (m[b] == 0.0) continue;
      const double w = alg.product_sign(a, b) * m[b];
      auto o = out.component(a ^ b);
      for (std::size_t k = 0; k < f.points(); ++k) o[k] += w * fa[k];
    }
  }
  return out;
}

GridSignal multiply_left(const Multivector& m, const GridSignal& f) {
  if (&m.algebra() != &f.algebra()) throw DimensionMismatch("multivector algebra differs from the signal algebra");
  GridSignal out(f.spec(), f.domain(), f.scale());
  const AlgebraContext& alg = f.algebra();
  for (std::size_t a = 0; a < alg.blade_count(); ++a) {
    if (m[a] == 0.0) continue;
    for (std::size_t b = 0; b < alg.blade_count(); ++b) {
      const double w = alg.product_sign(a, b) * m[a];
      auto fb = f.component(b);
      auto o = out.component(a ^ b);
      for (std::size_t k = 0; k < f.points(); ++k) o[k] += w * fb[k];
    }
  }
  return out;
}

double boundary_mass_fraction(const GridSignal& f) {
  const GridSpec& g = f.spec();
  std::vector<int> idx(g.n);
  double edge = 0.0, total = 0.0;
  for (std::size_t k = 0; k < f.points(); ++k) {
    g.unravel(k, idx);
    bool on_edge = false;
    for (int a = 0; a < g.n; ++a) on_edge = on_edge || idx[a] == 0 || idx[a] == g.samples - 1;
    double m2 = 0.0;
    for (std::size_t b = 0; b < f.blades(); ++b) m2 += f.value(k, b) * f.value(k, b);
    total += m2;
    if (on_edge) edge += m2;
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace clcst
