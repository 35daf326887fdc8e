#include "clcst/clcst.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "clcst/cft.hpp"
#include "clcst/errors.hpp"
#include "clcst/parallel.hpp"
#include "fft.hpp"
#include "lattice_conv.hpp"
#include "phase.hpp"

namespace clcst {

using detail::cplx;
using detail::embed_indices;
using detail::modulate;
using detail::padded_convolve;
using detail::padded_window_spectrum;

std::string to_string(EvaluationPath p) {
  switch (p) {
    case EvaluationPath::direct:
      return "direct";
    case EvaluationPath::three_step:
      return "three_step";
    case EvaluationPath::spectral:
      return "spectral";
  }
  return "?";
}

EvaluationPath parse_path(const std::string& s) {
  if (s == "direct") return EvaluationPath::direct;
  if (s == "three_step" || s == "three-step") return EvaluationPath::three_step;
  if (s == "spectral") return EvaluationPath::spectral;
  throw FormatError("unknown evaluation path '" + s + "'");
}

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_inputs(const GridSignal& f, const Window& psi) {
  if (f.domain() != Domain::spatial) throw DimensionMismatch("the transform expects a spatial-domain signal");
  if (psi.dimension() != f.spec().n) throw DimensionMismatch("window dimension differs from the signal dimension");
  if (f.algebra().pseudoscalar_square() != -1) {
    throw UnsupportedDimension("the transform needs a pseudoscalar with I^2 = -1");
  }
}

void check_u(std::span<const double> u, int n) {
  if (static_cast<int>(u.size()) != n) throw DimensionMismatch("u has the wrong dimension");
}

// Sums add(i, acc) over i in fixed-size chunks, then adds the chunk totals in
// order, so the result is independent of the worker count.
std::vector<double> chunked_accumulate(std::size_t count, std::size_t length,
                                       const std::function<void(std::size_t, std::vector<double>&)>& add) {
  constexpr std::size_t kChunk = 8;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    partial[c].assign(length, 0.0);
    for (std::size_t i = c * kChunk; i < std::min(count, (c + 1) * kChunk); ++i) add(i, partial[c]);
  });
  std::vector<double> total(length, 0.0);
  for (auto& p : partial) {
    for (std::size_t k = 0; k < length; ++k) total[k] += p[k];
    std::vector<double>().swap(p);
  }
  return total;
}

}  // namespace

Multivector clcst_kernel(const LCTParams& M, const Window& psi, std::span<const double> b, std::span<const double> u,
                         double theta, std::span<const double> x, const AlgebraContext& alg) {
  M.validate();
  const int n = alg.dimension();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x.size()) != n) {
    throw DimensionMismatch("kernel arguments have the wrong dimension");
  }
  check_u(u, n);
  const WindowFamily fam(psi, u, theta);
  const double a = M.chirp_rate();
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = x[i] - b[i];
  const double phase = dot(x, u) + a * dot(b, b) - a * dot(x, x);
  return pseudoscalar_exp(alg, phase) * (fam.abs_det() * fam(d));
}

SliceEngine::SliceEngine(const GridSignal& f, const Window& psi, const LCTParams& M)
    : f_(f), psi_(psi), M_(M), fhat_(f.spec()), padded_spectrum_(f.spec()) {
  check_inputs(f, psi);
  M_.validate();
  fhat_ = chirp_multiply(f_, M_.chirp_rate());
  // Centered embedding: x_j = -2L + (j + N/2) dx on the doubled lattice.
  GridSignal padded(f.spec().padded(2));
  const auto pos = embed_indices(f.spec(), f.spec().samples / 2);
  for (std::size_t b = 0; b < fhat_.blades(); ++b) {
    auto src = fhat_.component(b);
    auto dst = padded.component(b);
    for (std::size_t j = 0; j < src.size(); ++j) dst[pos[j]] = src[j];
  }
  padded_spectrum_ = cft_forward(padded);
}

const GridSignal& SliceEngine::padded_spectrum() const { return padded_spectrum_; }

GridSignal SliceEngine::three_step_slice(std::span<const double> u, double theta) const {
  return chirp_multiply(cst_slice(fhat_, psi_, u, theta), -M_.chirp_rate());
}

GridSignal SliceEngine::padded_slice(std::span<const double> u, double theta) const {
  check_u(u, spec().n);
  const GridSpec P = spec().padded(2);
  const WindowFamily fam(psi_, u, theta);
  const AlgebraContext& alg = f_.algebra();
  // phi(y) = e^{I u.y} psi(R A_u y), conjugated after the transform.
  GridSignal window(P);
  const auto y = P.spatial_coordinates();
  auto w0 = window.component(0);
  for (std::size_t k = 0; k < window.points(); ++k) w0[k] = fam(std::span<const double>(y.data() + k * P.n, P.n));
  GridSignal phi(P);
  detail::apply_phase_right(window, detail::separable_phase(window, [&](int a, double t) { return u[a] * t; }), 1.0, phi);
  GridSignal Phi = cft_forward(phi);
  for (std::size_t b = 0; b < Phi.blades(); ++b) {
    const double s = alg.conjugate_sign(b);
    for (double& v : Phi.component(b)) v *= s;
  }
  GridSignal c = cft_inverse(pointwise_product(padded_spectrum_, Phi));
  GridSignal v = modulate(c, u, -1.0, fam.abs_det());
  return chirp_multiply(v, -M_.chirp_rate());
}

Multivector SliceEngine::direct(std::span<const double> b, std::span<const double> u, double theta) const {
  const GridSpec& g = spec();
  check_u(u, g.n);
  if (static_cast<int>(b.size()) != g.n) throw DimensionMismatch("b has the wrong dimension");
  const AlgebraContext& alg = f_.algebra();
  const std::size_t nb = alg.blade_count(), ps = alg.pseudoscalar_blade();
  const WindowFamily fam(psi_, u, theta);
  const double a = M_.chirp_rate();
  const double b2 = dot(b, b);
  const double conj_i = alg.conjugate_sign(ps);
  const auto x = g.spatial_coordinates();
  std::vector<double> acc(nb, 0.0), d(g.n);
  for (std::size_t j = 0; j < f_.points(); ++j) {
    std::span<const double> xj(x.data() + j * g.n, g.n);
    for (int i = 0; i < g.n; ++i) d[i] = xj[i] - b[i];
    const double w = fam(d);
    if (w == 0.0) continue;
    // f(x) conj(K(x)), K = |det| psi e^{I phase}.
    const double phase = dot(xj, u) + a * b2 - a * dot(xj, xj);
    const double c = w * std::cos(phase), s = conj_i * w * std::sin(phase);
    for (std::size_t k = 0; k < nb; ++k) {
      const double v = f_.value(j, k);
      acc[k] += c * v;
      acc[k ^ ps] += s * alg.product_sign(k, ps) * v;
    }
  }
  const double pre = std::pow(kInvSqrt2Pi * g.dx(), g.n) * fam.abs_det();
  Multivector out(alg, std::move(acc));
  return out * pre;
}

GridSignal SliceEngine::direct_slice(std::span<const double> u, double theta) const {
  const GridSpec& g = spec();
  GridSignal out(g);
  const auto x = g.spatial_coordinates();
  for (std::size_t k = 0; k < out.points(); ++k) {
    out.set(k, direct(std::span<const double>(x.data() + k * g.n, g.n), u, theta));
  }
  return out;
}

GridSignal SliceEngine::slice(std::span<const double> u, double theta, EvaluationPath path) const {
  check_u(u, spec().n);
  switch (path) {
    case EvaluationPath::direct:
      return direct_slice(u, theta);
    case EvaluationPath::three_step:
      return three_step_slice(u, theta);
    case EvaluationPath::spectral: {
      const GridSignal full = padded_slice(u, theta);
      GridSignal out(spec());
      const auto pos = embed_indices(spec(), spec().samples / 2);
      for (std::size_t b = 0; b < out.blades(); ++b) {
        auto src = full.component(b);
        auto dst = out.component(b);
        for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = src[pos[j]];
      }
      return out;
    }
  }
  throw DomainError("unknown evaluation path");
}

CLCSTVolume::CLCSTVolume(VolumeMeta meta)
    : meta_(std::move(meta)),
      nb_(meta_.b.count(meta_.spec)),
      nu_(meta_.u.size()),
      nt_(meta_.theta.size()),
      data_(meta_.spec.algebra().blade_count() * nb_ * nu_ * nt_, 0.0) {
  for (std::size_t i : meta_.b.indices) {
    if (i >= meta_.spec.points()) throw DomainError("b index outside the lattice");
  }
}

Multivector CLCSTVolume::at(std::size_t b, std::size_t u, std::size_t t) const {
  Multivector m(algebra());
  for (std::size_t k = 0; k < blades(); ++k) m[k] = data_[offset(k, b, u, t)];
  return m;
}

void CLCSTVolume::set(std::size_t b, std::size_t u, std::size_t t, const Multivector& m) {
  for (std::size_t k = 0; k < blades(); ++k) data_[offset(k, b, u, t)] = m[k];
}

GridSignal CLCSTVolume::slice(std::size_t u, std::size_t t) const {
  if (!meta_.b.all()) throw DomainError("slice needs a volume over the full b lattice");
  GridSignal s(meta_.spec);
  for (std::size_t k = 0; k < blades(); ++k) {
    auto c = s.component(k);
    for (std::size_t b = 0; b < nb_; ++b) c[b] = data_[offset(k, b, u, t)];
  }
  return s;
}

CLCSTVolume clcst(const GridSignal& f, const Window& psi, const LCTParams& M, const AnalysisGrid& grid,
                  EvaluationPath path) {
  const SliceEngine engine(f, psi, M);
  CLCSTVolume vol(VolumeMeta{f.spec(), grid.b, grid.u, grid.theta, M, psi, path});
  const GridSpec& g = f.spec();
  for (const auto& u : grid.u.points) check_u(u, g.n);
  const auto x = g.spatial_coordinates();
  const std::size_t nt = vol.theta_count();
  parallel_for(vol.u_count() * nt, [&](std::size_t s) {
    const std::size_t ui = s / nt, ti = s % nt;
    const auto& u = grid.u.points[ui];
    const double theta = grid.theta.values[ti];
    if (path == EvaluationPath::direct) {
      for (std::size_t i = 0; i < vol.b_count(); ++i) {
        const std::size_t j = grid.b.at(i);
        vol.set(i, ui, ti, engine.direct(std::span<const double>(x.data() + j * g.n, g.n), u, theta));
      }
      return;
    }
    const GridSignal sl = engine.slice(u, theta, path);
    for (std::size_t k = 0; k < vol.blades(); ++k) {
      auto c = sl.component(k);
      for (std::size_t i = 0; i < vol.b_count(); ++i) vol.raw()[vol.offset(k, i, ui, ti)] = c[grid.b.at(i)];
    }
  });
  return vol;
}

double max_abs_diff(const CLCSTVolume& a, const CLCSTVolume& b) {
  if (a.raw().size() != b.raw().size()) throw DimensionMismatch("volumes differ in shape");
  double d = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) d = std::max(d, std::abs(a.raw()[i] - b.raw()[i]));
  return d;
}

double max_abs(const CLCSTVolume& a) {
  double d = 0.0;
  for (double v : a.raw()) d = std::max(d, std::abs(v));
  return d;
}

GridSignal window_spectrum(const Window& psi, const GridSpec& spec, std::span<const double> u, double theta) {
  check_u(u, spec.n);
  const WindowFamily fam(psi, u, theta);
  const std::size_t ps = spec.algebra().pseudoscalar_blade();
  GridSignal phi(spec);
  const auto y = spec.spatial_coordinates();
  for (std::size_t k = 0; k < phi.points(); ++k) {
    std::span<const double> yk(y.data() + k * spec.n, spec.n);
    const double w = fam(yk), ph = dot(yk, u);
    phi.value(k, 0) = w * std::cos(ph);
    phi.value(k, ps) = w * std::sin(ph);
  }
  return cft_forward(phi);
}

AdmissibilityProfile admissibility(const Window& psi, const GridSpec& spec, const UGrid& u, const ThetaGrid& theta) {
  const std::size_t np = spec.points(), nt = theta.size();
  const double weight = u.weight * theta.weight;
  const auto total = chunked_accumulate(u.size() * nt, np, [&](std::size_t s, std::vector<double>& acc) {
    const auto& uk = u.points[s / nt];
    const GridSignal Phi = window_spectrum(psi, spec, uk, theta.values[s % nt]);
    double det2 = weight;
    for (double v : uk) det2 *= v * v;
    for (std::size_t b = 0; b < Phi.blades(); ++b) {
      auto c = Phi.component(b);
      for (std::size_t k = 0; k < np; ++k) acc[k] += det2 * c[k] * c[k];
    }
  });
  AdmissibilityProfile prof{GridSignal(spec, Domain::frequency, 1.0)};
  auto c = prof.C.component(0);
  std::copy(total.begin(), total.end(), c.begin());
  prof.min = *std::min_element(total.begin(), total.end());
  prof.max = *std::max_element(total.begin(), total.end());
  double sum = 0.0;
  for (double v : total) sum += v;
  prof.mean = sum / static_cast<double>(np);
  prof.relative_variation = prof.mean > 0.0 ? (prof.max - prof.min) / prof.mean : 0.0;
  return prof;
}

Multivector marginal_value(const GridSignal& slice, const LCTParams& M) {
  const GridSignal q = chirp_multiply(slice, M.chirp_rate());
  Multivector acc(slice.algebra());
  for (std::size_t b = 0; b < q.blades(); ++b) {
    double s = 0.0;
    for (double v : q.component(b)) s += v;
    acc[b] = s;
  }
  return acc * std::pow(slice.spec().dx(), slice.spec().n);
}

void fill_singular_bins(GridSignal& G) {
  const GridSpec& g = G.spec();
  const int N = g.samples, z = N / 2;
  if (N < 8) throw DomainError("singular-bin extrapolation needs at least 8 samples per axis");
  std::vector<int> idx(g.n);
  // Axis a fills bins with a zero on axis a and no zero on axes before it;
  // running the axes last to first leaves every neighbor it reads already defined.
  for (int a = g.n - 1; a >= 0; --a) {
    for (std::size_t k = 0; k < G.points(); ++k) {
      g.unravel(k, idx);
      if (idx[a] != z) continue;
      bool earlier_zero = false;
      for (int e = 0; e < a; ++e) earlier_zero = earlier_zero || idx[e] == z;
      if (earlier_zero) continue;
      double avg[3][std::size_t{1} << AlgebraContext::kMaxDimension] = {};
      for (int m = 1; m <= 3; ++m) {
        idx[a] = z + m;
        const std::size_t kp = g.ravel(idx);
        idx[a] = z - m;
        const std::size_t km = g.ravel(idx);
        for (std::size_t b = 0; b < G.blades(); ++b) avg[m - 1][b] = 0.5 * (G.value(kp, b) + G.value(km, b));
      }
      idx[a] = z;
      for (std::size_t b = 0; b < G.blades(); ++b) {
        G.value(k, b) = (15.0 * avg[0][b] - 6.0 * avg[1][b] + avg[2][b]) / 10.0;
      }
    }
  }
}

static GridSignal finish_marginal(GridSignal G, const Window& psi, const LCTParams& M) {
  fill_singular_bins(G);
  const double mass = psi.integral();
  if (std::abs(mass) <= 1e-12 * std::sqrt(psi.l2_norm_squared())) {
    throw ZeroIntegral("marginal reconstruction divides by the window integral, which is zero");
  }
  for (double& v : G.raw()) v /= mass;
  return chirp_multiply(cft_inverse(G), -M.chirp_rate());
}

static std::vector<std::size_t> regular_bins(const GridSpec& g) {
  std::vector<std::size_t> out;
  std::vector<int> idx(g.n);
  for (std::size_t k = 0; k < g.points(); ++k) {
    g.unravel(k, idx);
    bool ok = true;
    for (int a = 0; a < g.n; ++a) ok = ok && idx[a] != g.samples / 2;
    if (ok) out.push_back(k);
  }
  return out;
}

GridSignal reconstruct_marginal(const GridSignal& f, const Window& psi, const LCTParams& M,
                                const MarginalOptions& opt) {
  const SliceEngine engine(f, psi, M);
  const GridSpec& g = f.spec();
  GridSignal G(g, Domain::frequency, 1.0);
  const auto w = g.frequency_coordinates();
  const auto bins = regular_bins(g);
  parallel_for(bins.size(), [&](std::size_t i) {
    const std::size_t k = bins[i];
    std::span<const double> u(w.data() + k * g.n, g.n);
    G.set(k, marginal_value(engine.slice(u, opt.theta, opt.path), M));
  });
  return finish_marginal(std::move(G), psi, M);
}

GridSignal reconstruct_marginal(const CLCSTVolume& vol, std::size_t theta_index) {
  const VolumeMeta& m = vol.meta();
  const GridSpec& g = m.spec;
  if (!m.b.all()) throw DomainError("marginal reconstruction needs the full b lattice");
  if (theta_index >= vol.theta_count()) throw DomainError("theta index out of range");
  std::map<std::size_t, std::size_t> by_bin;
  std::vector<int> idx(g.n);
  for (std::size_t ui = 0; ui < vol.u_count(); ++ui) {
    bool on_lattice = true;
    for (int a = 0; a < g.n; ++a) {
      const double r = m.u.points[ui][a] / g.dw() + g.samples / 2;
      idx[a] = static_cast<int>(std::lround(r));
      on_lattice = on_lattice && std::abs(r - idx[a]) < 1e-9 && idx[a] >= 0 && idx[a] < g.samples;
    }
    if (on_lattice) by_bin[g.ravel(idx)] = ui;
  }
  GridSignal G(g, Domain::frequency, 1.0);
  for (std::size_t k : regular_bins(g)) {
    auto it = by_bin.find(k);
    if (it == by_bin.end()) throw DomainError("volume u grid does not cover every frequency-lattice bin");
    G.set(k, marginal_value(vol.slice(it->second, theta_index), m.M));
  }
  return finish_marginal(std::move(G), m.window, m.M);
}

namespace {

// Adds weight (2 pi)^{-n/2} sum_b V(b) K_b(x) db for one slice into acc.
void synthesize_slice(const GridSignal& V, const Window& psi, const LCTParams& M, std::span<const double> u,
                      double theta, double weight, std::vector<double>& acc) {
  const GridSpec& g = V.spec();
  const WindowFamily fam(psi, u, theta);
  const double a = M.chirp_rate();
  const GridSignal q = chirp_multiply(V, a);
  GridSignal T(g);
  padded_convolve(q, padded_window_spectrum(fam, g, 1.0), T);
  const double pre = weight * std::pow(kInvSqrt2Pi * g.dx(), g.n) * fam.abs_det();
  const GridSignal out = chirp_multiply(modulate(T, u, 1.0, pre), -a);
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += out.raw()[i];
}

ResolutionResult finish_resolution(const GridSpec& g, std::vector<double> total, AdmissibilityProfile prof) {
  if (!(prof.mean > 0.0)) throw DomainError("admissibility profile vanishes");
  GridSignal f(g);
  for (std::size_t i = 0; i < total.size(); ++i) f.raw()[i] = total[i] / prof.mean;
  return {std::move(f), std::move(prof)};
}

}  // namespace

ResolutionResult reconstruct_resolution(const GridSignal& f, const Window& psi, const LCTParams& M, const UGrid& u,
                                        const ThetaGrid& theta, EvaluationPath path) {
  if (path == EvaluationPath::direct) throw DomainError("streaming synthesis needs an FFT path");
  const SliceEngine engine(f, psi, M);
  const std::size_t nt = theta.size();
  const double weight = u.weight * theta.weight;
  auto total = chunked_accumulate(u.size() * nt, f.raw().size(), [&](std::size_t s, std::vector<double>& acc) {
    const auto& uk = u.points[s / nt];
    const double th = theta.values[s % nt];
    synthesize_slice(engine.slice(uk, th, path), psi, M, uk, th, weight, acc);
  });
  return finish_resolution(f.spec(), std::move(total), admissibility(psi, f.spec(), u, theta));
}

ResolutionResult reconstruct_resolution(const CLCSTVolume& vol) {
  const VolumeMeta& m = vol.meta();
  const std::size_t nt = vol.theta_count();
  const double weight = m.u.weight * m.theta.weight;
  const std::size_t len = m.spec.points() * vol.blades();
  auto total = chunked_accumulate(vol.u_count() * nt, len, [&](std::size_t s, std::vector<double>& acc) {
    const std::size_t ui = s / nt, ti = s % nt;
    synthesize_slice(vol.slice(ui, ti), m.window, m.M, m.u.points[ui], m.theta.values[ti], weight, acc);
  });
  return finish_resolution(m.spec, std::move(total), admissibility(m.window, m.spec, m.u, m.theta));
}

Multivector reproducing_kernel(const Window& psi, const LCTParams& M, const GridSpec& spec, const KernelPoint& p1,
                               const KernelPoint& p2, double C) {
  if (!(C > 0.0)) throw DomainError("admissibility constant must be positive");
  const AlgebraContext& alg = spec.algebra();
  const auto x = spec.spatial_coordinates();
  Multivector acc(alg);
  for (std::size_t k = 0; k < spec.points(); ++k) {
    std::span<const double> xk(x.data() + k * spec.n, spec.n);
    const Multivector k1 = clcst_kernel(M, psi, p1.b, p1.u, p1.theta, xk, alg);
    const Multivector k2 = clcst_kernel(M, psi, p2.b, p2.u, p2.theta, xk, alg);
    acc += k1 * clifford_conjugate(k2);
  }
  return acc * (std::pow(spec.dx(), spec.n) / C);
}

double kernel_bound_closed_form(const Window& psi, const KernelPoint& p1, const KernelPoint& p2, double C) {
  const double n = static_cast<double>(p1.u.size());
  const double d1 = ScalingMatrix(p1.u).abs_det(), d2 = ScalingMatrix(p2.u).abs_det();
  return std::sqrt(std::pow(d1, 1.0 - n) * std::pow(d2, 1.0 - n) / C) * psi.l1_norm();
}

double kernel_bound_cauchy_schwarz(const Window& psi, const LCTParams& M, const GridSpec& spec, const KernelPoint& p1,
                                   const KernelPoint& p2, double C) {
  const double n1 = scalar_part(reproducing_kernel(psi, M, spec, p1, p1, C));
  const double n2 = scalar_part(reproducing_kernel(psi, M, spec, p2, p2, C));
  return std::sqrt(n1 * n2);
}

}  // namespace clcst
