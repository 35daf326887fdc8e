#include "clcst/clct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "clcst/cft.hpp"
#include "clcst/errors.hpp"

namespace clcst {

LCTParams LCTParams::make(double A, double B, double C, double D) {
  LCTParams m{A, B, C, D};
  m.validate();
  return m;
}

void LCTParams::validate() const {
  for (double v : {A, B, C, D}) {
    if (!std::isfinite(v)) throw DomainError("LCT parameters must be finite");
  }
  const double det = A * D - B * C;
  if (std::abs(det - 1.0) > kUnimodularTolerance) {
    throw DomainError("LCT parameters must satisfy AD - BC = 1, got " + std::to_string(det));
  }
}

std::string LCTParams::to_string() const {
  std::ostringstream os;
  os << "(" << A << ", " << B << ", " << C << ", " << D << ")";
  return os.str();
}

double lct_normalization(const LCTParams& M, int n) {
  if (M.B == 0.0) throw DomainError("normalization is undefined for B = 0");
  return 1.0 / std::sqrt(std::pow(2.0 * std::numbers::pi, n) * std::abs(M.B));
}

Multivector clct_kernel(const LCTParams& M, std::span<const double> u, std::span<const double> x,
                        const AlgebraContext& alg) {
  M.validate();
  if (M.B == 0.0) throw DomainError("the kernel is a distribution for B = 0");
  if (u.size() != x.size()) throw DimensionMismatch("u and x must have the same dimension");
  double x2 = 0.0, u2 = 0.0, xu = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x2 += x[i] * x[i];
    u2 += u[i] * u[i];
    xu += x[i] * u[i];
  }
  const double phase = (M.A * x2 - 2.0 * xu + M.D * u2) / (2.0 * M.B);
  return pseudoscalar_exp(alg, phase) * lct_normalization(M, static_cast<int>(x.size()));
}

static GridSignal dilation_branch(const GridSignal& f, const LCTParams& M) {
  const GridSpec& g = f.spec();
  const double Dr = std::round(M.D);
  if (std::abs(M.D - Dr) > 1e-12 || Dr == 0.0) {
    throw DomainError("B = 0 needs an integer D so that f(D u) stays on the lattice");
  }
  const int D = static_cast<int>(Dr);
  if (D < 0 && g.n % 2 == 1) throw DomainError("D^{-n/2} is not real for D < 0 and odd n");
  const double amp = D > 0 ? std::pow(D, -0.5 * g.n) : std::pow(-D, -0.5 * g.n) * (((g.n / 2) % 2) ? -1.0 : 1.0);

  GridSignal dil(g);
  const int N = g.samples;
  std::vector<int> idx(g.n), src(g.n);
  for (std::size_t k = 0; k < dil.points(); ++k) {
    g.unravel(k, idx);
    bool inside = true;
    for (int a = 0; a < g.n; ++a) {
      // x_j = (j - N/2) dx, so D x_j is index D (j - N/2) + N/2.
      int s = D * (idx[a] - N / 2) + N / 2;
      if (D == -1) s = ((s % N) + N) % N;
      inside = inside && s >= 0 && s < N;
      src[a] = s;
    }
    if (!inside) continue;
    const std::size_t j = g.ravel(src);
    for (std::size_t b = 0; b < dil.blades(); ++b) dil.value(k, b) = amp * f.value(j, b);
  }
  return chirp_multiply(dil, -M.C * M.D / 2.0);
}

GridSignal clct_forward(const GridSignal& f, const LCTParams& M) {
  M.validate();
  if (f.domain() != Domain::spatial) throw DimensionMismatch("clct_forward expects a spatial-domain signal");
  if (M.B == 0.0) return dilation_branch(f, M);
  GridSignal F = cft_forward(chirp_multiply(f, M.chirp_rate()));
  // C_M (2 pi)^{n/2} = |B|^{-1/2}.
  for (double& v : F.raw()) v /= std::sqrt(std::abs(M.B));
  F.set_domain(Domain::frequency, M.B);
  // D |u|^2 / (2B) with u = B w.
  return chirp_multiply(F, M.D / (2.0 * M.B));
}

GridSignal clct_direct(const GridSignal& f, const LCTParams& M) {
  M.validate();
  if (f.domain() != Domain::spatial) throw DimensionMismatch("clct_direct expects a spatial-domain signal");
  if (M.B == 0.0) return dilation_branch(f, M);
  const GridSpec& g = f.spec();
  const AlgebraContext& alg = f.algebra();
  if (alg.pseudoscalar_square() != -1) throw UnsupportedDimension("the kernel needs I^2 = -1");
  const std::size_t nb = alg.blade_count(), ps = alg.pseudoscalar_blade();
  GridSignal out(g, Domain::frequency, M.B);
  const auto x = g.spatial_coordinates();
  const auto u = out.positions();
  const double weight = std::pow(g.dx(), g.n) * lct_normalization(M, g.n);
  std::vector<double> acc(nb);
  for (std::size_t k = 0; k < out.points(); ++k) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const double* uk = u.data() + k * g.n;
    for (std::size_t j = 0; j < f.points(); ++j) {
      const double* xj = x.data() + j * g.n;
      double x2 = 0.0, u2 = 0.0, xu = 0.0;
      for (int a = 0; a < g.n; ++a) {
        x2 += xj[a] * xj[a];
        u2 += uk[a] * uk[a];
        xu += xj[a] * uk[a];
      }
      // f(x) K_M(u, x), kernel on the right.
      const double phase = (M.A * x2 - 2.0 * xu + M.D * u2) / (2.0 * M.B);
      const double c = std::cos(phase), s = std::sin(phase);
      for (std::size_t b = 0; b < nb; ++b) {
        const double v = f.value(j, b);
        acc[b] += c * v;
        acc[b ^ ps] += s * alg.product_sign(b, ps) * v;
      }
    }
    for (std::size_t b = 0; b < nb; ++b) out.value(k, b) = weight * acc[b];
  }
  return out;
}

GridSignal lct_convolve(const GridSignal& f, const GridSignal& g, const LCTParams& M) {
  M.validate();
  const double a = M.chirp_rate();
  return chirp_multiply(convolve(chirp_multiply(f, a), g), -a);
}

}  // namespace clcst
