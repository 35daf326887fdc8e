#include "clcst/stockwell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clcst/clcst.hpp"
#include "clcst/errors.hpp"
#include "clcst/parallel.hpp"
#include "lattice_conv.hpp"

namespace clcst {

ScalingMatrix::ScalingMatrix(std::vector<double> diag) : u(std::move(diag)) {
  for (double v : u) {
    if (v == 0.0 || !std::isfinite(v)) throw DomainError("A_u is singular: every component of u must be nonzero");
  }
}

double ScalingMatrix::abs_det() const {
  double d = 1.0;
  for (double v : u) d *= std::abs(v);
  return d;
}

void ScalingMatrix::apply(std::span<const double> y, std::span<double> out) const {
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * y[i];
}

void Rotation::apply(std::span<double> y) const {
  if (theta == 0.0 || y.size() < 2) return;
  const double c = std::cos(theta), s = std::sin(theta);
  const double y1 = y[0], y2 = y[1];
  y[0] = y1 * c - y2 * s;
  y[1] = y1 * s + y2 * c;
}

WindowFamily::WindowFamily(const Window& psi, std::span<const double> u, double theta)
    : psi_(&psi), scaling_(std::vector<double>(u.begin(), u.end())), cos_(std::cos(theta)), sin_(std::sin(theta)) {
  if (static_cast<int>(u.size()) != psi.dimension()) throw DimensionMismatch("u and the window differ in dimension");
}

double WindowFamily::operator()(std::span<const double> y) const {
  double z[8];
  std::span<double> zs(z, y.size());
  scaling_.apply(y, zs);
  // Same rotation as Rotation::apply with cos and sin computed once.
  if (zs.size() >= 2) {
    const double z0 = zs[0], z1 = zs[1];
    zs[0] = z0 * cos_ - z1 * sin_;
    zs[1] = z0 * sin_ + z1 * cos_;
  }
  return (*psi_)(zs);
}

static double axis_spacing(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.size() < 2) return 1.0;
  double h = v[1] - v[0];
  for (std::size_t i = 2; i < v.size(); ++i) h = std::min(h, v[i] - v[i - 1]);
  return h;
}

UGrid UGrid::tensor(const std::vector<std::vector<double>>& axes) {
  UGrid g;
  if (axes.empty()) throw DomainError("u grid needs at least one axis");
  g.weight = 1.0;
  for (const auto& a : axes) {
    if (a.empty()) throw DomainError("u grid axis is empty");
    for (double v : a) {
      if (v == 0.0) throw DomainError("u grid values must be nonzero (A_u would be singular)");
    }
    g.weight *= axis_spacing(a);
  }
  const int n = static_cast<int>(axes.size());
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = axes[i][idx[i]];
    g.points.push_back(std::move(p));
    int a = n - 1;
    while (a >= 0 && ++idx[a] == axes[a].size()) idx[a--] = 0;
    if (a < 0) break;
  }
  return g;
}

UGrid UGrid::default_for(const GridSpec& spec) {
  std::vector<double> axis;
  const int K = std::max(1, spec.samples / 4);
  for (int k = -K; k <= K; ++k) {
    if (k != 0) axis.push_back(k * spec.dw());
  }
  return tensor(std::vector<std::vector<double>>(spec.n, axis));
}

UGrid UGrid::lattice(const GridSpec& spec) {
  std::vector<double> axis;
  for (int m = 0; m < spec.samples; ++m) {
    if (m != spec.samples / 2) axis.push_back(spec.frequency(m));
  }
  return tensor(std::vector<std::vector<double>>(spec.n, axis));
}

UGrid UGrid::single(std::vector<double> u) {
  std::vector<std::vector<double>> axes;
  for (double v : u) axes.push_back({v});
  return tensor(axes);
}

ThetaGrid ThetaGrid::make(std::vector<double> values) {
  if (values.empty()) throw DomainError("theta grid is empty");
  ThetaGrid t;
  t.weight = values.size() > 1 ? std::numbers::pi / (2.0 * (values.size() - 1)) : 1.0;
  t.values = std::move(values);
  return t;
}

ThetaGrid ThetaGrid::default_grid() { return make({0.0, std::numbers::pi / 4, std::numbers::pi / 2}); }

AnalysisGrid AnalysisGrid::default_for(const GridSpec& spec) {
  return {BSelection{}, UGrid::default_for(spec), ThetaGrid::default_grid()};
}

GridSignal cst_slice(const GridSignal& f, const Window& psi, std::span<const double> u, double theta) {
  const GridSpec& g = f.spec();
  if (static_cast<int>(u.size()) != g.n) throw DimensionMismatch("u has the wrong dimension");
  const WindowFamily fam(psi, u, theta);
  const double pre = std::pow(g.dx() / std::sqrt(2.0 * std::numbers::pi), g.n) * fam.abs_det();
  const GridSignal h = detail::modulate(f, u, -1.0, pre);
  GridSignal s(g);
  // x_j - b_m = (j - m) dx, so the correlation is a convolution with the reflected window.
  detail::padded_convolve(h, detail::padded_window_spectrum(fam, g, -1.0), s);
  return s;
}

CLCSTVolume cst(const GridSignal& f, const Window& psi, const AnalysisGrid& grid) {
  if (f.domain() != Domain::spatial) throw DimensionMismatch("cst expects a spatial-domain signal");
  if (psi.dimension() != f.spec().n) throw DimensionMismatch("window dimension differs from the signal dimension");
  CLCSTVolume vol(VolumeMeta{f.spec(), grid.b, grid.u, grid.theta, LCTParams::fourier(), psi,
                             EvaluationPath::three_step});
  const std::size_t nt = vol.theta_count();
  parallel_for(vol.u_count() * nt, [&](std::size_t s) {
    const std::size_t ui = s / nt, ti = s % nt;
    const GridSignal sl = cst_slice(f, psi, grid.u.points[ui], grid.theta.values[ti]);
    for (std::size_t k = 0; k < vol.blades(); ++k) {
      auto c = sl.component(k);
      for (std::size_t i = 0; i < vol.b_count(); ++i) vol.raw()[vol.offset(k, i, ui, ti)] = c[grid.b.at(i)];
    }
  });
  return vol;
}

}  // namespace clcst
