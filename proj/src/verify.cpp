#include "clcst/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "clcst/cft.hpp"
#include "clcst/clcst.hpp"
#include "clcst/config.hpp"
#include "clcst/errors.hpp"
#include "clcst/parallel.hpp"

namespace clcst {

bool CriterionReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

Check at_most(std::string name, double value, double tol, std::string note = {}) {
  return {std::move(name), value, tol, value <= tol, std::move(note)};
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// max |a - b| / max |b|
double rel_diff(const GridSignal& a, const GridSignal& b) { return max_abs_diff(a, b) / std::max(max_abs(b), 1e-300); }

GridSpec default_grid(int n) { return n == 2 ? GridSpec::make(2, 6.0, 64) : GridSpec::make(3, 4.0, 32); }

Multivector random_mv(const AlgebraContext& alg, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  Multivector m(alg);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = d(rng);
  return m;
}

GridSignal random_signal(const GridSpec& g, std::mt19937_64& rng) {
  SynthesisOptions o;
  o.seed = rng();
  o.components = 3;
  return synthesize("gaussian_mixture", g, o);
}

LCTParams random_lct(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.5, 1.5), any(-1.0, 1.0), sgn(0.0, 1.0);
  const double A = mag(rng) * (sgn(rng) < 0.5 ? -1 : 1);
  const double B = mag(rng) * (sgn(rng) < 0.5 ? -1 : 1);
  const double C = any(rng);
  return LCTParams::make(A, B, C, (1.0 + B * C) / A);
}

// An analytic multivector-valued test function: a few narrow bumps near the origin.
struct Bumps {
  struct Bump {
    std::vector<double> centre;
    double width;
    std::vector<double> amp;
  };
  std::vector<Bump> bumps;
  const AlgebraContext* alg;

  Bumps(const AlgebraContext& a, int count, std::mt19937_64& rng) : alg(&a) {
    std::uniform_real_distribution<double> c(-1.0, 1.0), w(0.4, 0.7);
    std::normal_distribution<double> amp(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
      Bump b;
      for (int k = 0; k < a.dimension(); ++k) b.centre.push_back(c(rng));
      b.width = w(rng);
      for (std::size_t k = 0; k < a.blade_count(); ++k) b.amp.push_back(amp(rng));
      bumps.push_back(std::move(b));
    }
  }

  Multivector operator()(std::span<const double> x) const {
    Multivector m(*alg);
    for (const auto& b : bumps) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) d2 += (x[k] - b.centre[k]) * (x[k] - b.centre[k]);
      const double e = std::exp(-d2 / (2 * b.width * b.width));
      for (std::size_t k = 0; k < m.size(); ++k) m[k] += b.amp[k] * e;
    }
    return m;
  }
};

double phase_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> lattice_point(const GridSpec& g, std::size_t k) {
  std::vector<int> idx(g.n);
  g.unravel(k, idx);
  std::vector<double> x(g.n);
  for (int a = 0; a < g.n; ++a) x[a] = g.coordinate(idx[a]);
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// 1. Algebra axioms

CriterionReport verify_algebra(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{1, "algebra axioms", {}, 0.0};
  std::mt19937_64 rng(opt.seed);
  for (int n : {2, 3}) {
    const AlgebraContext& alg = AlgebraContext::get(n, Signature::negative);
    const std::size_t nb = alg.blade_count();
    const std::string tag = "Cl(0," + std::to_string(n) + ") ";
    double anti = 0.0, square = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto ei = Multivector::blade(alg, std::size_t{1} << i);
      square = std::max(square, max_abs_diff(ei * ei, Multivector::scalar(alg, -1.0)));
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto ej = Multivector::blade(alg, std::size_t{1} << j);
        anti = std::max(anti, modulus(ei * ej + ej * ei));
      }
    }
    r.checks.push_back(at_most(tag + "anticommutation", anti, 1e-14));
    r.checks.push_back(at_most(tag + "e_i^2 = -1", square, 1e-14));
    double assoc = 0.0, antiauto = 0.0;
    for (std::size_t a = 0; a < nb; ++a) {
      const auto ea = Multivector::blade(alg, a);
      for (std::size_t b = 0; b < nb; ++b) {
        const auto eb = Multivector::blade(alg, b);
        antiauto = std::max(antiauto, max_abs_diff(clifford_conjugate(ea * eb),
                                                   clifford_conjugate(eb) * clifford_conjugate(ea)));
        for (std::size_t c = 0; c < nb; ++c) {
          const auto ec = Multivector::blade(alg, c);
          assoc = std::max(assoc, max_abs_diff((ea * eb) * ec, ea * (eb * ec)));
        }
      }
    }
    double rnd_assoc = 0.0, pd = 0.0;
    bool positive = true;
    for (int t = 0; t < 100; ++t) {
      const auto x = random_mv(alg, rng), y = random_mv(alg, rng), z = random_mv(alg, rng);
      rnd_assoc = std::max(rnd_assoc, max_abs_diff((x * y) * z, x * (y * z)) / (modulus(x) * modulus(y) * modulus(z)));
      antiauto = std::max(antiauto, max_abs_diff(clifford_conjugate(x * y), clifford_conjugate(y) * clifford_conjugate(x)) /
                                        (modulus(x) * modulus(y)));
      double ss = 0.0;
      for (double v : x.coeffs()) ss += v * v;
      const double sc = scalar_part(x * clifford_conjugate(x));
      positive = positive && sc > 0.0;
      pd = std::max(pd, std::abs(sc - ss) / ss);
    }
    r.checks.push_back(at_most(tag + "associativity (all blade triples)", assoc, 1e-14));
    r.checks.push_back(at_most(tag + "associativity (random)", rnd_assoc, 1e-14));
    r.checks.push_back(at_most(tag + "conj is an anti-automorphism", antiauto, 1e-14));
    r.checks.push_back({tag + "Sc(x conj x) = sum of squares > 0", pd, 1e-14, positive && pd <= 1e-14, ""});
  }
  // The transform algebras: the pseudoscalar must square to -1.
  for (int n : {2, 3}) {
    const AlgebraContext& alg = AlgebraContext::for_transforms(n);
    const auto I = Multivector::pseudoscalar(alg);
    r.checks.push_back(at_most("transform algebra n=" + std::to_string(n) + ": I^2 = -1",
                               max_abs_diff(I * I, Multivector::scalar(alg, -1.0)), 1e-14,
                               n == 3 ? "Cl(3,0); in Cl(0,3) the pseudoscalar squares to +1" : "Cl(0,2)"));
  }
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 2. CFT unitarity

CriterionReport verify_cft(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{2, "CFT unitarity", {}, 0.0};
  std::mt19937_64 rng(opt.seed + 2);
  for (int n : {2, 3}) {
    const GridSpec g = opt.quick ? GridSpec::make(n, n == 2 ? 6.0 : 4.0, 16) : default_grid(n);
    const std::string tag = "n=" + std::to_string(n) + " ";
    double rt = 0.0, planch = 0.0, full = 0.0;
    const int draws = opt.quick ? 4 : 20;
    for (int t = 0; t < draws; ++t) {
      const GridSignal f = random_signal(g, rng), h = random_signal(g, rng);
      const GridSignal F = cft_forward(f), H = cft_forward(h);
      rt = std::max(rt, relative_l2_error(cft_inverse(F), f));
      const Multivector lhs = inner_product(f, h), rhs = inner_product(F, H);
      const double scale = std::sqrt(norm_squared(f) * norm_squared(h));
      planch = std::max(planch, std::abs(scalar_part(lhs) - scalar_part(rhs)) / scale);
      full = std::max(full, max_abs_diff(lhs, rhs) / scale);
    }
    r.checks.push_back(at_most(tag + "forward-inverse round trip (relative L2)", rt, 1e-12));
    r.checks.push_back(at_most(tag + "Plancherel scalar part", planch, 1e-10));
    r.checks.push_back(at_most(tag + "Plancherel, full multivector", full, 1e-10));
  }
  const GridSpec g = default_grid(2);
  const GridSignal gauss = synthesize("gaussian", g);
  GridSignal expect(g, Domain::frequency, 1.0);
  const auto w = g.frequency_coordinates();
  for (std::size_t k = 0; k < expect.points(); ++k) {
    expect.value(k, 0) = std::exp(-0.5 * (w[2 * k] * w[2 * k] + w[2 * k + 1] * w[2 * k + 1]));
  }
  r.checks.push_back(at_most("Gaussian exp(-|x|^2/2) is a fixed point (max abs)", max_abs_diff(cft_forward(gauss), expect),
                             1e-8));
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 3. Convolution theorems

CriterionReport verify_convolution(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{3, "convolution theorems", {}, 0.0};
  std::mt19937_64 rng(opt.seed + 3);
  const GridSpec g = opt.quick ? GridSpec::make(2, 6.0, 32) : default_grid(2);
  const double root = 2.0 * kPi;  // (2 pi)^{n/2} for n = 2
  {
    const GridSignal f = random_signal(g, rng);
    const GridSignal h = synthesize("gaussian", g, {0.8});
    GridSignal rhs = pointwise_product(cft_forward(f), cft_forward(h));
    for (double& v : rhs.raw()) v *= root;
    r.checks.push_back(at_most("CFT(f * g) = (2pi)^{n/2} CFT(f) CFT(g), scalar g", rel_diff(cft_forward(convolve(f, h)), rhs),
                               1e-10));
  }
  {
    const GridSpec g3 = opt.quick ? GridSpec::make(3, 4.0, 8) : default_grid(3);
    const GridSignal f = random_signal(g3, rng), h = random_signal(g3, rng);
    GridSignal rhs = pointwise_product(cft_forward(f), cft_forward(h));
    for (double& v : rhs.raw()) v *= std::pow(2.0 * kPi, 1.5);
    r.checks.push_back(at_most("n=3, multivector g (central pseudoscalar)", rel_diff(cft_forward(convolve(f, h)), rhs), 1e-10));
  }
  for (int t = 0; t < 3; ++t) {
    const LCTParams M = random_lct(rng);
    const GridSignal f = random_signal(g, rng);
    const GridSignal h = synthesize("gaussian", g, {0.6 + 0.2 * t});
    const GridSignal lhs = clct_forward(lct_convolve(f, h, M), M);
    GridSignal G = cft_forward(h);
    G.set_domain(Domain::frequency, M.B);  // G(u / B) sits at the same lattice index as u
    GridSignal rhs = pointwise_product(clct_forward(f, M), G);
    for (double& v : rhs.raw()) v *= root;
    r.checks.push_back(at_most("CLCT(f Theta g) = (2pi)^{n/2} CLCT(f) CFT(g)(u/B), M=" + M.to_string(), rel_diff(lhs, rhs),
                               1e-10));
  }
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 4. CLCT consistency

CriterionReport verify_clct(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{4, "CLCT consistency", {}, 0.0};
  std::mt19937_64 rng(opt.seed + 4);
  const GridSpec g = opt.quick ? GridSpec::make(2, 6.0, 16) : default_grid(2);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const LCTParams M = random_lct(rng);
    const GridSignal f = random_signal(g, rng);
    worst = std::max(worst, rel_diff(clct_forward(f, M), clct_direct(f, M)));
  }
  r.checks.push_back(at_most("chirp-FFT-chirp vs direct quadrature (5 random f, M)", worst, 1e-10));
  const GridSignal f = random_signal(g, rng);
  r.checks.push_back(at_most("M = (0,1,-1,0) reduces to the CFT", rel_diff(clct_forward(f, LCTParams::fourier()), cft_forward(f)),
                             1e-12));
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 5. Path equivalence

CriterionReport verify_paths(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{5, "CLCST path equivalence", {}, 0.0};
  std::mt19937_64 rng(opt.seed + 5);
  const GridSpec g = opt.quick ? GridSpec::make(2, 6.0, 16) : default_grid(2);
  const std::vector<std::pair<std::string, Window>> windows = {
      {"gaussian", Window::gaussian(2, 1.0).normalized()},
      {"dog", Window::dog(2, 0.5)},
      {"anisotropic", Window::gaussian(2, std::vector<double>{0.8, 1.6}).normalized()}};
  const std::vector<LCTParams> Ms = {LCTParams::fourier(), LCTParams::make(1.0, 2.0, 0.0, 1.0),
                                     LCTParams::make(0.5, 1.5, -0.4, 0.8)};
  const GridSignal f = random_signal(g, rng);
  AnalysisGrid full = AnalysisGrid::default_for(g);
  AnalysisGrid sub = full;
  std::uniform_int_distribution<std::size_t> pick(0, g.points() - 1);
  for (int i = 0; i < 4; ++i) sub.b.indices.push_back(pick(rng));
  double d3 = 0.0, dspec = 0.0, dcst = 0.0, dcst_full = 0.0;
  for (const auto& [wname, psi] : windows) {
    for (const auto& M : Ms) {
      const CLCSTVolume direct = clcst(f, psi, M, sub, EvaluationPath::direct);
      const CLCSTVolume three = clcst(f, psi, M, sub, EvaluationPath::three_step);
      const CLCSTVolume spec = clcst(f, psi, M, sub, EvaluationPath::spectral);
      const double ref = std::max(max_abs(direct), 1e-300);
      d3 = std::max(d3, max_abs_diff(three, direct) / ref);
      dspec = std::max(dspec, max_abs_diff(spec, direct) / ref);
      if (M.A == 0.0 && M.B == 1.0 && M.D == 0.0) {
        dcst = std::max(dcst, max_abs_diff(cst(f, psi, sub), direct) / ref);
        const CLCSTVolume a = clcst(f, psi, M, full, EvaluationPath::three_step);
        dcst_full = std::max(dcst_full, max_abs_diff(cst(f, psi, full), a) / std::max(max_abs(a), 1e-300));
      }
    }
  }
  const std::string where = "3 windows x 3 M, " + std::to_string(full.u.size()) + " u x 3 theta";
  r.checks.push_back(at_most("direct = three-step (" + where + ", 4 b points)", d3, 1e-12));
  r.checks.push_back(at_most("direct = spectral", dspec, 1e-8));
  r.checks.push_back(at_most("direct at M=(0,1,-1,0) = CST", dcst, 1e-12));
  r.checks.push_back(at_most("three-step at M=(0,1,-1,0) = CST over the full b lattice", dcst_full, 1e-12));
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 6. Covariance identities

CriterionReport verify_covariance(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{6, "covariance identities", {}, 0.0};
  std::mt19937_64 rng(opt.seed + 6);
  const GridSpec g = opt.quick ? GridSpec::make(2, 6.0, 32) : default_grid(2);
  const AlgebraContext& alg = g.algebra();
  const LCTParams M = LCTParams::make(1.2, 0.8, -0.35, 0.6);
  const Window psi1 = Window::gaussian(2, 1.0), psi2 = Window::dog(2, 0.5);
  const Bumps F(alg, 3, rng), G(alg, 2, rng);
  const UGrid ugrid = UGrid::default_for(g);
  const ThetaGrid th = ThetaGrid::default_grid();
  std::uniform_int_distribution<std::size_t> pu(0, ugrid.size() - 1), pt(0, th.size() - 1);
  std::uniform_int_distribution<int> pb(g.samples / 4, 3 * g.samples / 4 - 1);
  struct Point {
    std::vector<double> b, u;
    double theta;
  };
  std::vector<Point> pts;
  for (int i = 0; i < 8; ++i) {
    Point p;
    for (int a = 0; a < 2; ++a) p.b.push_back(g.coordinate(pb(rng)));
    p.u = ugrid.points[pu(rng)];
    p.theta = th.values[pt(rng)];
    pts.push_back(p);
  }
  auto rel = [](const Multivector& a, const Multivector& b, double ref) { return max_abs_diff(a, b) / std::max(ref, 1e-300); };

  const GridSignal f = sample(F, g), h = sample(G, g);
  // Linearity with left multivector coefficients.
  {
    const Multivector al = random_mv(alg, rng), be = random_mv(alg, rng);
    const GridSignal mix = sample([&](std::span<const double> x) { return al * F(x) + be * G(x); }, g);
    const SliceEngine ef(f, psi1, M), eh(h, psi1, M), em(mix, psi1, M);
    double worst = 0.0;
    for (const auto& p : pts) {
      const Multivector lhs = em.direct(p.b, p.u, p.theta);
      const Multivector rhs = al * ef.direct(p.b, p.u, p.theta) + be * eh.direct(p.b, p.u, p.theta);
      worst = std::max(worst, rel(lhs, rhs, modulus(rhs)));
    }
    r.checks.push_back(at_most("linearity in f (left multivector coefficients)", worst, 1e-10));
  }
  // Anti-linearity in the window (real coefficients; conj acts trivially on them).
  {
    const double al = 0.7, be = -1.3;
    const SliceEngine e1(f, psi1, M), e2(f, psi2, M), ec(f, Window::combine(al, psi1, be, psi2), M);
    double worst = 0.0;
    for (const auto& p : pts) {
      const Multivector lhs = ec.direct(p.b, p.u, p.theta);
      const Multivector rhs = e1.direct(p.b, p.u, p.theta) * al + e2.direct(p.b, p.u, p.theta) * be;
      worst = std::max(worst, rel(lhs, rhs, modulus(rhs)));
    }
    r.checks.push_back(at_most("window anti-linearity", worst, 1e-10));
  }
  // Translation by one lattice step along axis 1.
  {
    const std::vector<double> k = {g.dx(), 0.0};
    const double ab = M.A / M.B;
    const GridSignal shifted = sample([&](std::span<const double> x) {
      std::vector<double> y = {x[0] - k[0], x[1] - k[1]};
      return F(y);
    }, g);
    const GridSignal modulated = sample([&](std::span<const double> x) {
      return F(x) * pseudoscalar_exp(alg, ab * phase_dot(k, x));
    }, g);
    const SliceEngine el(shifted, psi1, M), er(modulated, psi1, M);
    double worst = 0.0;
    for (const auto& p : pts) {
      const std::vector<double> bk = {p.b[0] - k[0], p.b[1] - k[1]};
      const Multivector lhs = el.direct(p.b, p.u, p.theta);
      const double ph = -phase_dot(k, p.u) + ab * (phase_dot(k, k) - phase_dot(k, p.b));
      const Multivector rhs = er.direct(bk, p.u, p.theta) * pseudoscalar_exp(alg, ph);
      worst = std::max(worst, rel(lhs, rhs, modulus(rhs)));
    }
    r.checks.push_back(at_most("translation, k = (dx, 0)", worst, 1e-10));
  }
  // Dilation by lambda = 2; the rescaled side lives on the grid (2L, N).
  {
    const double lam = 2.0;
    const LCTParams Md = LCTParams::make(2.0, 0.5, 0.0, 0.5);
    const LCTParams Mp = LCTParams::make(Md.A, lam * lam * Md.B, Md.C, Md.D);
    const GridSpec g2 = GridSpec::make(2, lam * g.half_width, g.samples);
    const GridSignal dil = sample([&](std::span<const double> x) {
      std::vector<double> y = {lam * x[0], lam * x[1]};
      return F(y);
    }, g);
    const SliceEngine el(dil, psi1, Md), er(sample(F, g2), psi1, Mp);
    double worst = 0.0;
    for (const auto& p : pts) {
      const std::vector<double> b2 = {lam * p.b[0], lam * p.b[1]}, u2 = {p.u[0] / lam, p.u[1] / lam};
      const Multivector lhs = el.direct(p.b, p.u, p.theta);
      const Multivector rhs = er.direct(b2, u2, p.theta);
      worst = std::max(worst, rel(lhs, rhs, modulus(rhs)));
    }
    r.checks.push_back(at_most("dilation, lambda = 2, M' = (A, lambda^2 B, C, D), no lambda^{-n} factor", worst, 1e-10));
  }
  // Parity; with |det A_u| the sign factor is 1 ((-1)^n = 1 for n = 2 as well).
  {
    const GridSignal flipped = sample([&](std::span<const double> x) {
      std::vector<double> y = {-x[0], -x[1]};
      return F(y);
    }, g);
    const SliceEngine el(flipped, psi1, M), er(f, psi1, M);
    double worst = 0.0;
    for (const auto& p : pts) {
      const std::vector<double> mb = {-p.b[0], -p.b[1]}, mu = {-p.u[0], -p.u[1]};
      const Multivector lhs = el.direct(p.b, p.u, p.theta);
      const Multivector rhs = er.direct(mb, mu, p.theta);
      worst = std::max(worst, rel(lhs, rhs, modulus(rhs)));
    }
    r.checks.push_back(at_most("parity", worst, 1e-10));
  }
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 7. Orthogonality per (u, theta)

CriterionReport verify_orthogonality(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{7, "orthogonality (per u, theta)", {}, 0.0};
  std::mt19937_64 rng(opt.seed + 7);
  for (int n : {2, 3}) {
    const GridSpec g = opt.quick ? GridSpec::make(n, n == 2 ? 6.0 : 4.0, n == 2 ? 16 : 8) : default_grid(n);
    const GridSpec P = g.padded(2);
    const Window psi = Window::gaussian(n, 1.0);
    const UGrid ugrid = UGrid::default_for(g);
    const ThetaGrid th = ThetaGrid::default_grid();
    std::uniform_int_distribution<std::size_t> pu(0, ugrid.size() - 1), pt(0, th.size() - 1);
    double worst = 0.0, worst_full = 0.0;
    const int draws = opt.quick ? 2 : 10;
    for (int t = 0; t < draws; ++t) {
      const LCTParams M = random_lct(rng);
      const GridSignal f = random_signal(g, rng), h = random_signal(g, rng);
      const auto& u = ugrid.points[pu(rng)];
      const double theta = th.values[pt(rng)];
      const SliceEngine ef(f, psi, M), eh(h, psi, M);
      // Left side: b over the padded lattice.
      const GridSignal Vf = ef.padded_slice(u, theta), Vh = eh.padded_slice(u, theta);
      const Multivector lhs = inner_product(Vf, Vh);
      // Right side: spectra of the zero-padded chirped inputs and of the window.
      auto padded_spectrum = [&](const GridSignal& s) {
        const GridSignal c = chirp_multiply(s, M.chirp_rate());
        GridSignal out(P);
        // Copy by coordinate: sample j of the original lattice sits at index j + N/2 per axis.
        std::vector<int> idx(n);
        for (std::size_t j = 0; j < c.points(); ++j) {
          g.unravel(j, idx);
          for (int a = 0; a < n; ++a) idx[a] += g.samples / 2;
          out.set(P.ravel(idx), c.at(j));
        }
        return cft_forward(out);
      };
      const GridSignal Fs = padded_spectrum(f), Hs = padded_spectrum(h);
      const GridSignal Phi = window_spectrum(psi, P, u, theta);
      double det2 = 1.0;
      for (double v : u) det2 *= v * v;
      Multivector rhs(g.algebra());
      for (std::size_t k = 0; k < P.points(); ++k) {
        const Multivector ph = Phi.at(k);
        rhs += Fs.at(k) * clifford_conjugate(ph) * ph * clifford_conjugate(Hs.at(k));
      }
      rhs *= det2 * std::pow(P.dw(), n);
      const double scale = std::sqrt(norm_squared(Vf) * norm_squared(Vh));
      worst = std::max(worst, std::abs(scalar_part(lhs) - scalar_part(rhs)) / scale);
      worst_full = std::max(worst_full, max_abs_diff(lhs, rhs) / scale);
    }
    r.checks.push_back(at_most("n=" + std::to_string(n) + " scalar part, " + std::to_string(draws) + " draws", worst, 1e-8));
    r.checks.push_back(at_most("n=" + std::to_string(n) + " full multivector", worst_full, 1e-8));
  }
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 8. Marginal reconstruction

CriterionReport verify_marginal(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{8, "marginal reconstruction", {}, 0.0};
  const GridSpec g = opt.quick ? GridSpec::make(2, 6.0, 32) : default_grid(2);
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  const Window psi = Window::gaussian(2, 0.7).normalized();
  const GridSignal f = sample_scalar([](std::span<const double> x) { return std::exp(-2.0 * (x[0] * x[0] + x[1] * x[1])); }, g);
  const GridSignal Fhat = cft_forward(chirp_multiply(f, M.chirp_rate()));
  {
    const std::vector<double> u = {3 * g.dw(), 3 * g.dw()};
    const SliceEngine e(f, psi, M);
    const Multivector G = marginal_value(e.slice(u, 0.0, EvaluationPath::three_step), M);
    std::vector<int> idx = {g.samples / 2 + 3, g.samples / 2 + 3};
    const double dev = max_abs_diff(G, Fhat.at(g.ravel(idx))) / max_abs(Fhat);
    r.checks.push_back(at_most("b-sum of V e^{I a|b|^2} equals CFT[f chirp] at u = (3dw, 3dw)", dev, 1e-6));
  }
  const GridSignal rec = reconstruct_marginal(f, psi, M);
  r.checks.push_back(at_most("relative L2 error, Gaussian f, unit Gaussian window (sigma 0.7)", relative_l2_error(rec, f), 1e-3));
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 9. Resolution-of-identity reconstruction

CriterionReport verify_resolution(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{9, "resolution-of-identity reconstruction", {}, 0.0};
  const GridSpec g = opt.quick ? GridSpec::make(2, 6.0, 32) : default_grid(2);
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  const Window psi = Window::gaussian(2, 0.2);
  const GridSignal f = synthesize("example1", g);
  const ResolutionResult res = reconstruct_resolution(f, psi, M, UGrid::lattice(g), ThetaGrid::make({0.0}));
  const double err = relative_l2_error(res.f, f);
  std::string note = "admissibility profile min " + std::to_string(res.profile.min) + ", max " +
                     std::to_string(res.profile.max) + ", mean " + std::to_string(res.profile.mean) +
                     ", relative variation " + std::to_string(res.profile.relative_variation);
  r.checks.push_back(at_most("relative L2 error, Gaussian window sigma 0.2, all lattice u", err, 0.05, note));
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 10. Reproducing kernel

CriterionReport verify_kernel(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{10, "reproducing kernel bound", {}, 0.0};
  std::mt19937_64 rng(opt.seed + 10);
  const GridSpec g = opt.quick ? GridSpec::make(2, 6.0, 32) : default_grid(2);
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  const Window psi = Window::gaussian(2, 1.0).normalized();
  const UGrid ugrid = UGrid::default_for(g);
  const ThetaGrid th = ThetaGrid::default_grid();
  const double C = admissibility(psi, g, ugrid, th).mean;
  std::uniform_int_distribution<std::size_t> pu(0, ugrid.size() - 1), pt(0, th.size() - 1), pb(0, g.points() - 1);
  auto draw = [&] {
    return KernelPoint{lattice_point(g, pb(rng)), ugrid.points[pu(rng)], th.values[pt(rng)]};
  };
  const int pairs = opt.quick ? 20 : 100;
  int lit_fail = 0, cs_fail = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const KernelPoint p1 = draw(), p2 = i % 4 == 0 ? p1 : draw();
    const double K = modulus(reproducing_kernel(psi, M, g, p1, p2, C));
    const double lit = kernel_bound_closed_form(psi, p1, p2, C);
    const double cs = kernel_bound_cauchy_schwarz(psi, M, g, p1, p2, C);
    if (K > lit) ++lit_fail;
    if (K > cs * (1 + 1e-12)) ++cs_fail;
    worst_ratio = std::max(worst_ratio, K / lit);
  }
  r.checks.push_back({"closed-form bound (|det|^{1-n}|det'|^{1-n}/C)^{1/2} ||psi||_1 holds for " + std::to_string(pairs) +
                          " random pairs",
                      static_cast<double>(lit_fail), 0.0, lit_fail == 0,
                      "violations counted; worst |K| / bound = " + std::to_string(worst_ratio) + ", C = " + std::to_string(C)});
  r.checks.push_back({"Cauchy-Schwarz bound ||K1|| ||K2|| / C holds", static_cast<double>(cs_fail), 0.0,
                      cs_fail == 0, "violations counted"});
  // Far-separated pairs: windows whose supports are many widths apart.
  double far_worst = 0.0;
  int far = 0;
  std::uniform_real_distribution<double> side(0.0, 1.0);
  while (far < (opt.quick ? 10 : 100)) {
    KernelPoint p1 = draw(), p2 = draw();
    double reach = 0.0;
    for (const auto* p : {&p1, &p2}) {
      for (double v : p->u) reach = std::max(reach, 1.0 / std::abs(v));
    }
    double d2 = 0.0;
    for (int a = 0; a < 2; ++a) d2 += (p1.b[a] - p2.b[a]) * (p1.b[a] - p2.b[a]);
    if (std::sqrt(d2) < 12.0 * reach) continue;
    ++far;
    const double K = modulus(reproducing_kernel(psi, M, g, p1, p2, C));
    far_worst = std::max(far_worst, K / kernel_bound_closed_form(psi, p1, p2, C));
  }
  r.checks.push_back(at_most("far-separated pairs: |K| / closed-form bound", far_worst, 1e-8,
                             "separation >= 12 window widths"));
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 11. Worked example against the closed form

CriterionReport verify_example(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{11, "worked example closed form", {}, 0.0};
  const GridSpec g = default_grid(2);
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  const double a = M.chirp_rate();
  const Window psi = Window::dog(2, 0.5);
  const double theta = kPi / 2;
  const GridSignal f = synthesize("example1", g);
  const SliceEngine e(f, psi, M);
  using cd = std::complex<double>;
  // integral exp(-alpha x^2 - i beta x) dx over R
  auto gauss1d = [](cd alpha, double beta) { return std::sqrt(kPi / alpha) * std::exp(-beta * beta / (4.0 * alpha)); };
  const std::vector<double> us = opt.quick ? std::vector<double>{0.5, 2.0} : std::vector<double>{0.5, 1.0, 1.5, 2.0, 2.5};
  const std::size_t origin = g.ravel(std::vector<int>{g.samples / 2, g.samples / 2});
  double worst = 0.0, worst_direct = 0.0;
  for (double u1 : us) {
    for (double u2 : us) {
      const std::vector<double> u = {u1, u2};
      cd t1 = 4.0, t2 = 1.0;
      for (double ui : u) {
        t1 *= gauss1d(cd(1.0 + 2.0 * ui * ui, -a), ui);
        t2 *= gauss1d(cd(1.0 + 0.5 * ui * ui, -a), ui);
      }
      const cd oracle = std::abs(u1 * u2) / (2.0 * kPi) * (t1 - t2);
      const Multivector v = e.slice(u, theta, EvaluationPath::three_step).at(origin);
      const Multivector vd = e.direct(std::vector<double>{0.0, 0.0}, u, theta);
      auto dev = [&](const Multivector& m) {
        return std::hypot(m[0] - oracle.real(), m[3] - oracle.imag(), std::hypot(m[1], m[2])) / std::abs(oracle);
      };
      worst = std::max(worst, dev(v));
      worst_direct = std::max(worst_direct, dev(vd));
    }
  }
  const std::string grid = std::to_string(us.size()) + "x" + std::to_string(us.size());
  r.checks.push_back(at_most("three-step vs closed form, " + grid + " (u1,u2), per-point relative", worst, 1e-6));
  r.checks.push_back(at_most("direct vs closed form", worst_direct, 1e-6));
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// 12. Performance

CriterionReport verify_performance(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  CriterionReport r{12, "performance sanity", {}, 0.0};
  const int saved = worker_count();
  set_worker_count(1);
  const Window psi = Window::gaussian(2, 1.0);
  const LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  const std::vector<double> u = {2.0, -1.0};
  auto time_min = [](int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
      const auto s = Clock::now();
      fn();
      best = std::min(best, seconds_since(s));
    }
    return best;
  };
  const int big = opt.quick ? 64 : 128, small = big / 2;
  const GridSpec g1 = GridSpec::make(2, 6.0, big), g0 = GridSpec::make(2, 6.0, small);
  const SliceEngine e1(synthesize("example1", g1), psi, M), e0(synthesize("example1", g0), psi, M);
  e1.slice(u, 0.3, EvaluationPath::three_step);  // plan warm-up
  e0.slice(u, 0.3, EvaluationPath::three_step);
  const double fast = time_min(7, [&] { e1.slice(u, 0.3, EvaluationPath::three_step); });
  const double fast0 = time_min(7, [&] { e0.slice(u, 0.3, EvaluationPath::three_step); });
  const double slow = time_min(1, [&] { e1.slice(u, 0.3, EvaluationPath::direct); });
  set_worker_count(saved);
  const double speedup = slow / fast, growth = fast / fast0;
  r.checks.push_back({"three-step speedup over direct at N=" + std::to_string(big), speedup, 5.0, speedup >= 5.0,
                      "three-step " + std::to_string(fast) + " s, direct " + std::to_string(slow) + " s"});
  r.checks.push_back(at_most("three-step time growth N=" + std::to_string(small) + " -> " + std::to_string(big), growth, 6.0,
                             std::to_string(fast0) + " s -> " + std::to_string(fast) + " s"));
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------

std::vector<std::string> suite_names() {
  return {"algebra", "cft", "clct", "cst", "clcst", "covariance", "orthogonality", "reconstruction", "kernel", "example1",
          "performance", "all"};
}

std::vector<CriterionReport> run_suite(const std::string& name, const VerifyOptions& opt) {
  using Fn = CriterionReport (*)(const VerifyOptions&);
  const std::vector<std::pair<std::string, std::vector<Fn>>> table = {
      {"algebra", {verify_algebra}},
      {"cft", {verify_cft, verify_convolution}},
      {"clct", {verify_clct}},
      {"cst", {verify_paths}},
      {"clcst", {verify_paths}},
      {"covariance", {verify_covariance}},
      {"orthogonality", {verify_orthogonality}},
      {"reconstruction", {verify_marginal, verify_resolution}},
      {"kernel", {verify_kernel}},
      {"example1", {verify_example}},
      {"performance", {verify_performance}},
  };
  std::vector<CriterionReport> out;
  std::vector<Fn> done;
  for (const auto& [suite, fns] : table) {
    if (name != "all" && name != suite) continue;
    for (Fn fn : fns) {
      // "cst" and "clcst" share the path-equivalence criterion; run it once.
      if (std::find(done.begin(), done.end(), fn) != done.end()) continue;
      done.push_back(fn);
      out.push_back(fn(opt));
    }
  }
  if (out.empty()) throw DomainError("unknown verify suite '" + name + "'");
  return out;
}

nlohmann::json to_json(const CriterionReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}, {"note", c.note}});
  }
  return {{"criterion", r.id}, {"title", r.title}, {"pass", r.pass()}, {"seconds", r.seconds}, {"checks", checks}};
}

}  // namespace clcst
