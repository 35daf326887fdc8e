#include "clcst/config.hpp"

#include <cmath>
#include <random>

#include "clcst/errors.hpp"
#include "clcst/io.hpp"

namespace clcst {

RunConfig RunConfig::defaults(int n) {
  RunConfig c;
  c.grid = n == 2 ? GridSpec::make(2, 6.0, 64) : GridSpec::make(n, 4.0, 32);
  c.window = Window::gaussian(n, 1.0);
  c.u = UGrid::default_for(c.grid);
  return c;
}

UGrid parse_u_grid(const nlohmann::json& j, const GridSpec& spec) {
  if (j.is_string()) {
    if (j == "default") return UGrid::default_for(spec);
    if (j == "lattice") return UGrid::lattice(spec);
    throw FormatError("unknown u grid '" + j.get<std::string>() + "'");
  }
  if (j.contains("max_bin")) {
    const int K = j.at("max_bin").get<int>();
    if (K < 1) throw DomainError("max_bin must be positive");
    std::vector<double> axis;
    for (int k = -K; k <= K; ++k) {
      if (k != 0) axis.push_back(k * spec.dw());
    }
    return UGrid::tensor(std::vector<std::vector<double>>(spec.n, axis));
  }
  if (j.contains("axes")) return UGrid::tensor(j.at("axes").get<std::vector<std::vector<double>>>());
  if (j.contains("points")) {
    UGrid g;
    g.points = j.at("points").get<std::vector<std::vector<double>>>();
    g.weight = j.value("weight", 1.0);
    for (const auto& p : g.points) ScalingMatrix check(p);
    return g;
  }
  throw FormatError("unrecognized u grid description");
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  const int n = j.value("n", 2);
  RunConfig c = defaults(n);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    c.grid = GridSpec::make(n, g.value("L", c.grid.half_width), g.value("N", c.grid.samples));
    c.u = UGrid::default_for(c.grid);
  }
  if (j.contains("M")) c.M = lct_from_json(j.at("M"));
  if (j.contains("window")) c.window = Window::from_json(j.at("window"), n);
  if (j.contains("u")) c.u = parse_u_grid(j.at("u"), c.grid);
  if (j.contains("theta")) c.theta = ThetaGrid::make(j.at("theta").get<std::vector<double>>());
  if (j.contains("b")) {
    const auto& b = j.at("b");
    if (b.is_string()) {
      if (b != "all") throw FormatError("b must be \"all\" or a list of lattice indices");
    } else {
      c.b.indices = b.get<std::vector<std::size_t>>();
      for (auto i : c.b.indices) {
        if (i >= c.grid.points()) throw DomainError("b index outside the lattice");
      }
    }
  }
  if (j.contains("path")) c.path = parse_path(j.at("path").get<std::string>());
  c.threads = j.value("threads", 0);
  c.seed = j.value("seed", std::uint64_t{1});
  return c;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["n"] = grid.n;
  j["grid"] = {{"L", grid.half_width}, {"N", grid.samples}};
  j["M"] = lct_json(M);
  j["window"] = window.to_json();
  j["u"] = {{"points", u.points}, {"weight", u.weight}};
  j["theta"] = theta.values;
  if (b.all()) {
    j["b"] = "all";
  } else {
    j["b"] = b.indices;
  }
  j["path"] = to_string(path);
  j["threads"] = threads;
  j["seed"] = seed;
  return j;
}

GridSignal synthesize(const std::string& kind, const GridSpec& spec, const SynthesisOptions& opt) {
  const int n = spec.n;
  auto r2 = [n](std::span<const double> x) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
  };
  if (kind == "gaussian") {
    if (!(opt.width > 0.0)) throw DomainError("width must be positive");
    return sample_scalar([&](std::span<const double> x) { return std::exp(-r2(x) / (2 * opt.width * opt.width)); },
                         spec);
  }
  if (kind == "chirp") {
    GridSignal one = sample_scalar([](std::span<const double>) { return 1.0; }, spec);
    return chirp_multiply(one, opt.chirp);
  }
  if (kind == "example1") return sample_scalar([&](std::span<const double> x) { return std::exp(-r2(x)); }, spec);
  if (kind == "gaussian_mixture") {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> centre(-0.3 * spec.half_width, 0.3 * spec.half_width);
    std::uniform_real_distribution<double> width(0.4, 1.0);
    std::normal_distribution<double> amp(0.0, 1.0);
    const AlgebraContext& alg = spec.algebra();
    GridSignal out(spec);
    const auto x = spec.spatial_coordinates();
    for (int c = 0; c < opt.components; ++c) {
      std::vector<double> mu(n);
      for (double& m : mu) m = centre(rng);
      const double s = width(rng);
      std::vector<double> a(alg.blade_count());
      for (double& v : a) v = amp(rng);
      for (std::size_t k = 0; k < out.points(); ++k) {
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) d2 += (x[k * n + i] - mu[i]) * (x[k * n + i] - mu[i]);
        const double e = std::exp(-d2 / (2 * s * s));
        for (std::size_t b = 0; b < a.size(); ++b) out.value(k, b) += a[b] * e;
      }
    }
    return out;
  }
  throw DomainError("unknown signal kind '" + kind + "'");
}

}  // namespace clcst
