// Command-line front end: synthesize, transform, verify, reconstruct, kernel-dump.
//
// Flags mirror RunConfig fields; a --config JSON document is merged on top of
// them, so any key it sets wins.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "clcst/cft.hpp"
#include "clcst/clcst.hpp"
#include "clcst/config.hpp"
#include "clcst/errors.hpp"
#include "clcst/io.hpp"
#include "clcst/parallel.hpp"
#include "clcst/verify.hpp"

using namespace clcst;
using nlohmann::json;

namespace {

struct RunFlags {
  std::string config;
  int n = 2;
  double L = 0.0;
  int N = 0;
  std::vector<double> M;
  std::string window = "gaussian";
  std::vector<double> sigma;
  double lambda = 0.5;
  std::string normalization = "raw";
  std::string u = "default";
  int u_max_bin = 0;
  std::vector<double> theta;
  std::string path;
  int threads = 0;
  std::uint64_t seed = 1;
};

void add_run_flags(CLI::App* app, RunFlags& f, bool with_grid) {
  app->add_option("--config", f.config, "JSON run configuration; its keys override the flags")->check(CLI::ExistingFile);
  if (with_grid) {
    app->add_option("--n", f.n, "dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
    app->add_option("--L", f.L, "grid half-width");
    app->add_option("--N", f.N, "samples per axis (even)");
  }
  app->add_option("--M", f.M, "LCT parameters A B C D with AD - BC = 1")->expected(4);
  app->add_option("--window", f.window, "gaussian | dog")->check(CLI::IsMember({"gaussian", "dog"}));
  app->add_option("--sigma", f.sigma, "Gaussian width, one value or one per axis");
  app->add_option("--lambda", f.lambda, "DOG scale ratio in (0, 1)");
  app->add_option("--normalization", f.normalization, "raw | unit")->check(CLI::IsMember({"raw", "unit"}));
  app->add_option("--u", f.u, "u grid: default | lattice")->check(CLI::IsMember({"default", "lattice"}));
  app->add_option("--u-max-bin", f.u_max_bin, "u grid of +-1..K frequency bins per axis (overrides --u)");
  app->add_option("--theta", f.theta, "rotation angles in radians");
  app->add_option("--path", f.path, "direct | three_step | spectral");
  app->add_option("--threads", f.threads, "worker threads (0 = hardware)");
  app->add_option("--seed", f.seed, "seed for random choices");
}

json flags_json(const RunFlags& f, const GridSpec* grid) {
  json j;
  const int n = grid ? grid->n : f.n;
  j["n"] = n;
  if (grid) {
    j["grid"] = {{"L", grid->half_width}, {"N", grid->samples}};
  } else if (f.L > 0.0 || f.N > 0) {
    const RunConfig d = RunConfig::defaults(n);
    j["grid"] = {{"L", f.L > 0.0 ? f.L : d.grid.half_width}, {"N", f.N > 0 ? f.N : d.grid.samples}};
  }
  if (!f.M.empty()) j["M"] = f.M;
  json w = {{"kind", f.window}, {"normalization", f.normalization}};
  if (f.window == "gaussian") {
    if (f.sigma.size() == 1) w["sigma"] = f.sigma[0];
    if (f.sigma.size() > 1) w["sigma"] = f.sigma;
  } else {
    w["lambda"] = f.lambda;
  }
  j["window"] = w;
  if (f.u_max_bin > 0) {
    j["u"] = {{"max_bin", f.u_max_bin}};
  } else {
    j["u"] = f.u;
  }
  if (!f.theta.empty()) j["theta"] = f.theta;
  if (!f.path.empty()) j["path"] = f.path;
  j["threads"] = f.threads;
  j["seed"] = f.seed;
  return j;
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path);
  return json::parse(is);
}

// Flags first, then the config document on top. When the grid comes from an
// input file, a config grid must agree with it.
RunConfig resolve(const RunFlags& f, const GridSpec* grid) {
  json j = flags_json(f, grid);
  if (!f.config.empty()) {
    const json c = load_json(f.config);
    if (grid && c.contains("grid")) {
      const GridSpec cg = GridSpec::make(c.value("n", grid->n), c.at("grid").value("L", grid->half_width),
                                         c.at("grid").value("N", grid->samples));
      if (!(cg == *grid)) throw DimensionMismatch("config grid disagrees with the input file");
    }
    if (grid && c.value("n", grid->n) != grid->n) throw DimensionMismatch("config n disagrees with the input file");
    j.merge_patch(c);
    if (grid) j["grid"] = {{"L", grid->half_width}, {"N", grid->samples}};
  }
  RunConfig cfg = RunConfig::from_json(j);
  if (cfg.threads > 0) set_worker_count(cfg.threads);
  return cfg;
}

void write_json(const json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path);
  os << j.dump(2) << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool is_fourier(const LCTParams& M) { return M.A == 0.0 && M.B == 1.0 && M.C == -1.0 && M.D == 0.0; }

json stats_json(const AdmissibilityProfile& p) {
  return {{"min", p.min}, {"max", p.max}, {"mean", p.mean}, {"relative_variation", p.relative_variation}};
}

// ---------------------------------------------------------------------------

int cmd_synthesize(const std::string& kind, const RunFlags& f, SynthesisOptions opt, const std::string& out) {
  const RunConfig cfg = resolve(f, nullptr);
  opt.seed = cfg.seed;
  const GridSignal s = synthesize(kind, cfg.grid, opt);
  write_grid(s, out);
  std::printf("wrote %s signal on n=%d L=%g N=%d to %s\n", kind.c_str(), cfg.grid.n, cfg.grid.half_width,
              cfg.grid.samples, out.c_str());
  return 0;
}

struct TransformArgs {
  std::string input, output, report, spectrogram;
  std::size_t slice_u = 0, slice_theta = 0;
};

int cmd_transform(const RunFlags& f, const TransformArgs& a) {
  const GridSignal input = read_grid(a.input);
  if (input.domain() != Domain::spatial) throw DimensionMismatch("transform expects a spatial-domain input");
  const RunConfig cfg = resolve(f, &input.spec());
  json warnings = json::array();
  if (max_abs(input) == 0.0) warnings.push_back("zero input");
  const double edge = boundary_mass_fraction(input);
  if (edge > 1e-6) {
    warnings.push_back("boundary mass fraction " + std::to_string(edge) + " exceeds 1e-6; expect wrap-around effects");
  }
  if (is_fourier(cfg.M)) warnings.push_back("M = (0,1,-1,0): degenerates to CST");

  const auto t0 = std::chrono::steady_clock::now();
  const CLCSTVolume vol = clcst::clcst(input, cfg.window, cfg.M, cfg.analysis_grid(), cfg.path);
  const double t_transform = seconds_since(t0);
  const auto t1 = std::chrono::steady_clock::now();
  json admiss;
  try {
    admiss = stats_json(admissibility(cfg.window, cfg.grid, cfg.u, cfg.theta));
  } catch (const std::exception& e) {
    admiss = {{"error", e.what()}};
  }
  const double t_admiss = seconds_since(t1);
  write_volume(vol, a.output);
  if (!a.spectrogram.empty()) write_slice_csv(vol, a.slice_u, a.slice_theta, a.spectrogram);

  json report = {{"input", a.input},
                 {"output", a.output},
                 {"path", to_string(cfg.path)},
                 {"config", cfg.to_json()},
                 {"volume", {{"b", vol.b_count()}, {"u", vol.u_count()}, {"theta", vol.theta_count()}}},
                 {"timings", {{"transform_s", t_transform}, {"admissibility_s", t_admiss}}},
                 {"workers", worker_count()},
                 {"admissibility", admiss},
                 {"max_abs", max_abs(vol)},
                 {"warnings", warnings}};
  report["config"].erase("u");
  report["config"]["u_count"] = cfg.u.size();
  if (!a.report.empty()) write_json(report, a.report);
  std::printf("%s: %zu b x %zu u x %zu theta via %s in %.3f s\n", a.output.c_str(), vol.b_count(), vol.u_count(),
              vol.theta_count(), to_string(cfg.path).c_str(), t_transform);
  for (const auto& w : warnings) std::printf("warning: %s\n", w.get<std::string>().c_str());
  return 0;
}

int cmd_verify(const std::string& suite, bool quick, std::uint64_t seed, const std::string& json_out) {
  VerifyOptions opt;
  opt.quick = quick;
  if (seed != 0) opt.seed = seed;
  const auto reports = run_suite(suite, opt);
  json all = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    std::printf("%s criterion %2d: %s (%.1f s)\n", r.pass() ? "[PASS]" : "[FAIL]", r.id, r.title.c_str(), r.seconds);
    for (const auto& c : r.checks) {
      std::printf("    %s %s: %.3e (tolerance %.1e)%s%s\n", c.pass ? "pass" : "FAIL", c.name.c_str(), c.value,
                  c.tolerance, c.note.empty() ? "" : "; ", c.note.c_str());
    }
    ok = ok && r.pass();
    all.push_back(to_json(r));
  }
  if (!json_out.empty()) write_json({{"suite", suite}, {"quick", quick}, {"pass", ok}, {"criteria", all}}, json_out);
  return ok ? 0 : 1;
}

int cmd_reconstruct(const std::string& input, const std::string& method, std::size_t theta_index,
                    const std::string& reference, const std::string& output) {
  const CLCSTVolume vol = read_volume(input);
  json info = {{"method", method}};
  GridSignal f(vol.meta().spec);
  if (method == "marginal") {
    f = reconstruct_marginal(vol, theta_index);
  } else {
    ResolutionResult r = reconstruct_resolution(vol);
    info["admissibility"] = stats_json(r.profile);
    f = std::move(r.f);
  }
  write_grid(f, output);
  if (!reference.empty()) info["relative_l2_error"] = relative_l2_error(f, read_grid(reference));
  std::cout << info.dump() << "\n";
  return 0;
}

struct KernelArgs {
  std::vector<double> b1, u1, b2, u2;
  double theta1 = 0.0, theta2 = 0.0;
  int pairs = 0;
  std::string output = "-";
};

json kernel_point_json(const KernelPoint& p) { return {{"b", p.b}, {"u", p.u}, {"theta", p.theta}}; }

int cmd_kernel_dump(const RunFlags& f, const KernelArgs& a) {
  const RunConfig cfg = resolve(f, nullptr);
  const int n = cfg.grid.n;
  const AdmissibilityProfile prof = admissibility(cfg.window, cfg.grid, cfg.u, cfg.theta);
  const double C = prof.mean;
  std::vector<std::pair<KernelPoint, KernelPoint>> pts;
  if (a.pairs > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> pos(-0.5 * cfg.grid.half_width, 0.5 * cfg.grid.half_width);
    std::uniform_int_distribution<std::size_t> pick(0, cfg.u.size() - 1), pick_t(0, cfg.theta.size() - 1);
    auto draw = [&] {
      KernelPoint p;
      for (int i = 0; i < n; ++i) p.b.push_back(pos(rng));
      p.u = cfg.u.points[pick(rng)];
      p.theta = cfg.theta.values[pick_t(rng)];
      return p;
    };
    for (int i = 0; i < a.pairs; ++i) {
      KernelPoint p = draw();
      pts.emplace_back(p, draw());
    }
  } else {
    auto need = [n](const std::vector<double>& v, const char* what) {
      if (static_cast<int>(v.size()) != n) throw DimensionMismatch(std::string(what) + " needs " + std::to_string(n) + " values");
    };
    need(a.b1, "--b1");
    need(a.u1, "--u1");
    need(a.b2, "--b2");
    need(a.u2, "--u2");
    pts.push_back({{a.b1, a.u1, a.theta1}, {a.b2, a.u2, a.theta2}});
  }
  json rows = json::array();
  for (const auto& [p1, p2] : pts) {
    const Multivector K = reproducing_kernel(cfg.window, cfg.M, cfg.grid, p1, p2, C);
    rows.push_back({{"p1", kernel_point_json(p1)},
                    {"p2", kernel_point_json(p2)},
                    {"kernel", std::vector<double>(K.coeffs().begin(), K.coeffs().end())},
                    {"modulus", modulus(K)},
                    {"bound_closed_form", kernel_bound_closed_form(cfg.window, p1, p2, C)},
                    {"bound_cauchy_schwarz", kernel_bound_cauchy_schwarz(cfg.window, cfg.M, cfg.grid, p1, p2, C)}});
  }
  write_json({{"C", C}, {"admissibility", stats_json(prof)}, {"M", lct_json(cfg.M)}, {"pairs", rows}}, a.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford linear canonical Stockwell transform toolkit"};
  app.require_subcommand(1);

  RunFlags syn_flags;
  std::string syn_kind = "example1", syn_out;
  SynthesisOptions syn_opt;
  auto* syn = app.add_subcommand("synthesize", "write a test signal to a grid file");
  syn->add_option("kind", syn_kind, "gaussian | gaussian_mixture | chirp | example1")
      ->check(CLI::IsMember({"gaussian", "gaussian_mixture", "chirp", "example1"}));
  add_run_flags(syn, syn_flags, true);
  syn->add_option("--width", syn_opt.width, "Gaussian width");
  syn->add_option("--rate", syn_opt.chirp, "chirp rate");
  syn->add_option("--components", syn_opt.components, "bumps in gaussian_mixture");
  syn->add_option("-o,--output", syn_out, "output grid file")->required();

  RunFlags tr_flags;
  TransformArgs tr;
  auto* trc = app.add_subcommand("transform", "run the transform on a grid file");
  add_run_flags(trc, tr_flags, false);
  trc->add_option("-i,--input", tr.input, "input grid file")->required()->check(CLI::ExistingFile);
  trc->add_option("-o,--output", tr.output, "output volume file")->required();
  trc->add_option("--report", tr.report, "JSON report file ('-' for stdout)");
  trc->add_option("--spectrogram", tr.spectrogram, "CSV of |V| over b for one (u, theta)");
  trc->add_option("--slice-u", tr.slice_u, "u index for --spectrogram");
  trc->add_option("--slice-theta", tr.slice_theta, "theta index for --spectrogram");

  std::string v_suite = "all", v_json;
  bool v_quick = false;
  std::uint64_t v_seed = 0;
  auto* ver = app.add_subcommand("verify", "run property suites; exit code 0 iff every check passes");
  ver->add_option("--suite", v_suite, "suite name")->check(CLI::IsMember(suite_names()));
  ver->add_flag("--quick", v_quick, "smaller grids");
  ver->add_option("--seed", v_seed, "override the default seed");
  ver->add_option("--json", v_json, "write JSON results ('-' for stdout)");

  std::string r_input, r_method = "resolution", r_ref, r_out;
  std::size_t r_theta = 0;
  auto* rec = app.add_subcommand("reconstruct", "invert a volume file");
  rec->add_option("-i,--input", r_input, "input volume file")->required()->check(CLI::ExistingFile);
  rec->add_option("--method", r_method, "marginal | resolution")->check(CLI::IsMember({"marginal", "resolution"}));
  rec->add_option("--theta-index", r_theta, "angle used by the marginal method");
  rec->add_option("--reference", r_ref, "grid file to compare against");
  rec->add_option("-o,--output", r_out, "output grid file")->required();

  RunFlags k_flags;
  KernelArgs ka;
  auto* ker = app.add_subcommand("kernel-dump", "reproducing-kernel values and bounds");
  add_run_flags(ker, k_flags, true);
  ker->add_option("--b1", ka.b1);
  ker->add_option("--u1", ka.u1);
  ker->add_option("--theta1", ka.theta1);
  ker->add_option("--b2", ka.b2);
  ker->add_option("--u2", ka.u2);
  ker->add_option("--theta2", ka.theta2);
  ker->add_option("--pairs", ka.pairs, "random pairs instead of --b1.. --u2");
  ker->add_option("-o,--output", ka.output, "JSON output ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*syn) return cmd_synthesize(syn_kind, syn_flags, syn_opt, syn_out);
    if (*trc) return cmd_transform(tr_flags, tr);
    if (*ver) return cmd_verify(v_suite, v_quick, v_seed, v_json);
    if (*rec) return cmd_reconstruct(r_input, r_method, r_theta, r_ref, r_out);
    if (*ker) return cmd_kernel_dump(k_flags, ka);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
