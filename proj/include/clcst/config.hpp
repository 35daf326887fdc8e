#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "clcst/clcst.hpp"

namespace clcst {

/// Everything a transform run needs; round-trips through JSON.
struct RunConfig {
  GridSpec grid = GridSpec::make(2, 6.0, 64);
  LCTParams M = LCTParams::make(1.0, 2.0, 0.0, 1.0);
  Window window = Window::gaussian(2, 1.0);
  UGrid u = UGrid::default_for(grid);
  ThetaGrid theta = ThetaGrid::default_grid();
  BSelection b;
  EvaluationPath path = EvaluationPath::three_step;
  int threads = 0;
  std::uint64_t seed = 1;

  static RunConfig defaults(int n);
  /// Missing keys keep their defaults for the dimension given by "n".
  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  AnalysisGrid analysis_grid() const { return {b, u, theta}; }
};

/// Parses a u-grid description: "default", "lattice", {"max_bin": k},
/// {"axes": [[...], ...]} or {"points": [[...]], "weight": w}.
UGrid parse_u_grid(const nlohmann::json& j, const GridSpec& spec);

struct SynthesisOptions {
  double width = 1.0;
  double chirp = 0.0;
  int components = 3;
  std::uint64_t seed = 1;
};

/**
 * Test signals:
 *   gaussian          exp(-|x|^2 / (2 width^2)), scalar
 *   chirp             exp(I chirp |x|^2), unit modulus everywhere
 *   gaussian_mixture  sum of `components` Gaussian bumps with random centers,
 *                     widths and multivector amplitudes
 *   example1          exp(-|x|^2), the worked-example input
 */
GridSignal synthesize(const std::string& kind, const GridSpec& spec, const SynthesisOptions& opt = {});

}  // namespace clcst
