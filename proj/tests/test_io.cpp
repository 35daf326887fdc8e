#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "clcst/cft.hpp"
#include "clcst/config.hpp"
#include "clcst/errors.hpp"
#include "clcst/io.hpp"

using namespace clcst;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "clcst_io_test";
  fs::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("grid round trip keeps values, domain and scale") {
  const GridSpec g = GridSpec::make(3, 2.5, 8);
  GridSignal f = cft_forward(synthesize("gaussian_mixture", g));
  f.set_domain(Domain::frequency, 1.75);
  const std::string p = temp_path("grid.clcg");
  write_grid(f, p);
  const GridSignal r = read_grid(p);
  CHECK(r.spec() == g);
  CHECK(r.domain() == Domain::frequency);
  CHECK(r.scale() == 1.75);
  CHECK(r.raw() == f.raw());
}

TEST_CASE("volume round trip") {
  const GridSpec g = GridSpec::make(2, 3.0, 8);
  const GridSignal f = synthesize("gaussian_mixture", g);
  AnalysisGrid grid{{}, UGrid::tensor({{-1.0, 1.0}, {0.5, 2.0}}), ThetaGrid::make({0.0, 0.5, 1.0})};
  grid.b.indices = {0, 9, 33};
  const Window psi = Window::combine(1.0, Window::gaussian(2, 0.7), 0.5, Window::dog(2, 0.3));
  const CLCSTVolume v = clcst::clcst(f, psi, LCTParams::make(1.0, 2.0, 0.0, 1.0), grid, EvaluationPath::spectral);
  const std::string p = temp_path("vol.clcg");
  write_volume(v, p);
  const CLCSTVolume r = read_volume(p);
  CHECK(r.raw() == v.raw());
  CHECK(r.meta().b.indices == grid.b.indices);
  CHECK(r.meta().u.points == grid.u.points);
  CHECK(r.meta().theta.weight == grid.theta.weight);
  CHECK(r.meta().path == EvaluationPath::spectral);
  CHECK(r.meta().M.B == 2.0);
  const double y[2] = {0.3, 0.1};
  CHECK(r.meta().window(y) == doctest::Approx(psi(y)));

  const std::string csv = temp_path("slice.csv");
  write_slice_csv(v, 1, 2, csv);
  std::ifstream is(csv);
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 4);
  CHECK_THROWS_AS(write_slice_csv(v, 4, 0, csv), DomainError);
}

TEST_CASE("malformed files are rejected") {
  const std::string p = temp_path("bad.clcg");
  {
    std::ofstream os(p, std::ios::binary);
    os << "NOPE and some bytes";
  }
  CHECK_THROWS_AS(read_grid(p), FormatError);

  const GridSpec g = GridSpec::make(2, 3.0, 8);
  const std::string q = temp_path("mismatch.clcg");
  write_grid(GridSignal(g), q);
  {
    std::ofstream os(q + ".json");
    os << nlohmann::json{{"kind", "grid"}, {"grid", grid_spec_json(GridSpec::make(2, 3.0, 16))}}.dump();
  }
  CHECK_THROWS_AS(read_grid(q), FormatError);
  CHECK_THROWS_AS(read_volume(q), FormatError);
  CHECK_THROWS_AS(read_grid(temp_path("missing.clcg")), FormatError);
}

TEST_CASE("LCT parameters accept objects and arrays") {
  const LCTParams a = lct_from_json(nlohmann::json::array({1.0, 2.0, 0.0, 1.0}));
  const LCTParams b = lct_from_json(lct_json(a));
  CHECK(b.A == 1.0);
  CHECK(b.B == 2.0);
  CHECK_THROWS_AS(lct_from_json(nlohmann::json::array({1.0, 2.0})), FormatError);
  const GridSpec g = GridSpec::make(3, 1.5, 6);
  CHECK(grid_spec_from_json(grid_spec_json(g)) == g);
}
