#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace clcst {

/// One measured quantity against its tolerance.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  /// Smaller grids and fewer draws; for smoke runs, not for acceptance.
  bool quick = false;
};

CriterionReport verify_algebra(const VerifyOptions& opt = {});          // 1
CriterionReport verify_cft(const VerifyOptions& opt = {});              // 2
CriterionReport verify_convolution(const VerifyOptions& opt = {});      // 3
CriterionReport verify_clct(const VerifyOptions& opt = {});             // 4
CriterionReport verify_paths(const VerifyOptions& opt = {});            // 5
CriterionReport verify_covariance(const VerifyOptions& opt = {});       // 6
CriterionReport verify_orthogonality(const VerifyOptions& opt = {});    // 7
CriterionReport verify_marginal(const VerifyOptions& opt = {});         // 8
CriterionReport verify_resolution(const VerifyOptions& opt = {});       // 9
CriterionReport verify_kernel(const VerifyOptions& opt = {});           // 10
CriterionReport verify_example(const VerifyOptions& opt = {});          // 11
CriterionReport verify_performance(const VerifyOptions& opt = {});      // 12

/// Suite names accepted by run_suite: algebra, cft, clct, cst, clcst,
/// covariance, orthogonality, reconstruction, kernel, example1, performance, all.
std::vector<std::string> suite_names();
std::vector<CriterionReport> run_suite(const std::string& name, const VerifyOptions& opt = {});

nlohmann::json to_json(const CriterionReport& r);

}  // namespace clcst
