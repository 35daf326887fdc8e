// Runs every acceptance criterion at its stated tolerance and prints one line each.
// Usage: acceptance [criterion ids...] [--verbose]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>

#include "clcst/verify.hpp"

int main(int argc, char** argv) {
  using namespace clcst;
  std::set<int> only;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--verbose") == 0) {
      verbose = true;
    } else {
      only.insert(std::atoi(argv[i]));
    }
  }
  using Fn = CriterionReport (*)(const VerifyOptions&);
  const Fn all[] = {verify_algebra,       verify_cft,      verify_convolution, verify_clct,
                    verify_paths,         verify_covariance, verify_orthogonality, verify_marginal,
                    verify_resolution,    verify_kernel,   verify_example,     verify_performance};
  int failed = 0;
  for (int id = 1; id <= 12; ++id) {
    if (!only.empty() && !only.count(id)) continue;
    const CriterionReport r = all[id - 1](VerifyOptions{});
    std::printf("[%s] criterion %2d: %s (%.1f s)\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
    for (const auto& c : r.checks) {
      if (verbose || !c.pass) {
        std::printf("         %s %s: %.3e (tolerance %.1e)%s%s\n", c.pass ? "ok  " : "FAIL", c.name.c_str(), c.value,
                    c.tolerance, c.note.empty() ? "" : "; ", c.note.c_str());
      }
    }
    std::fflush(stdout);
    if (!r.pass()) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
