// Runs the acceptance criteria and prints one line per criterion.
// Usage: acceptance [--jobs N] [criterion ...]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "fgw/suites.hpp"

int main(int argc, char** argv) {
  int jobs = 0;
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc)
      jobs = std::atoi(argv[++i]);
    else
      which.push_back(std::atoi(argv[i]));
  }
  if (which.empty())
    for (int n = 1; n <= 10; ++n) which.push_back(n);
  int failed = 0;
  for (int n : which) {
    fgw::CriterionResult r = fgw::acceptance_criterion(n, jobs);
    std::printf("criterion %d: %s  %.2f s (limit %.0f s)  %s%s%s\n", r.number, r.passed ? "pass" : "FAIL", r.seconds,
                r.limit_seconds, r.title.c_str(), r.detail.empty() ? "" : "  | ", r.detail.c_str());
    std::fflush(stdout);
    failed += r.passed ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", which.size(), failed);
  return failed ? 1 : 0;
}
