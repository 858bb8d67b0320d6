// Timings of the parallel kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <functional>

#include "fgw/weyl.hpp"

using namespace fgw;

namespace {

double time_it(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::printf("kernel\tgrading\tserial_s\tparallel_s\tresult\n");
  for (const char* name : {"albert_cartan", "albert_zz23", "cd_cayley"}) {
    GradedContext ctx = graded_context(builtin_grading(name));
    std::size_t a = 0, b = 0;
    double ts = time_it([&] { a = support_preserving_upper_bound_serial(ctx).order(); });
    double tp = time_it([&] { b = support_preserving_upper_bound(ctx).order(); });
    std::printf("upper_bound\t%s\t%.3f\t%.3f\t%zu%s\n", name, ts, tp, b, a == b ? "" : " MISMATCH");
  }
  {
    GradedContext ctx = graded_context(builtin_grading("albert_zz23"));
    std::vector<Perm> gens;
    for (const auto& g : lower_bound_generators(ctx.grading)) gens.push_back(graded_automorphism_check(ctx, g).perm);
    std::size_t n = 0;
    double t = time_it([&] { n = closure(ctx.supp.size(), gens).order(); });
    std::printf("closure\talbert_zz23\t%.3f\t-\t%zu\n", t, n);
  }
  {
    WeylStrategy s;
    s.samples = 200;
    std::uint64_t n = 0;
    double t = time_it([&] { n = weyl_group("albert_z33", {}, s).lower_order; });
    std::printf("realize_sampled200\talbert_z33\t-\t%.3f\t%llu\n", t, static_cast<unsigned long long>(n));
  }
  return 0;
}
