#include <algorithm>

#include "doctest.h"
#include "fgw/suites.hpp"

using namespace fgw;

namespace {

bool has_passing(const std::vector<NamedCheck>& cs, const std::string& name) {
  return std::any_of(cs.begin(), cs.end(), [&](const NamedCheck& c) { return c.name == name && c.passed; });
}

}  // namespace

TEST_CASE("structural identities") {
  StructAlgebra good = cayley_good_basis(), cd = cayley_cd_basis();
  CHECK(cayley_figure_failures(good).empty());
  CHECK(composition_failures(good).empty());
  CHECK(composition_failures(cd).empty());
  CHECK(symmetric_composition_failures(okubo_algebra()).empty());
  // the Cayley algebra is not a symmetric composition algebra
  CHECK(!symmetric_composition_failures(good).empty());
  CHECK(albert_matrix_model_failures(albert_algebra(good), good).empty());
  CHECK(albert_matrix_model_failures(albert_algebra(cd), cd).empty());
  // the model detects a mismatched coordinate algebra
  CHECK(!albert_matrix_model_failures(albert_algebra(good), cd).empty());
}

TEST_CASE("algebra and grading suites") {
  auto alg = run_suite("algebras");
  for (const auto& c : alg) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  CHECK(has_passing(alg, "okubo-table-matches-figure-2"));
  CHECK(has_passing(alg, "nu-basis-displayed-sign-fails"));
  auto gr = run_suite("gradings");
  for (const auto& c : gr) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  CHECK(has_passing(gr, "universal-group-albert_z33"));
  CHECK_THROWS_AS(run_suite("nope"), std::invalid_argument);
}

TEST_CASE("fast acceptance criteria") {
  for (int n : {1, 2, 10}) {
    CriterionResult r = acceptance_criterion(n);
    INFO(n << ": " << r.detail);
    CHECK(r.passed);
    CHECK(r.seconds < r.limit_seconds);
  }
  CHECK_THROWS(acceptance_criterion(11));
}
