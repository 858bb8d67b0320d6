#include "doctest.h"
#include "fgw/io.hpp"

using namespace fgw;

namespace {

void check_algebra_round_trip(const StructAlgebra& a) {
  Json j = to_json(a);
  StructAlgebra b = algebra_from_json(Json::parse(dump(j)));
  CHECK(b.labels() == a.labels());
  CHECK(b.conductor() == a.conductor());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) CHECK(b.product(i, k) == a.product(i, k));
  CHECK(b.has_unit() == a.has_unit());
  if (a.has_unit()) CHECK(b.unit() == a.unit());
  CHECK(b.has_norm() == a.has_norm());
  if (a.has_norm()) CHECK(b.norm_polar() == a.norm_polar());
  CHECK(dump(to_json(b)) == dump(j));
}

}  // namespace

TEST_CASE("scalars and groups") {
  for (const auto& s : {CycScalar(Rational(-7, 3), 24), CycScalar::root_of_unity(24, 5), CycScalar::sqrt2(24),
                        CycScalar::zero(12), CycScalar(Rational(1, 8), 120)}) {
    CHECK(scalar_from_json(Json::parse(dump(to_json(s)))) == s);
    CHECK(scalar_from_json(to_json(s)).conductor() == s.conductor());
  }
  AbGroup g(1, {2, 4}, TorsionOrder::SymplecticPairs);
  AbGroup h = ab_group_from_json(Json::parse(dump(to_json(g))));
  CHECK(h == g);
  CHECK(h.torsion_order() == g.torsion_order());
  CHECK(to_json(g)["free_rank"] == 1);
  CHECK(ab_elem_from_json(to_json(AbElem{{-3, 1, 2}})) == AbElem{{-3, 1, 2}});
  CHECK_THROWS_AS(scalar_from_json(Json(3)), FormatError);
  CHECK_THROWS_AS(ab_group_from_json(Json::parse(R"({"moduli": [2]})")), FormatError);
}

TEST_CASE("matrices") {
  Mat m = cayley_tau(cayley_good_basis());
  CHECK(mat_from_json(Json::parse(dump(to_json(m)))) == m);
  Json bad = to_json(m);
  bad["entries"].erase(0);
  CHECK_THROWS_AS(mat_from_json(bad), FormatError);
}

TEST_CASE("algebra round trips") {
  check_algebra_round_trip(cayley_good_basis());
  check_algebra_round_trip(cayley_cd_basis());
  check_algebra_round_trip(okubo_algebra());
  check_algebra_round_trip(albert_algebra(cayley_good_basis()));
  check_algebra_round_trip(pauli_matrix_algebra({2, 2}).algebra);
  check_algebra_round_trip(pauli_matrix_algebra({3}).algebra);
}

TEST_CASE("invalid algebra is rejected") {
  Json j = to_json(cayley_good_basis());
  // break the unit: e1 * e1 = 0
  for (auto& row : j["table"])
    if (row[0] == 0 && row[1] == 0) row[2] = Json::array();
  CHECK_THROWS_AS(algebra_from_json(j), AlgebraError);
}

TEST_CASE("grading round trips") {
  for (const auto& name : builtin_grading_names()) {
    Grading g = builtin_grading(name);
    Json j = to_json(g);
    Grading h = grading_from_json(Json::parse(dump(j)));
    CHECK(h.name == g.name);
    CHECK(h.group == g.group);
    CHECK(h.degree == g.degree);
    CHECK(h.base.has_value() == g.base.has_value());
    if (g.base) CHECK(h.to_base == g.to_base);
    CHECK(dump(to_json(h)) == dump(j));
  }
  Json j = to_json(builtin_grading("cartan_cayley"));
  j["degrees"][0] = Json::array({5, 5});
  CHECK_THROWS_AS(grading_from_json(j), GradingError);
}

TEST_CASE("automorphism round trips and recertification") {
  StructAlgebra c = cayley_good_basis();
  AlgAutomorphism t = tau_cayley(c);
  Json j = to_json(t);
  AlgAutomorphism back = automorphism_from_json(Json::parse(dump(j)), c);
  CHECK(back.matrix == t.matrix);
  CHECK(back.certified);
  CHECK(dump(to_json(back)) == dump(j));
  Mat bad = t.matrix;
  bad(2, 3) = bad(2, 3) + CycScalar(Rational(1), 24);
  Json jb = to_json(AlgAutomorphism{c.name(), bad, false});
  CHECK_THROWS_AS(automorphism_from_json(jb, c), MorphismError);
  CHECK_THROWS_AS(automorphism_from_json(j, okubo_algebra()), FormatError);
}
