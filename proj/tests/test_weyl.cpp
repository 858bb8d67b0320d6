#include <algorithm>

#include "doctest.h"
#include "fgw/weyl.hpp"

using namespace fgw;

TEST_CASE("closure") {
  CHECK(closure(5, {}).order() == 1);
  GradedContext z25 = graded_context(builtin_grading("albert_z25"));
  StructAlgebra c = cayley_cd_basis();
  Perm p = graded_automorphism_check(z25, psi_123(z25.grading.algebra, c)).perm;
  PermGroup g3 = closure(z25.supp.size(), {p});
  CHECK(g3.order() == 3);
  CHECK(is_group(g3));
  GradedContext cc = graded_context(builtin_grading("cartan_cayley"));
  std::vector<Perm> gens;
  for (const auto& a : lower_bound_generators(cc.grading)) gens.push_back(graded_automorphism_check(cc, a).perm);
  PermGroup g12 = closure(cc.supp.size(), gens);
  CHECK(g12.order() == 12);
  CHECK(is_group(g12));
  CHECK(std::is_sorted(g12.elements.begin(), g12.elements.end()));
  CHECK_THROWS_AS(closure(cc.supp.size(), gens, 5), BoundExceeded);
  // deterministic
  CHECK(closure(cc.supp.size(), gens).elements == g12.elements);
}

TEST_CASE("support-preserving upper bounds") {
  GradedContext cc = graded_context(builtin_grading("cartan_cayley"));
  PermGroup u = support_preserving_upper_bound(cc);
  CHECK(u.order() == 12);
  CHECK(is_group(u));
  CHECK(support_preserving_upper_bound(graded_context(builtin_grading("cd_cayley"))).order() == 168);
  GradedContext zz = graded_context(builtin_grading("albert_zz23"));
  PermGroup uz = support_preserving_upper_bound(zz);
  CHECK(uz.order() == 2688);
  CHECK(support_preserving_upper_bound_serial(zz).elements == uz.elements);
  GradedContext ac = graded_context(builtin_grading("albert_cartan"));
  CHECK(support_preserving_upper_bound_serial(ac).elements == support_preserving_upper_bound(ac).elements);
  UpperBoundOptions small;
  small.bound = 10;
  CHECK_THROWS_AS(support_preserving_upper_bound(zz, small), BoundExceeded);
  // on Z_3^2 alone the support data cannot see beta: GL_2(3) versus Sp
  GradedContext m3 = graded_context(builtin_grading("gamma_M", {{3}, 1}));
  UpperBoundOptions plain;
  plain.refine = false;
  CHECK(support_preserving_upper_bound(m3, plain).order() == 48);
  CHECK(support_preserving_upper_bound(m3).order() == 24);
}

TEST_CASE("Z_2^5 counts") {
  CHECK(z25_structured_count() == 64512);
  CHECK(z25_exhaustive_count() == 64512);
}

TEST_CASE("root systems") {
  RootSystem g2 = phi_root_system(builtin_grading("cartan_cayley"));
  CHECK(g2.roots.size() == 12);
  CHECK(g2.short_count == 6);
  RootSystem f4 = phi_root_system(builtin_grading("albert_cartan"));
  CHECK(f4.roots.size() == 48);
  CHECK(f4.short_count == 24);
  CHECK(std::count(f4.is_short.begin(), f4.is_short.end(), true) == 24);
  CHECK(f4.orthogonal_subsets.size() == 3);
  CHECK(f4.subsets_are_iota_supports);
  for (const auto& r : f4.roots) {
    AbElem n = r;
    for (auto& x : n.coords) x = -x;
    CHECK(std::binary_search(f4.roots.begin(), f4.roots.end(), n));
  }
  CHECK_THROWS_AS(phi_root_system(builtin_grading("cd_cayley")), MorphismError);
}

TEST_CASE("weyl_group on the octonions") {
  WeylReport r = weyl_group("cartan_cayley");
  CHECK(r.lower_order == 12);
  CHECK(r.matched);
  CHECK(r.all_checks_pass());
  r = weyl_group("cd_cayley");
  CHECK(r.lower_order == 168);
  CHECK(r.matched);
}

TEST_CASE("matrix theorem") {
  WeylReport r = weyl_matrix_theorem_check({2}, 1);
  CHECK(r.lower_order == 6);
  CHECK(r.matched);
  CHECK(r.all_checks_pass());
  r = weyl_matrix_theorem_check({2}, 2);
  CHECK(r.lower_order == 48);
  CHECK(r.matched);
  CHECK(r.all_checks_pass());
  r = weyl_matrix_theorem_check({}, 2);
  CHECK(r.lower_order == 2);
  CHECK(r.matched);
}

TEST_CASE("stabilizer and diagonal group") {
  PauliAlgebra d = pauli_matrix_algebra({2, 2});
  GradedContext div = graded_context(grading_make(d.algebra, d.group, d.group.elements(), "division"));
  for (std::size_t t = 0; t < d.algebra.dim(); ++t) {
    StabDiag s = stab_diag_membership(div, ad_homogeneous(d, t));
    CHECK(s.in_stab);
    CHECK(s.in_diag);
  }
  GradedContext z25 = graded_context(builtin_grading("albert_z25"));
  const StructAlgebra& a = z25.grading.algebra;
  StabDiag p = stab_diag_membership(z25, psi_123(a, cayley_cd_basis()));
  CHECK(!p.in_stab);
  CHECK(!p.in_diag);
  StabDiag id = stab_diag_membership(z25, automorphism_check(a, Mat::identity(27, a.conductor())));
  CHECK(id.in_stab);
  CHECK(id.in_diag);
  // phi_1 of the Z_3^3 grading is diagonal
  Z33Data z = albert_z33_data();
  StabDiag p1 = stab_diag_membership(graded_context(z.grading), z33_phi(z, 1));
  CHECK(p1.in_diag);
}

TEST_CASE("report JSON") {
  WeylReport r = weyl_group("cartan_cayley");
  std::string j = weyl_report_json(r);
  WeylReport back = weyl_report_from_json(j);
  CHECK(back.lower_order == r.lower_order);
  CHECK(back.generators == r.generators);
  CHECK(back.checks.size() == r.checks.size());
  CHECK(weyl_report_json(back) == j);
  CHECK(weyl_report_json(weyl_group("cartan_cayley"), false) == weyl_report_json(r, false));
  CHECK(weyl_report_json(r, false).find("metadata") == std::string::npos);
}

TEST_CASE("modes") {
  CHECK(!parse_mode("full").samples);
  CHECK(*parse_mode("sampled:200").samples == 200);
  CHECK_THROWS(parse_mode("sampled:0"));
  CHECK_THROWS(parse_mode("fast"));
}
