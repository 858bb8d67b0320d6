#include <algorithm>

#include "doctest.h"
#include "fgw/gradings.hpp"

using namespace fgw;

namespace {

const int N = 24;

std::size_t count_dim(const SupportTable& t, std::size_t d) {
  return static_cast<std::size_t>(
      std::count_if(t.entries.begin(), t.entries.end(), [&](const SupportEntry& e) { return e.dim() == d; }));
}

}  // namespace

TEST_CASE("grading_make") {
  StructAlgebra c = cayley_good_basis();
  CHECK_NOTHROW(grading_make(c, AbGroup(0, {}), std::vector<AbElem>(8, AbElem{{}})));
  Grading g = builtin_grading("cartan_cayley");
  auto deg = g.degree;
  deg[c.index_of("u1")] = AbElem{{-1, 0}};
  try {
    grading_make(c, AbGroup(2, {}), deg);
    FAIL("flipped u1 accepted");
  } catch (const GradingError& e) {
    CHECK(std::string(e.what()).find("u1 * u2") != std::string::npos);
  }
  CHECK_THROWS_AS(grading_make(c, AbGroup(2, {}), std::vector<AbElem>(7, AbElem{{0, 0}})), GradingError);
}

TEST_CASE("supports") {
  SupportTable t = support(builtin_grading("cartan_cayley"));
  CHECK(t.size() == 7);
  CHECK(t.entries[*t.find(AbElem{{0, 0}})].dim() == 2);
  CHECK(count_dim(t, 1) == 6);
  for (std::vector<std::int64_t> e : std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}, {-1, -1}}) {
    CHECK(t.find(AbElem{e}));
    CHECK(t.find(AbElem{{-e[0], -e[1]}}));
  }
  t = support(builtin_grading("cd_cayley"));
  CHECK(t.size() == 8);
  CHECK(count_dim(t, 1) == 8);
  t = support(builtin_grading("albert_cartan"));
  CHECK(t.size() == 25);
  CHECK(t.entries[*t.find(AbElem{{0, 0, 0, 0}})].dim() == 3);
  CHECK(count_dim(t, 1) == 24);
  t = support(builtin_grading("albert_z25"));
  CHECK(t.size() == 25);
  t = support(builtin_grading("albert_zz23"));
  CHECK(t.size() == 26);
  CHECK(t.entries[*t.find(AbElem{{0, 0, 0, 0}})].dim() == 2);
  t = support(builtin_grading("albert_z33"));
  CHECK(t.size() == 27);
  CHECK(count_dim(t, 1) == 27);
  CHECK(support_report(builtin_grading("cartan_cayley")).find("(0,0)\t2\te1,e2") != std::string::npos);
}

TEST_CASE("builtin degrees") {
  Grading cd = builtin_grading("cd_cayley");
  CHECK(cd.degree[cd.algebra.index_of("w1w2")] == AbElem{{1, 1, 0}});
  Grading z25 = builtin_grading("albert_z25");
  CHECK(z25.degree[z25.algebra.index_of("i3(w1)")] == AbElem{{1, 1, 1, 0, 0}});
  CHECK(z25.degree[z25.algebra.index_of("i1(1)")] == AbElem{{1, 0, 0, 0, 0}});
  CHECK(z25.degree[z25.algebra.index_of("i2(1)")] == AbElem{{0, 1, 0, 0, 0}});
  Grading zz = builtin_grading("albert_zz23");
  CHECK(zz.degree[zz.algebra.index_of("S+")] == AbElem{{2, 0, 0, 0}});
  CHECK(zz.degree[zz.algebra.index_of("nu-(w1w3)")] == AbElem{{-1, 1, 0, 1}});
  Grading ac = builtin_grading("albert_cartan");
  // eps_i are the degrees of iota_1(e1), iota_1(u_i)
  CHECK(ac.degree[ac.algebra.index_of("i1(u2)")] == AbElem{{-1, -1, 0, 1}});
  CHECK(ac.degree[ac.algebra.index_of("i1(u3)")] == AbElem{{0, -1, -1, -1}});
  Grading m = builtin_grading("gamma_M", {{2}, 2});
  CHECK(m.algebra.dim() == 16);
  CHECK(m.group.to_string() == "Z^2 x Z_2^2");
}

TEST_CASE("universal groups") {
  for (const auto& name : builtin_grading_names()) {
    if (name == "gamma_M") continue;
    CAPTURE(name);
    UniversalGroup u = universal_abelian_group(builtin_grading(name));
    CHECK(u.group.isomorphic(declared_universal_group(name)));
  }
  for (GradingParams p : std::vector<GradingParams>{{{2}, 1}, {{2}, 2}, {{3}, 1}, {{2}, 3}, {{2, 2}, 1}, {{4}, 2}}) {
    CAPTURE(p.k);
    UniversalGroup u = universal_abelian_group(builtin_grading("gamma_M", p));
    CHECK(u.group.isomorphic(declared_universal_group("gamma_M", p)));
  }
  CHECK(universal_abelian_group(builtin_grading("gamma_M", {{2}, 2})).group.to_string() == "Z x Z_2^2");
}

TEST_CASE("induce") {
  Grading g = builtin_grading("cartan_cayley");
  Grading same = induce(g, AbHom::identity(g.group));
  CHECK(same.degree == g.degree);
  AbGroup triv(0, {});
  Grading t = induce(g, AbHom(g.group, triv, IntMat(0, 2)));
  CHECK(support(t).size() == 1);
  AbGroup z22(0, {2, 2});
  Grading m2 = induce(g, AbHom(g.group, z22, IntMat::identity(2)));
  CHECK(support(m2).size() == 4);
  // coarsening never needs more generators than the fine universal group
  UniversalGroup uf = universal_abelian_group(g), uc = universal_abelian_group(m2);
  CHECK(uc.group.rank() <= uf.group.rank());
}

TEST_CASE("trace orthogonality") {
  for (const auto& name : builtin_grading_names()) {
    CAPTURE(name);
    CHECK(trace_orthogonality_failures(builtin_grading(name)).empty());
  }
  CHECK(trace_orthogonality_failures(builtin_grading("gamma_M", {{3}, 2})).empty());
}

TEST_CASE("Z_3^3 grading") {
  Z33Data z = albert_z33_data();
  CHECK(z.okubo_degree[0] == AbElem{{1, 0}});
  CHECK(z.okubo_degree[2] == AbElem{{0, 1}});
  // derived table: e2 (2,0), u2 (1,1), u3 (2,1), v1 (0,2), v2 (2,2), v3 (1,2)
  CHECK(z.okubo_degree[1] == AbElem{{2, 0}});
  CHECK(z.okubo_degree[3] == AbElem{{1, 1}});
  CHECK(z.okubo_degree[4] == AbElem{{2, 1}});
  CHECK(z.okubo_degree[5] == AbElem{{0, 2}});
  CHECK(z.okubo_degree[6] == AbElem{{2, 2}});
  CHECK(z.okubo_degree[7] == AbElem{{1, 2}});
  const StructAlgebra& a = z.grading.algebra;
  // X1 = (1/2) sum itilde_i(e1)
  Vec x1 = z.grading.to_base.column(z.X1);
  for (std::size_t i = 1; i <= 3; ++i) CHECK(x1[albert_iota(i, 0)] == CycScalar(Rational(1, 2), N));
  CHECK(nonzero_indices(x1).size() == 3);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    CAPTURE(a.labels()[i]);
    Vec x = a.basis(i);
    CHECK(a.mul(a.mul(x, x), x) == a.unit());  // cube-normalized, invertible
  }
}
