#include <random>

#include "doctest.h"
#include "fgw/morphisms.hpp"

using namespace fgw;

namespace {

const int N = 24;

CycScalar q(long a, long b = 1) { return CycScalar(Rational(a, b), N); }

std::int64_t hom_order(const AbHom& h, std::int64_t bound = 100) {
  AbHom p = h;
  AbHom id = AbHom::identity(h.source());
  for (std::int64_t k = 1; k <= bound; ++k) {
    if (p.matrix() == id.matrix()) return k;
    p = h.compose(p);
  }
  return 0;
}

Vec albert_vec(const StructAlgebra& a, std::size_t i, const Vec& x) {
  Vec out = a.zero();
  for (std::size_t k = 0; k < 8; ++k) out[albert_iota(i, k)] = x[k];
  return out;
}

}  // namespace

TEST_CASE("certification") {
  StructAlgebra c = cayley_good_basis();
  CHECK(automorphism_check(c, Mat::identity(8, N)).certified);
  CHECK(tau_cayley(c).certified);
  Mat m = Mat::identity(8, N);
  m(c.index_of("u1"), c.index_of("u1")) = q(2);
  auto f = automorphism_failure(c, m);
  REQUIRE(f);
  CHECK(f->find("u1") != std::string::npos);
  CHECK_THROWS_AS(automorphism_check(c, m), MorphismError);
  CHECK(compose(tau_cayley(c), compose(tau_cayley(c), tau_cayley(c))).matrix == Mat::identity(8, N));
}

TEST_CASE("Cartan grading on the octonions") {
  GradedContext ctx = graded_context(builtin_grading("cartan_cayley"));
  const StructAlgebra& c = ctx.grading.algebra;
  SupportPerm t = graded_automorphism_check(ctx, tau_cayley(c));
  CHECK(hom_order(t.induced) == 3);
  // tau cycles eps_1 -> eps_2 -> eps_3
  std::vector<std::string> us{"u1", "u2", "u3"};
  for (std::size_t i = 0; i < 3; ++i) {
    auto s = *ctx.supp.find(ctx.grading.degree[c.index_of(us[i])]);
    auto d = *ctx.supp.find(ctx.grading.degree[c.index_of(us[(i + 1) % 3])]);
    CHECK(t.perm[s] == d);
  }
  SupportPerm p1 = graded_automorphism_check(ctx, phi1_cayley(c));
  for (std::size_t i = 0; i < 2; ++i) {
    auto g = ctx.univ.group.generator(i);
    CHECK(p1.induced.apply(g) == ctx.univ.group.neg(g));
  }
  CHECK(hom_order(graded_automorphism_check(ctx, phi2_cayley(c)).induced) == 2);
  // a map mixing e1 and u1 is not graded
  Mat m = Mat::identity(8, N);
  m(c.index_of("u1"), c.index_of("e1")) = q(1);
  CHECK_THROWS_AS(graded_automorphism_check(ctx, AlgAutomorphism{c.name(), m, true}), std::exception);
}

TEST_CASE("Albert automorphisms") {
  StructAlgebra c = cayley_good_basis();
  StructAlgebra a = albert_algebra(c);
  AlgAutomorphism p = psi_123(a, c);
  CHECK(compose(p, compose(p, p)).matrix == Mat::identity(27, N));
  CHECK(psi_23(a, c).certified);
  AlgAutomorphism p12 = psi_12(a, c);
  CHECK(compose(p12, p12).matrix == Mat::identity(27, N));
  CHECK(tau_albert(a, c).certified);

  // the spin example: x = (e1+e2+u1+v1)/sqrt2, y = i(e1-e2+u1-v1)/sqrt2
  CycScalar r = CycScalar::sqrt2(N).inverse();
  CycScalar im = CycScalar::root_of_unity(N, N / 4);
  Vec x = r * (c.basis("e1") + c.basis("e2") + c.basis("u1") + c.basis("v1"));
  Vec y = (im * r) * (c.basis("e1") - c.basis("e2") + c.basis("u1") - c.basis("v1"));
  AlgAutomorphism s = spin_automorphism(a, c, x, y);
  auto at = [&](std::size_t i, const char* l) { return albert_vec(a, i, c.basis(l)); };
  CHECK(s.apply(at(2, "e1")) == im * at(2, "e1"));
  CHECK(s.apply(at(2, "e2")) == -(im * at(2, "e2")));
  CHECK(s.apply(at(3, "e1")) == -(im * at(3, "v1")));
  CHECK(s.apply(at(3, "e2")) == im * at(3, "u1"));
  CHECK(spin_chi(c, x, y).apply(c.basis("e1")) == -c.basis("u1"));

  GradedContext ctx = graded_context(builtin_grading("albert_cartan"));
  CHECK_NOTHROW(graded_automorphism_check(ctx, p));
  SupportPerm sp = graded_automorphism_check(ctx, s);
  // psi_c swaps eps_0 = deg iota_1(e1) and eps_1 = deg iota_1(u1)
  auto img = [&](const char* l) {
    return ctx.grading.degree[a.index_of(l)];
  };
  auto e0 = *ctx.supp.find(img("i1(e1)")), e1 = *ctx.supp.find(img("i1(u1)"));
  CHECK(sp.perm[e0] == e1);
  CHECK(sp.perm[e1] == e0);
}

TEST_CASE("reflections") {
  StructAlgebra c = cayley_good_basis();
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  Vec v = c.basis("e1") + c.basis("e2");
  Mat s = reflection(c, v);
  for (int t = 0; t < 50; ++t) {
    Vec z = c.zero();
    for (auto& e : z) e = q(d(rng));
    CHECK(c.norm(s.apply(z)) == c.norm(z));
  }
  CHECK(s.apply(v) == -v);
  CHECK_THROWS_AS(reflection(c, c.basis("u1")), MorphismError);
}

TEST_CASE("Z x Z_2^3 automorphisms") {
  Grading zz = builtin_grading("albert_zz23");
  AlgAutomorphism p0 = psi0_zz23(zz);
  const StructAlgebra& a = zz.algebra;
  CHECK(p0.apply(a.basis("nu(w1)")) == -a.basis("nu(w1)"));
  CHECK(p0.apply(a.basis("S+")) == a.basis("S-"));
  CHECK(p0.apply(a.basis("nu+(w2)")) == a.basis("nu-(w2)"));
  GradedContext ctx = graded_context(zz);
  CHECK(hom_order(graded_automorphism_check(ctx, p0).induced) == 2);
}

TEST_CASE("Z_3^3 automorphisms") {
  Z33Data z = albert_z33_data();
  GradedContext ctx = graded_context(z.grading);
  for (int j = 1; j <= 3; ++j) {
    CAPTURE(j);
    AlgAutomorphism p = z33_phi(z, j);
    CHECK(compose(p, compose(p, p)).matrix == Mat::identity(27, N));
    CHECK_NOTHROW(graded_automorphism_check(ctx, p));
  }
  // phi_3 cycles E_i, so it fixes E(k) up to a cube root of unity
  AlgAutomorphism phi3 = z33_phi(z, 3);
  Mat base = z.grading.to_base * phi3.matrix * z.grading.from_base;
  for (std::size_t i = 1; i <= 3; ++i) {
    Vec e = z.albert.basis(albert_E(i));
    CHECK(base.apply(e) == z.albert.basis(albert_E(i % 3 + 1)));
  }

  const StructAlgebra& a = z.grading.algebra;
  CycScalar w = CycScalar::root_of_unity(N, N / 3);
  Vec x1 = a.basis(z.X1), x2 = a.basis(z.X2), x3 = a.basis(z.X3);
  auto plus = associativity_defect(a, x1, x2, x3);
  auto minus = associativity_defect(a, x2, x1, x3);
  REQUIRE(plus);
  REQUIRE(minus);
  CHECK(*plus == w);
  CHECK(*minus == w.inverse());
  CHECK(*associativity_defect(a, x3, x3, x3) == q(1));

  AbGroup g = z.grading.group;
  CHECK(realize_z33(z, AbHom::identity(g)));
  IntMat cyc(3, 3);
  cyc(1, 0) = 1;
  cyc(2, 1) = 1;
  cyc(0, 2) = 1;
  CHECK(realize_z33(z, AbHom(g, g, cyc)));
  IntMat sw(3, 3);
  sw(1, 0) = 1;
  sw(0, 1) = 1;
  sw(2, 2) = 1;
  Extension bad = realize_z33(z, AbHom(g, g, sw));
  CHECK(!bad);
  CHECK(!bad.failure.empty());
}

TEST_CASE("extension from generators") {
  Grading cd = builtin_grading("cd_cayley");
  const StructAlgebra& c = cd.algebra;
  std::vector<Vec> gens{c.basis("w1"), c.basis("w2"), c.basis("w3")};
  Extension id = extend_from_generators(c, gens, gens);
  REQUIRE(id);
  CHECK(id.aut->matrix == Mat::identity(8, N));
  Extension e = extend_from_generators(c, gens, {c.basis("w1"), c.basis("w2"), c.basis("w1")});
  CHECK(!e);
  Extension ng = extend_from_generators(c, {c.basis("w1"), c.basis("w2")}, {c.basis("w1"), c.basis("w2")});
  CHECK(!ng);
  CHECK(ng.failure == "not generating");

  AbGroup g = cd.group;
  std::size_t count = 0, reverse_same = 0;
  for (const AbHom& mu : enumerate_automorphisms(g)) {
    Extension ex = octonion_aut_from_group_aut(cd, mu);
    if (ex) ++count;
    if (count <= 10) {
      std::vector<Vec> imgs;
      for (const auto& v : gens) imgs.push_back(ex.aut->apply(v));
      Extension r = extend_from_generators(c, gens, imgs, WordOrder::Reverse);
      if (r && r.aut->matrix == ex.aut->matrix) ++reverse_same;
    }
  }
  CHECK(count == 168);
  CHECK(reverse_same == 10);
}

TEST_CASE("matrix algebra automorphisms") {
  PauliAlgebra d = pauli_matrix_algebra({2, 2});
  const AbGroup& t = d.group;
  // Ad(X_t) acts on X_u by beta(t, u)
  for (std::size_t ti = 0; ti < d.algebra.dim(); ++ti) {
    AlgAutomorphism ad = ad_homogeneous(d, ti);
    for (std::size_t u = 0; u < d.algebra.dim(); ++u)
      CHECK(ad.apply(d.algebra.basis(u)) ==
            d.beta.value(t.from_index(ti), t.from_index(u), N) * d.algebra.basis(u));
  }
  // swap a1 <-> b1 on Z_2^2 (coordinates a1, b1)
  PauliAlgebra d1 = pauli_matrix_algebra({2});
  const AbGroup& t1 = d1.group;
  IntMat sw(2, 2);
  sw(0, 1) = 1;
  sw(1, 0) = 1;
  AlgAutomorphism s = division_aut_from_symplectic(d1, AbHom(t1, t1, sw));
  for (std::size_t u = 0; u < d1.algebra.dim(); ++u) {
    AbElem target = AbHom(t1, t1, sw).apply(t1.from_index(u));
    auto nz = nonzero_indices(s.apply(d1.algebra.basis(u)));
    REQUIRE(nz.size() == 1);
    CHECK(nz[0] == t1.index_of(target));
  }
  PauliAlgebra d3 = pauli_matrix_algebra({3});
  IntMat diag(2, 2);
  diag(0, 0) = 2;
  diag(1, 1) = 1;
  AbHom not_sp(d3.group, d3.group, diag);
  REQUIRE(not_sp.is_bijective());
  CHECK_THROWS_AS(division_aut_from_symplectic(d3, not_sp), MorphismError);

  MatrixAlgebraMDk m = matrix_algebra_MDk({2}, 2);
  AlgAutomorphism id1 = automorphism_check(m.division.algebra, Mat::identity(4, m.algebra.conductor()));
  AlgAutomorphism tr = monomial_automorphism(m, {1, 0}, {0, 0}, id1);
  CHECK(tr.apply(m.algebra.basis(m.index(0, 1, 2))) == m.algebra.basis(m.index(1, 0, 2)));
  AlgAutomorphism dl = monomial_automorphism(m, {0, 1}, {0, 1}, id1);
  CHECK(dl.certified);
  GradedContext ctx = graded_context(gamma_M_grading(m));
  CHECK_NOTHROW(graded_automorphism_check(ctx, tr));
  CHECK_NOTHROW(graded_automorphism_check(ctx, dl));
  CHECK_THROWS_AS(monomial_automorphism(m, {0, 0}, {0, 0}, id1), MorphismError);
}

TEST_CASE("power normalization") {
  StructAlgebra c = cayley_good_basis();
  Vec x = q(3) * (c.basis("e1") - c.basis("e2"));  // x^2 = 9
  auto y = power_normalize(c, x, 2);
  REQUIRE(y);
  CHECK(c.mul(*y, *y) == c.unit());
  CHECK(!power_normalize(c, c.basis("u1"), 2));
}
