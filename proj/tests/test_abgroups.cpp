#include <set>

#include "doctest.h"
#include "fgw/abgroups.hpp"
#include "test_util.hpp"

using namespace fgw;
using fgw::testing::rng;

namespace {

std::int64_t det(const IntMat& m) {
  // exact Bareiss elimination on small matrices
  const std::size_t n = m.rows();
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? 1 : static_cast<std::int64_t>(a[n - 1][n - 1]) * sign;
}

IntMat random_unimodular(std::size_t n, int steps) {
  IntMat u = IntMat::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng()), j = pick(rng());
    if (i == j) continue;
    int q = coef(rng());
    for (std::size_t c = 0; c < n; ++c) u(i, c) += q * u(j, c);
  }
  return u;
}

// Automorphisms by brute force over all generator images, each map checked on
// every element.
std::uint64_t aut_count_oracle(const AbGroup& g) {
  auto elems = g.elements();
  const std::size_t k = g.rank();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= elems.size();
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<AbElem> imgs;
    std::uint64_t c = code;
    for (std::size_t i = 0; i < k; ++i) {
      imgs.push_back(elems[c % elems.size()]);
      c /= elems.size();
    }
    AbHom h = AbHom::from_images(g, g, imgs);
    if (!h.well_defined()) continue;
    std::set<AbElem> seen;
    for (const auto& x : elems) seen.insert(h.apply(x));
    if (seen.size() == elems.size()) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  SmithResult z = smith_normal_form(IntMat(2, 3));
  CHECK(z.d == IntMat(2, 3));
  CHECK(z.u == IntMat::identity(2));
  CHECK(z.v == IntMat::identity(3));

  IntMat m(2, 2);
  m(0, 0) = 2;
  m(1, 1) = 3;
  SmithResult s = smith_normal_form(m);
  CHECK(s.diagonal() == std::vector<std::int64_t>{1, 6});
  CHECK(s.u * m * s.v == s.d);

  IntMat one(1, 1);
  one(0, 0) = 2;
  CHECK(smith_normal_form(one).d == one);
}

TEST_CASE("smith normal form properties on random matrices") {
  std::uniform_int_distribution<int> ent(-6, 6), dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = dim(rng()), c = dim(rng());
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = ent(rng());
    SmithResult s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(s.u * s.u_inv == IntMat::identity(r));
    CHECK(s.v * s.v_inv == IntMat::identity(c));
    CHECK(std::abs(det(s.u)) == 1);
    CHECK(std::abs(det(s.v)) == 1);
    auto d = s.diagonal();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      CHECK(d[i] >= 0);
      if (d[i] == 0)
        CHECK(d[i + 1] == 0);
      else
        CHECK(d[i + 1] % d[i] == 0);
    }
  }
}

TEST_CASE("solve_integer") {
  std::uniform_int_distribution<int> ent(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    IntMat a(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = ent(rng());
    std::vector<std::int64_t> x{ent(rng()), ent(rng()), ent(rng()), ent(rng())};
    auto b = a.apply(x);
    auto sol = solve_integer(a, b);
    REQUIRE(sol.has_value());
    CHECK(a.apply(*sol) == b);
  }
  IntMat two(1, 1);
  two(0, 0) = 2;
  CHECK_FALSE(solve_integer(two, {1}).has_value());
}

TEST_CASE("quotient presentation examples") {
  Quotient q = quotient_presentation(2, {{2, 0}, {0, 2}});
  CHECK(q.group == AbGroup(0, {2, 2}));
  Quotient f = quotient_presentation(3, {});
  CHECK(f.group == AbGroup(3, {}));
  CHECK(f.projection.matrix() == IntMat::identity(3));
  Quotient t = quotient_presentation(1, {{1}});
  CHECK(t.group.is_trivial());
  CHECK(t.group.to_string() == "0");
}

TEST_CASE("quotient presentation round trip on random presentations") {
  std::uniform_int_distribution<int> free_r(0, 2), tors_n(0, 3), mod(2, 6);
  for (int trial = 0; trial < 20; ++trial) {
    int r = free_r(rng());
    std::vector<std::int64_t> mods;
    for (int i = tors_n(rng()); i > 0; --i) mods.push_back(mod(rng()));
    AbGroup g(r, mods);
    const std::size_t n = g.rank() + 1;  // one extra generator killed outright
    std::vector<std::vector<std::int64_t>> rel;
    for (std::size_t i = 0; i < mods.size(); ++i) {
      std::vector<std::int64_t> v(n, 0);
      v[static_cast<std::size_t>(r) + i] = mods[i];
      rel.push_back(v);
    }
    std::vector<std::int64_t> kill(n, 0);
    kill[n - 1] = 1;
    rel.push_back(kill);
    // change coordinates of Z^n and of the relation lattice
    IntMat p = random_unimodular(n, 12);
    std::vector<std::vector<std::int64_t>> moved;
    for (auto& v : rel) moved.push_back(p.apply(v));
    for (std::size_t i = 0; i + 1 < moved.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) moved[i][j] += moved[i + 1][j];
    Quotient q = quotient_presentation(n, moved);
    CAPTURE(g.to_string());
    CHECK(q.group == g.normal_form());
    // relations die, sections map to generators
    for (auto& v : moved) CHECK(q.group.is_zero(q.projection.apply(AbElem{v})));
    for (std::size_t i = 0; i < q.group.rank(); ++i)
      CHECK(q.projection.apply(AbElem{q.section[i]}) == q.group.generator(i));
  }
}

TEST_CASE("group basics") {
  AbGroup g(1, {2, 4});
  CHECK(g.to_string() == "Z x Z_2 x Z_4");
  CHECK(AbGroup(0, {2, 2, 2}).to_string() == "Z_2^3");
  CHECK(AbGroup(0, {6, 4}).normal_form() == AbGroup(0, {2, 12}));
  CHECK(AbGroup(0, {2, 3}).isomorphic(AbGroup(0, {6})));
  CHECK(g.element_order(g.element({0, 1, 2})) == 2);
  CHECK(g.element_order(g.element({1, 0, 0})) == 0);
  CHECK(g.element({3, -1, 5}).coords == std::vector<std::int64_t>{3, 1, 1});
  AbGroup h(0, {3, 5});
  for (std::uint64_t i = 0; i < h.order(); ++i) CHECK(h.index_of(h.from_index(i)) == i);
}

TEST_CASE("automorphism enumeration") {
  CHECK(enumerate_automorphisms(AbGroup(0, {2})).size() == 1);
  CHECK(enumerate_automorphisms(AbGroup(0, {2, 2, 2})).size() == 168);
  CHECK(enumerate_automorphisms(AbGroup(0, {3})).size() == 2);
  for (auto mods : std::vector<std::vector<std::int64_t>>{{4}, {2, 4}, {2, 2}, {3, 3}, {2, 6}, {4, 4}, {2, 2, 4}}) {
    AbGroup g(0, mods);
    CAPTURE(g.to_string());
    auto auts = enumerate_automorphisms(g);
    CHECK(auts.size() == aut_count_oracle(g));
    for (auto& a : auts) {
      CHECK(a.well_defined());
      CHECK(a.is_bijective());
    }
  }
  CHECK_THROWS_AS(enumerate_automorphisms(AbGroup(0, {2, 2, 2, 2, 2, 2, 2, 2})), BoundExceeded);
}

TEST_CASE("standard bicharacter") {
  auto [t, beta] = standard_bicharacter({2});
  CHECK(beta.value(t.generator(0), t.generator(1), 24) == CycScalar(-1));
  auto [t3, b3] = standard_bicharacter({3});
  CycScalar w = CycScalar::root_of_unity(3, 1);
  CHECK(b3.value(t3.element({2, 0}), t3.element({0, 1}), 24) == w * w);
  CHECK(b3.value(t3.generator(1), t3.generator(0), 24) == w.inverse());
  auto [t4, b4] = standard_bicharacter({2, 4});
  CHECK(t4.torsion_order() == TorsionOrder::SymplecticPairs);
  CHECK(b4.is_alternating());
  CHECK(b4.is_nondegenerate());
  for (auto& x : t4.elements()) CHECK(b4.exponent(x, x) == 0);
  CHECK(b4.exponent(t4.generator(0), t4.generator(2)) == 0);
}

TEST_CASE("Aut(T, beta) by brute force") {
  auto check_group = [](const std::vector<AbHom>& grp) {
    std::set<AbHom> s(grp.begin(), grp.end());
    CHECK(s.size() == grp.size());
    CHECK(s.count(AbHom::identity(grp.front().source())) == 1);
    for (auto& a : grp) {
      for (auto& b : grp) CHECK(s.count(a.compose(b)) == 1);
      // inverse: the power of a that returns to the identity
      AbHom p = a;
      while (!(p.compose(a) == AbHom::identity(a.source()))) p = p.compose(a);
      CHECK(s.count(p) == 1);
    }
  };
  auto g22 = aut_bicharacter_bruteforce(standard_bicharacter({2}).beta);
  CHECK(g22.size() == 6);
  check_group(g22);
  auto g33 = aut_bicharacter_bruteforce(standard_bicharacter({3}).beta);
  CHECK(g33.size() == 24);
  check_group(g33);
  auto g24 = aut_bicharacter_bruteforce(standard_bicharacter({2, 2}).beta);
  CHECK(g24.size() == 720);
  auto g44 = aut_bicharacter_bruteforce(standard_bicharacter({4}).beta);
  check_group(g44);
  CHECK_THROWS_AS(aut_bicharacter_bruteforce(standard_bicharacter({17}).beta), BoundExceeded);
}

TEST_CASE("matrix criterion") {
  auto sd = standard_bicharacter({2});
  auto crit = SymplecticCriterion::make(sd.beta);
  CHECK(crit.accepts(IntMat::identity(2)));
  CHECK(SymplecticCriterion::make(standard_bicharacter({2, 2}).beta).count() == 720);
  CHECK(SymplecticCriterion::make(standard_bicharacter({4}).beta).count() == 48);

  std::vector<std::vector<std::int64_t>> cases{{2}, {3}, {4}, {5}, {7}, {8}, {9}, {2, 2}, {2, 4}, {4, 2}, {16}, {2, 8}, {3, 3}};
  for (auto& ls : cases) {
    auto s = standard_bicharacter(ls);
    CAPTURE(s.group.to_string());
    auto c = SymplecticCriterion::make(s.beta);
    auto bf = aut_bicharacter_bruteforce(s.beta);
    CHECK(c.count() == bf.size());
    std::set<AbHom> from_crit;
    c.for_each([&](const IntMat& a) {
      CHECK(c.accepts(a));
      from_crit.insert(c.to_hom(a));
    });
    CHECK(from_crit == std::set<AbHom>(bf.begin(), bf.end()));
  }
  IntMat bad = IntMat::identity(2);
  bad(0, 0) = 0;
  CHECK_FALSE(crit.accepts(bad));
  CHECK_THROWS_AS(SymplecticCriterion::make(standard_bicharacter({6}).beta), GroupError);
  AbGroup z24(0, {2, 4});
  IntMat e(2, 2);
  CHECK_THROWS_AS(SymplecticCriterion::make(Bicharacter(z24, 4, e)), GroupError);
}

TEST_CASE("symplectic basis") {
  auto validate = [](const Bicharacter& beta, const std::vector<AbElem>& basis) {
    const AbGroup& g = beta.group();
    std::uint64_t prod = 1;
    REQUIRE(basis.size() % 2 == 0);
    for (std::size_t i = 0; i < basis.size(); i += 2) {
      std::int64_t oa = g.element_order(basis[i]);
      CHECK(oa == g.element_order(basis[i + 1]));
      std::int64_t e = beta.exponent(basis[i], basis[i + 1]);
      CHECK(beta.root_order() / gcd_i64(e, beta.root_order()) == oa);
      prod *= static_cast<std::uint64_t>(oa * oa);
      for (std::size_t j = 0; j < basis.size(); j += 2) {
        if (i == j) continue;
        for (int s = 0; s < 2; ++s)
          for (int t = 0; t < 2; ++t) CHECK(beta.exponent(basis[i + s], basis[j + t]) == 0);
      }
    }
    CHECK(prod == g.order());
  };
  auto s22 = standard_bicharacter({2, 2});
  validate(s22.beta, symplectic_basis(s22.beta));
  auto s24 = standard_bicharacter({2, 4, 3});
  validate(s24.beta, symplectic_basis(s24.beta, 1000));

  // scramble by random automorphisms
  for (auto ls : std::vector<std::vector<std::int64_t>>{{2}, {2, 2}, {4}, {2, 4}}) {
    auto s = standard_bicharacter(ls);
    auto auts = enumerate_automorphisms(s.group, {256, 1u << 20});
    std::uniform_int_distribution<std::size_t> pick(0, auts.size() - 1);
    for (int trial = 0; trial < 5; ++trial) {
      const IntMat& m = auts[pick(rng())].matrix();
      Bicharacter b2(s.group, s.beta.root_order(), m.transpose() * s.beta.exponents() * m);
      validate(b2, symplectic_basis(b2));
    }
  }
  AbGroup v(0, {2, 2});
  Bicharacter trivial(v, 2, IntMat(2, 2));
  CHECK_THROWS_AS(symplectic_basis(trivial), GroupError);
}
