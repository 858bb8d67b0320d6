#include "fgw/gradings.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fgw {

Grading grading_make(StructAlgebra algebra, AbGroup group, std::vector<AbElem> degree, std::string name) {
  const std::size_t n = algebra.dim();
  if (degree.size() != n)
    throw GradingError("grading_make: " + std::to_string(degree.size()) + " degrees for a " + std::to_string(n) +
                       "-dimensional algebra");
  for (auto& d : degree) {
    if (d.coords.size() != group.rank()) throw GradingError("grading_make: degree of the wrong rank");
    d = group.element(d.coords);
  }
  const auto& labels = algebra.labels();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec& p = algebra.product(i, j);
      if (p.empty()) continue;
      AbElem want = group.add(degree[i], degree[j]);
      for (const auto& t : p)
        if (degree[t.index] != want)
          throw GradingError("grading_make: " + labels[i] + " * " + labels[j] + " has a component on " +
                             labels[t.index] + " of degree " + degree[t.index].to_string() + ", expected " +
                             want.to_string());
    }
  Grading g;
  g.algebra = std::move(algebra);
  g.group = std::move(group);
  g.degree = std::move(degree);
  g.name = std::move(name);
  return g;
}

std::optional<std::size_t> SupportTable::find(const AbElem& g) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), g,
                             [](const SupportEntry& e, const AbElem& x) { return e.degree < x; });
  if (it == entries.end() || it->degree != g) return std::nullopt;
  return static_cast<std::size_t>(it - entries.begin());
}

SupportTable support(const Grading& g) {
  std::map<AbElem, std::vector<std::size_t>> comp;
  for (std::size_t i = 0; i < g.degree.size(); ++i) comp[g.degree[i]].push_back(i);
  SupportTable t;
  t.entry_of.assign(g.degree.size(), 0);
  for (auto& [d, b] : comp) {
    for (auto i : b) t.entry_of[i] = t.entries.size();
    t.entries.push_back({d, b});
  }
  return t;
}

std::string support_report(const Grading& g) {
  SupportTable t = support(g);
  std::ostringstream os;
  for (const auto& e : t.entries) {
    os << e.degree.to_string() << '\t' << e.dim() << '\t';
    for (std::size_t k = 0; k < e.basis.size(); ++k) os << (k ? "," : "") << g.algebra.labels()[e.basis[k]];
    os << '\n';
  }
  return os.str();
}

UniversalGroup universal_abelian_group(const Grading& g) {
  SupportTable t = support(g);
  const std::size_t m = t.size();
  std::set<std::vector<std::int64_t>> rels;
  const std::size_t n = g.algebra.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& term : g.algebra.product(i, j)) {
        std::vector<std::int64_t> r(m, 0);
        r[t.entry_of[i]] += 1;
        r[t.entry_of[j]] += 1;
        r[t.entry_of[term.index]] -= 1;
        rels.insert(std::move(r));
      }
  UniversalGroup u;
  u.relations.assign(rels.begin(), rels.end());
  u.quotient = quotient_presentation(m, u.relations);
  u.group = u.quotient.group;
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<std::int64_t> v(m, 0);
    v[e] = 1;
    u.embedding.push_back(u.quotient.projection.apply(AbElem{v}));
  }
  std::vector<AbElem> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = u.embedding[t.entry_of[i]];
  u.regraded = grading_make(g.algebra, u.group, deg, g.name.empty() ? "" : g.name + "/U");
  u.regraded.base = g.base;
  u.regraded.to_base = g.to_base;
  u.regraded.from_base = g.from_base;
  return u;
}

Grading induce(const Grading& g, const AbHom& alpha) {
  if (!(alpha.source() == g.group)) throw GradingError("induce: homomorphism source is not the grading group");
  if (!alpha.well_defined()) throw GradingError("induce: homomorphism is not well defined");
  std::vector<AbElem> deg;
  for (const auto& d : g.degree) deg.push_back(alpha.apply(d));
  Grading out = grading_make(g.algebra, alpha.target(), std::move(deg), g.name.empty() ? "" : g.name + "/induced");
  out.base = g.base;
  out.to_base = g.to_base;
  out.from_base = g.from_base;
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> trace_orthogonality_failures(const Grading& g) {
  if (!g.algebra.has_trace()) throw GradingError("trace orthogonality: algebra has no trace");
  const auto& tr = *g.algebra.options().trace;
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  const std::size_t n = g.algebra.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CycScalar s = CycScalar::zero(g.algebra.conductor());
      for (const auto& t : g.algebra.product(i, j)) s += t.coeff * tr[t.index];
      if (!s.is_zero() && !g.group.is_zero(g.group.add(g.degree[i], g.degree[j]))) bad.emplace_back(i, j);
    }
  return bad;
}

// ---------------------------------------------------------------------------
// Builtin gradings

namespace {

enum : std::size_t { E1 = 0, E2 = 1, U1 = 2, U2 = 3, U3 = 4, V1 = 5, V2 = 6, V3 = 7 };

using Coords = std::vector<std::int64_t>;

Coords operator+(const Coords& a, const Coords& b) {
  Coords c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}
Coords operator-(const Coords& a) {
  Coords c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}
Coords cat(Coords a, const Coords& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Grading cartan_cayley() {
  StructAlgebra c = cayley_good_basis();
  const Coords eps[3] = {{1, 0}, {0, 1}, {-1, -1}};
  std::vector<AbElem> d(8, AbElem{{0, 0}});
  for (std::size_t i = 0; i < 3; ++i) {
    d[U1 + i] = AbElem{eps[i]};
    d[V1 + i] = AbElem{-eps[i]};
  }
  return grading_make(std::move(c), AbGroup(2, {}), std::move(d), "cartan_cayley");
}

std::vector<AbElem> cd_degrees(const StructAlgebra& cd) {
  std::vector<AbElem> d;
  for (const auto& h : cd.degree_hint()) d.push_back(AbElem{h});
  if (d.size() != cd.dim() || d[0].coords.size() != 3) throw GradingError("cd_cayley: missing doubling degrees");
  return d;
}

Grading cd_cayley() {
  StructAlgebra c = cayley_cd_basis();
  auto d = cd_degrees(c);
  return grading_make(std::move(c), AbGroup(0, {2, 2, 2}), std::move(d), "cd_cayley");
}

std::string ls_text(const std::vector<std::int64_t>& ls) {
  std::string s;
  for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? "," : "") + std::to_string(ls[i]);
  return s;
}

Grading gamma_M(const GradingParams& p) {
  if (p.k < 1) throw GradingError("gamma_M: k must be positive");
  return gamma_M_grading(matrix_algebra_MDk(p.ls, p.k));
}

Grading albert_cartan() {
  StructAlgebra c = cayley_good_basis();
  StructAlgebra a = albert_algebra(c);
  const Coords A[3] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, -1, 0, 0}};
  const Coords G[3] = {{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, -1, -1}};
  auto at = [](const Coords* v, std::size_t i) { return v[(i - 1) % 3]; };  // index 1..5
  std::vector<AbElem> d(27, AbElem{{0, 0, 0, 0}});
  for (std::size_t i = 1; i <= 3; ++i) {
    d[albert_iota(i, E1)] = AbElem{at(A, i)};
    d[albert_iota(i, E2)] = AbElem{-at(A, i)};
    d[albert_iota(i, U1 + (i - 1))] = AbElem{at(G, i)};
    d[albert_iota(i, V1 + (i - 1))] = AbElem{-at(G, i)};
    Coords u1 = at(A, i + 2) + at(G, i + 1);
    d[albert_iota(i, U1 + i % 3)] = AbElem{u1};
    d[albert_iota(i, V1 + i % 3)] = AbElem{-u1};
    Coords u2 = -at(A, i + 1) + at(G, i + 2);
    d[albert_iota(i, U1 + (i + 1) % 3)] = AbElem{u2};
    d[albert_iota(i, V1 + (i + 1) % 3)] = AbElem{-u2};
  }
  return grading_make(std::move(a), AbGroup(4, {}), std::move(d), "albert_cartan");
}

Grading albert_z25() {
  StructAlgebra c = cayley_cd_basis();
  auto cd = cd_degrees(c);
  StructAlgebra a = albert_algebra(c);
  const Coords K[3] = {{1, 0}, {0, 1}, {1, 1}};
  std::vector<AbElem> d(27, AbElem{Coords(5, 0)});
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t k = 0; k < 8; ++k) d[albert_iota(i, k)] = AbElem{cat(K[i - 1], cd[k].coords)};
  return grading_make(std::move(a), AbGroup(0, {2, 2, 2, 2, 2}), std::move(d), "albert_z25");
}

Grading albert_zz23() {
  StructAlgebra c = cayley_cd_basis();
  auto cd = cd_degrees(c);
  StructAlgebra a = albert_algebra(c);
  NuBasis nb = albert_nu_basis(a, c);
  std::vector<AbElem> d(27, AbElem{Coords(4, 0)});
  d[nb.Sp] = AbElem{{2, 0, 0, 0}};
  d[nb.Sm] = AbElem{{-2, 0, 0, 0}};
  for (std::size_t k = 1; k < 8; ++k) d[nb.nu(k)] = AbElem{cat({0}, cd[k].coords)};
  for (std::size_t k = 0; k < 8; ++k) {
    d[nb.nu_plus(k)] = AbElem{cat({1}, cd[k].coords)};
    d[nb.nu_minus(k)] = AbElem{cat({-1}, cd[k].coords)};
  }
  Grading g = grading_make(nb.algebra, AbGroup(1, {2, 2, 2}), std::move(d), "albert_zz23");
  g.base = a;
  g.to_base = nb.to_albert;
  g.from_base = nb.from_albert;
  return g;
}

bool perfect_cube(const mpz_class& z, mpz_class& root) {
  mpz_class a = abs(z);
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), 3) == 0) return false;
  root = z < 0 ? mpz_class(-r) : r;
  return true;
}

}  // namespace

Grading gamma_M_grading(const MatrixAlgebraMDk& m) {
  const AbGroup& t = m.division.group;
  const auto elems = t.elements();
  AbGroup g(static_cast<int>(m.k), t.moduli());
  std::vector<AbElem> d(m.algebra.dim());
  for (std::size_t i = 0; i < m.k; ++i)
    for (std::size_t j = 0; j < m.k; ++j)
      for (std::size_t s = 0; s < elems.size(); ++s) {
        Coords x(m.k, 0);
        x[i] += 1;
        x[j] -= 1;
        d[m.index(i, j, s)] = AbElem{cat(x, elems[s].coords)};
      }
  return grading_make(m.algebra, std::move(g), std::move(d),
                      "gamma_M(" + ls_text(m.division.ls) + ";" + std::to_string(m.k) + ")");
}

Vec okubo_mul(const StructAlgebra& c, const Mat& tau, const Vec& x, const Vec& y) {
  Mat tau2 = tau * tau;
  return c.mul(tau.apply(conjugate(c, x)), tau2.apply(conjugate(c, y)));
}

Vec cube_normalize(const StructAlgebra& a, const Vec& x) {
  CubicFit f = cubic_fit(a, x);
  if (f.degenerate || !f.t.is_zero() || !f.s.is_zero() || f.n.is_zero())
    throw GradingError("cube_normalize: element does not satisfy X^3 = n 1 with n != 0");
  if (!f.n.is_rational()) throw GradingError("cube_normalize: cube scalar " + f.n.to_string() + " is not rational");
  Rational n = f.n.rational_value();
  mpz_class p, q;
  if (!perfect_cube(n.get_num(), p) || !perfect_cube(n.get_den(), q))
    throw GradingError("cube_normalize: cube scalar " + f.n.to_string() + " is not a rational cube");
  return CycScalar(Rational(q, p), a.conductor()) * x;
}

Z33Data albert_z33_data() {
  Z33Data z;
  z.cayley = cayley_good_basis();
  z.albert = albert_algebra(z.cayley);
  const StructAlgebra& C = z.cayley;
  const StructAlgebra& A = z.albert;
  const int N = A.conductor();
  Mat tau = cayley_tau(C);

  // Okubo degrees: propagate deg e1 = (1,0), deg u1 = (0,1) through products
  // landing on a single basis element, and check every product afterwards.
  AbGroup z32(0, {3, 3});
  std::vector<std::optional<AbElem>> od(8);
  od[E1] = AbElem{{1, 0}};
  od[U1] = AbElem{{0, 1}};
  Vec prod[8][8];
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) prod[i][j] = okubo_mul(C, tau, C.basis(i), C.basis(j));
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        if (!od[i] || !od[j]) continue;
        auto nz = nonzero_indices(prod[i][j]);
        if (nz.size() != 1 || od[nz[0]]) continue;
        od[nz[0]] = z32.add(*od[i], *od[j]);
        z.okubo_degree_derivation.push_back(C.labels()[nz[0]] + " ~ " + C.labels()[i] + "*" + C.labels()[j] + " -> " +
                                            od[nz[0]]->to_string());
        grew = true;
      }
  }
  for (std::size_t i = 0; i < 8; ++i) {
    if (!od[i]) throw GradingError("albert_z33: Okubo degree of " + C.labels()[i] + " not determined");
    z.okubo_degree.push_back(*od[i]);
  }
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      for (auto k : nonzero_indices(prod[i][j]))
        if (z.okubo_degree[k] != z32.add(z.okubo_degree[i], z.okubo_degree[j]))
          throw GradingError("albert_z33: Okubo product " + C.labels()[i] + "*" + C.labels()[j] + " is not graded");

  const CycScalar w = CycScalar::root_of_unity(N, N / 3);
  auto wpow = [&](long e) { return w.pow(((e % 3) + 3) % 3); };
  std::vector<Mat> taupow{Mat::identity(8, N), tau, tau * tau};
  std::vector<Vec> vecs;
  std::vector<std::string> labels;
  std::vector<AbElem> deg;
  for (long k = 0; k < 3; ++k) {
    Vec v = A.zero();
    for (long i = 1; i <= 3; ++i) v[albert_E(i)] = wpow(-k * i);
    vecs.push_back(v);
    labels.push_back("E(" + std::to_string(k) + ")");
    deg.push_back(AbElem{{0, 0, k}});
  }
  for (std::size_t x = 0; x < 8; ++x)
    for (long k = 0; k < 3; ++k) {
      Vec v = A.zero();
      for (long i = 1; i <= 3; ++i)
        axpy(v, wpow(-k * i), albert_embed(A, i, taupow[i % 3].apply(C.basis(x))));
      vecs.push_back(cube_normalize(A, v));
      labels.push_back("B(" + C.labels()[x] + "," + std::to_string(k) + ")");
      deg.push_back(AbElem{cat(z.okubo_degree[x].coords, {k})});
    }
  StructAlgebra r = rebase(A, vecs, labels, "albert_z33");
  z.grading = grading_make(std::move(r), AbGroup(0, {3, 3, 3}), std::move(deg), "albert_z33");
  z.grading.base = A;
  z.grading.to_base = Mat::from_columns(vecs);
  z.grading.from_base = *z.grading.to_base.inverse();
  z.X1 = z.grading.algebra.index_of("B(e1,0)");
  z.X2 = z.grading.algebra.index_of("B(u1,0)");
  z.X3 = z.grading.algebra.index_of("E(1)");
  return z;
}

const std::vector<std::string>& builtin_grading_names() {
  static const std::vector<std::string> names{"cartan_cayley", "cd_cayley",   "gamma_M",   "albert_cartan",
                                              "albert_z25",    "albert_zz23", "albert_z33"};
  return names;
}

Grading builtin_grading(const std::string& name, const GradingParams& params) {
  if (name == "cartan_cayley") return cartan_cayley();
  if (name == "cd_cayley") return cd_cayley();
  if (name == "gamma_M") return gamma_M(params);
  if (name == "albert_cartan") return albert_cartan();
  if (name == "albert_z25") return albert_z25();
  if (name == "albert_zz23") return albert_zz23();
  if (name == "albert_z33") return albert_z33_data().grading;
  throw GradingError("unknown grading: " + name);
}

AbGroup declared_universal_group(const std::string& name, const GradingParams& params) {
  if (name == "cartan_cayley") return AbGroup(2, {});
  if (name == "cd_cayley") return AbGroup(0, {2, 2, 2});
  if (name == "gamma_M") {
    std::vector<std::int64_t> m;
    for (auto l : params.ls) m.insert(m.end(), {l, l});
    return AbGroup(static_cast<int>(params.k) - 1, m);
  }
  if (name == "albert_cartan") return AbGroup(4, {});
  if (name == "albert_z25") return AbGroup(0, {2, 2, 2, 2, 2});
  if (name == "albert_zz23") return AbGroup(1, {2, 2, 2});
  if (name == "albert_z33") return AbGroup(0, {3, 3, 3});
  throw GradingError("unknown grading: " + name);
}

}  // namespace fgw
