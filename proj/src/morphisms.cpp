#include "fgw/morphisms.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace fgw {

namespace {

Vec image_of_product(const StructAlgebra& a, const std::vector<Vec>& cols, std::size_t i, std::size_t j) {
  Vec out = a.zero();
  for (const auto& t : a.product(i, j)) axpy(out, t.coeff, cols[t.index]);
  return out;
}

bool rational_root(const Rational& q, int m, Rational& root) {
  if (q <= 0) return false;
  mpz_class p, r;
  if (mpz_root(p.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(m)) == 0) return false;
  if (mpz_root(r.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(m)) == 0) return false;
  root = Rational(p, r);
  return true;
}

}  // namespace

std::optional<std::string> automorphism_failure(const StructAlgebra& a, const Mat& m) {
  const std::size_t n = a.dim();
  if (m.rows() != n || m.cols() != n) return "matrix has the wrong size";
  std::vector<Vec> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = m.column(j);
  if (a.has_unit() && m.apply(a.unit()) != a.unit()) return "unit not fixed";
  const auto& l = a.labels();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (image_of_product(a, cols, i, j) != a.mul(cols[i], cols[j]))
        return "multiplicativity fails at (" + l[i] + ", " + l[j] + ")";
  if (m.rank() != n) return "not invertible";
  return std::nullopt;
}

AlgAutomorphism automorphism_check(const StructAlgebra& a, const Mat& m) {
  if (auto f = automorphism_failure(a, m)) throw MorphismError("automorphism_check(" + a.name() + "): " + *f);
  return AlgAutomorphism{a.name(), m, true};
}

AlgAutomorphism compose(const AlgAutomorphism& outer, const AlgAutomorphism& inner) {
  if (outer.algebra != inner.algebra) throw MorphismError("compose: automorphisms of different algebras");
  return AlgAutomorphism{outer.algebra, outer.matrix * inner.matrix, outer.certified && inner.certified};
}

GradedContext graded_context(Grading g) {
  GradedContext c;
  c.supp = support(g);
  c.univ = universal_abelian_group(g);
  c.grading = std::move(g);
  return c;
}

std::optional<AbHom> induced_universal(const GradedContext& ctx, const std::vector<std::uint32_t>& perm) {
  const AbGroup& u = ctx.univ.group;
  const std::size_t m = ctx.supp.size();
  if (perm.size() != m) return std::nullopt;
  std::vector<AbElem> images;
  for (const auto& sec : ctx.univ.quotient.section) {
    std::vector<std::int64_t> w(m, 0);
    for (std::size_t e = 0; e < m; ++e) w[perm[e]] += sec[e];
    images.push_back(ctx.univ.quotient.projection.apply(AbElem{w}));
  }
  AbHom h = AbHom::from_images(u, u, images);
  if (!h.well_defined()) return std::nullopt;
  for (std::size_t e = 0; e < m; ++e)
    if (h.apply(ctx.univ.embedding[e]) != ctx.univ.embedding[perm[e]]) return std::nullopt;
  return h;  // maps the generating support onto itself, hence bijective
}

SupportPerm graded_automorphism_check(const GradedContext& ctx, const AlgAutomorphism& phi) {
  const auto& es = ctx.supp.entries;
  SupportPerm sp;
  std::vector<bool> hit(es.size(), false);
  for (std::size_t s = 0; s < es.size(); ++s) {
    std::optional<std::size_t> target;
    for (auto b : es[s].basis)
      for (std::size_t r = 0; r < phi.matrix.rows(); ++r) {
        if (phi.matrix(r, b).is_zero()) continue;
        std::size_t t = ctx.supp.entry_of[r];
        if (target && *target != t)
          throw MorphismError("not in Aut(Gamma): component " + es[s].degree.to_string() + " is split");
        target = t;
      }
    if (!target || es[*target].dim() != es[s].dim() || hit[*target])
      throw MorphismError("not in Aut(Gamma): component " + es[s].degree.to_string() + " is not mapped onto a component");
    hit[*target] = true;
    sp.perm.push_back(static_cast<std::uint32_t>(*target));
  }
  auto h = induced_universal(ctx, sp.perm);
  if (!h) throw MorphismError("not in Aut(Gamma): support map does not extend to U(Gamma)");
  sp.induced = *h;
  return sp;
}

Mat to_grading_basis(const Grading& g, const Mat& m) {
  if (!g.base) return m;
  return g.from_base * m * g.to_base;
}

AlgAutomorphism in_grading_basis(const Grading& g, const AlgAutomorphism& phi) {
  return automorphism_check(g.algebra, to_grading_basis(g, phi.matrix));
}

// ---------------------------------------------------------------------------
// Cayley algebra

namespace {

Mat signed_permutation(const StructAlgebra& c, const std::vector<std::tuple<std::string, std::string, int>>& moves) {
  const int N = c.conductor();
  Mat m = Mat::identity(c.dim(), N);
  for (const auto& [from, to, sign] : moves) {
    std::size_t f = c.index_of(from), t = c.index_of(to);
    m.set_column(f, CycScalar(Rational(sign), N) * c.basis(t));
  }
  return m;
}

}  // namespace

AlgAutomorphism tau_cayley(const StructAlgebra& c) { return automorphism_check(c, cayley_tau(c)); }

AlgAutomorphism phi1_cayley(const StructAlgebra& c) {
  return automorphism_check(c, signed_permutation(c, {{"e1", "e2", 1}, {"e2", "e1", 1}, {"u1", "v1", 1},
                                                      {"v1", "u1", 1}, {"u2", "v2", 1}, {"v2", "u2", 1},
                                                      {"u3", "v3", 1}, {"v3", "u3", 1}}));
}

AlgAutomorphism phi2_cayley(const StructAlgebra& c) {
  return automorphism_check(c, signed_permutation(c, {{"u1", "u1", -1}, {"u2", "u3", 1}, {"u3", "u2", 1},
                                                      {"v1", "v1", -1}, {"v2", "v3", 1}, {"v3", "v2", 1}}));
}

// ---------------------------------------------------------------------------
// Albert algebra

namespace {

// E_i -> E_sigma(i), iota_i(b_k) -> iota_sigma(i)(blocks[i] b_k); indices 1..3.
Mat albert_block_map(const StructAlgebra& a, const std::array<std::size_t, 3>& sigma, const std::array<Mat, 3>& blocks) {
  const int N = a.conductor();
  Mat m(27, 27);
  for (std::size_t i = 1; i <= 3; ++i) {
    m(albert_E(sigma[i - 1]), albert_E(i)) = CycScalar::one(N);
    for (std::size_t k = 0; k < 8; ++k)
      for (std::size_t l = 0; l < 8; ++l) m(albert_iota(sigma[i - 1], l), albert_iota(i, k)) = blocks[i - 1](l, k);
  }
  return m;
}

Mat conj_matrix(const StructAlgebra& c) {
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < c.dim(); ++k) cols.push_back(conjugate(c, c.basis(k)));
  return Mat::from_columns(cols);
}

void require_albert(const StructAlgebra& a, const StructAlgebra& c) {
  if (a.dim() != 27 || c.dim() != 8 || a.labels()[3] != "i1(" + c.labels()[0] + ")")
    throw MorphismError("expected albert_algebra(c)");
}

}  // namespace

AlgAutomorphism psi_123(const StructAlgebra& a, const StructAlgebra& c) {
  require_albert(a, c);
  Mat id = Mat::identity(8, c.conductor());
  return automorphism_check(a, albert_block_map(a, {2, 3, 1}, {id, id, id}));
}

AlgAutomorphism psi_23(const StructAlgebra& a, const StructAlgebra& c) {
  require_albert(a, c);
  Mat k = conj_matrix(c);
  return automorphism_check(a, albert_block_map(a, {1, 3, 2}, {k, k, k}));
}

AlgAutomorphism psi_12(const StructAlgebra& a, const StructAlgebra& c) {
  require_albert(a, c);
  Mat k = conj_matrix(c);
  return automorphism_check(a, albert_block_map(a, {2, 1, 3}, {k, k, k}));
}

AlgAutomorphism phi_extension_albert(const StructAlgebra& a, const StructAlgebra& c, const Mat& phi) {
  require_albert(a, c);
  return automorphism_check(a, albert_block_map(a, {1, 2, 3}, {phi, phi, phi}));
}

AlgAutomorphism tau_albert(const StructAlgebra& a, const StructAlgebra& c) {
  return phi_extension_albert(a, c, cayley_tau(c));
}

Mat reflection(const StructAlgebra& c, const Vec& v) {
  CycScalar nv = c.norm(v);
  if (nv.is_zero()) throw MorphismError("reflection: n(v) = 0");
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < c.dim(); ++k) {
    Vec z = c.basis(k);
    axpy(z, -(c.polar(z, v) / nv), v);
    cols.push_back(z);
  }
  return Mat::from_columns(cols);
}

Mat spin_chi(const StructAlgebra& c, const Vec& x, const Vec& y, SpinOrder order) {
  Mat sx = reflection(c, x), sy = reflection(c, y);
  return order == SpinOrder::XY ? sx * sy : sy * sx;
}

AlgAutomorphism spin_automorphism(const StructAlgebra& a, const StructAlgebra& c, const Vec& x, const Vec& y,
                                  SpinOrder order) {
  require_albert(a, c);
  const CycScalar one = CycScalar::one(c.conductor());
  if (c.norm(x) != one || c.norm(y) != one) throw MorphismError("spin_automorphism: need n(x) = n(y) = 1");
  Vec xb = conjugate(c, x);
  std::vector<Vec> rp, rm;
  for (std::size_t k = 0; k < 8; ++k) {
    Vec z = c.basis(k);
    rp.push_back(c.mul(c.mul(z, y), xb));
    rm.push_back(c.mul(xb, c.mul(y, z)));
  }
  Mat m = albert_block_map(a, {1, 2, 3}, {spin_chi(c, x, y, order), Mat::from_columns(rp), Mat::from_columns(rm)});
  if (auto f = automorphism_failure(a, m)) throw MorphismError("spin convention mismatch: " + *f);
  return AlgAutomorphism{a.name(), m, true};
}

AlgAutomorphism psi0_zz23(const Grading& zz) {
  const StructAlgebra& a = zz.algebra;
  const int N = a.conductor();
  Mat m(a.dim(), a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    std::string l = a.labels()[j];
    Vec img;
    if (l == "S+") img = a.basis("S-");
    else if (l == "S-") img = a.basis("S+");
    else if (l.rfind("nu+", 0) == 0) img = a.basis("nu-" + l.substr(3));
    else if (l.rfind("nu-", 0) == 0) img = a.basis("nu+" + l.substr(3));
    else if (l.rfind("nu(", 0) == 0) img = CycScalar(Rational(-1), N) * a.basis(j);
    else img = a.basis(j);
    m.set_column(j, img);
  }
  return automorphism_check(a, m);
}

AlgAutomorphism phi_extension_zz23(const Grading& zz, const StructAlgebra& cd, const Mat& phi) {
  if (!zz.base) throw MorphismError("phi_extension_zz23: grading has no base algebra");
  return in_grading_basis(zz, phi_extension_albert(*zz.base, cd, phi));
}

AlgAutomorphism z33_phi(const Z33Data& z, int j) {
  const StructAlgebra& c = z.cayley;
  const int N = c.conductor();
  Mat tau = cayley_tau(c);
  Mat tau2 = tau * tau;
  Mat id = Mat::identity(8, N);
  Mat m;
  if (j == 1 || j == 2) {
    const CycScalar w = CycScalar::root_of_unity(N, N / 3);
    Mat phi(8, 8);
    for (std::size_t k = 0; k < 8; ++k) phi(k, k) = w.pow(z.okubo_degree[k].coords[j - 1]);
    // iota_i(y) = itilde_i(tau^{-i} y) -> iota_i(tau^i phi tau^{-i} y)
    std::array<Mat, 3> tp{tau, tau2, id}, tm{tau2, tau, id};
    m = albert_block_map(z.albert, {1, 2, 3},
                         {tp[0] * phi * tm[0], tp[1] * phi * tm[1], tp[2] * phi * tm[2]});
  } else if (j == 3) {
    m = albert_block_map(z.albert, {2, 3, 1}, {tau, tau, tau});
  } else {
    throw MorphismError("z33_phi: j must be 1, 2 or 3");
  }
  return in_grading_basis(z.grading, automorphism_check(z.albert, m));
}

// ---------------------------------------------------------------------------
// Matrix algebras

namespace {

Vec basis_inverse(const PauliAlgebra& d, std::size_t t) {
  const StructAlgebra& a = d.algebra;
  std::size_t s = d.group.index_of(d.group.neg(d.group.from_index(t)));
  Vec p = a.mul(a.basis(t), a.basis(s));
  CycScalar c = p[0];  // X_t X_{-t} = c X_0
  return c.inverse() * a.basis(s);
}

}  // namespace

AlgAutomorphism ad_homogeneous(const PauliAlgebra& d, std::size_t t) {
  const StructAlgebra& a = d.algebra;
  Vec xt = a.basis(t), xi = basis_inverse(d, t);
  std::vector<Vec> cols;
  for (std::size_t u = 0; u < a.dim(); ++u) cols.push_back(a.mul(a.mul(xt, a.basis(u)), xi));
  return automorphism_check(a, Mat::from_columns(cols));
}

AlgAutomorphism division_aut_from_symplectic(const PauliAlgebra& d, const AbHom& mu) {
  const AbGroup& g = d.group;
  if (!(mu.source() == g) || !(mu.target() == g) || !mu.is_bijective())
    throw MorphismError("division_aut_from_symplectic: not an automorphism of T");
  if (!d.beta.preserved_by(mu)) throw MorphismError("division_aut_from_symplectic: mu does not preserve beta");
  const StructAlgebra& a = d.algebra;
  std::vector<Vec> gens, imgs;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    AbElem e = g.generator(i);
    gens.push_back(a.basis(g.index_of(e)));
    auto img = power_normalize(a, a.basis(g.index_of(mu.apply(e))), static_cast<int>(g.modulus(i)));
    if (!img) throw MorphismError("division_aut_from_symplectic: cannot normalize the image of a generator");
    imgs.push_back(*img);
  }
  Extension ext = extend_from_generators(a, gens, imgs);
  if (!ext) throw MorphismError("division_aut_from_symplectic: " + ext.failure);
  return *ext.aut;
}

AlgAutomorphism monomial_automorphism(const MatrixAlgebraMDk& m, const std::vector<std::size_t>& pi,
                                      const std::vector<std::size_t>& dlist, const AlgAutomorphism& psi0) {
  const std::size_t k = m.k;
  const PauliAlgebra& dd = m.division;
  const StructAlgebra& d = dd.algebra;
  const std::size_t nt = d.dim();
  if (pi.size() != k || dlist.size() != k) throw MorphismError("monomial_automorphism: need k entries");
  std::vector<bool> seen(k, false);
  for (auto p : pi) {
    if (p >= k || seen[p]) throw MorphismError("monomial_automorphism: pi is not a permutation");
    seen[p] = true;
  }
  for (auto t : dlist)
    if (t >= nt) throw MorphismError("monomial_automorphism: d_i must be a homogeneous basis element");
  std::vector<Vec> dv, dinv;
  for (auto t : dlist) {
    dv.push_back(d.basis(t));
    dinv.push_back(basis_inverse(dd, t));
  }
  Mat out(m.algebra.dim(), m.algebra.dim());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t < nt; ++t) {
        Vec y = d.mul(d.mul(dv[i], psi0.apply(d.basis(t))), dinv[j]);
        for (std::size_t s = 0; s < nt; ++s)
          if (!y[s].is_zero()) out(m.index(pi[i], pi[j], s), m.index(i, j, t)) = y[s];
      }
  return automorphism_check(m.algebra, out);
}

// ---------------------------------------------------------------------------
// Extension from generators

std::optional<Vec> power_normalize(const StructAlgebra& a, const Vec& x, int m) {
  Vec p = x;
  for (int k = 1; k < m; ++k) p = a.mul(p, x);
  if (!a.has_unit()) return std::nullopt;
  const Vec& u = a.unit();
  std::size_t u0 = nonzero_indices(u).front();
  CycScalar lam = p[u0] / u[u0];
  if (lam.is_zero() || p != lam * u) return std::nullopt;
  const int N = a.conductor();
  for (int j = 0; j < N; ++j) {
    CycScalar z = CycScalar::root_of_unity(N, j);
    CycScalar mu = lam * z.pow(m);
    if (!mu.is_rational()) continue;
    Rational r;
    if (!rational_root(mu.rational_value(), m, r)) continue;
    return (z / CycScalar(r, N)) * x;
  }
  return std::nullopt;
}

Extension extend_from_generators(const StructAlgebra& a, const std::vector<Vec>& gens, const std::vector<Vec>& images,
                                 WordOrder order) {
  Extension ext;
  if (gens.size() != images.size()) {
    ext.failure = "generator and image lists differ in length";
    return ext;
  }
  const std::size_t n = a.dim();
  EchelonSpan span(n);
  std::vector<std::pair<Vec, Vec>> words;
  auto add = [&](Vec v, Vec img) {
    Vec res;
    if (span.insert(v, img, &res)) {
      words.emplace_back(std::move(v), std::move(img));
      return true;
    }
    return is_zero(res);
  };
  if (a.has_unit() && !add(a.unit(), a.unit())) {
    ext.failure = "inconsistent";
    return ext;
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!add(gens[i], images[i])) {
      ext.failure = "inconsistent";
      return ext;
    }
  std::size_t frontier = 0;
  while (span.size() < n) {
    const std::size_t end = words.size();
    for (std::size_t p = 0; p < end && span.size() < n; ++p)
      for (std::size_t q = 0; q < end && span.size() < n; ++q) {
        std::size_t i = order == WordOrder::Forward ? p : end - 1 - p;
        std::size_t j = order == WordOrder::Forward ? q : end - 1 - q;
        if (i < frontier && j < frontier) continue;
        Vec v = a.mul(words[i].first, words[j].first);
        Vec img = a.mul(words[i].second, words[j].second);
        if (!add(std::move(v), std::move(img))) {
          ext.failure = "inconsistent";
          return ext;
        }
      }
    if (words.size() == end && span.size() < n) {
      ext.failure = "not generating";
      return ext;
    }
    frontier = end;
  }
  Mat m(n, n);
  for (std::size_t k = 0; k < n; ++k) m.set_column(k, *span.image(a.basis(k)));
  if (auto f = automorphism_failure(a, m)) {
    ext.failure = *f;
    return ext;
  }
  ext.aut = AlgAutomorphism{a.name(), m, true};
  return ext;
}

namespace {

std::map<AbElem, std::size_t> one_dim_components(const Grading& g) {
  std::map<AbElem, std::size_t> at;
  SupportTable t = support(g);
  for (const auto& e : t.entries)
    if (e.dim() == 1) at[e.degree] = e.basis[0];
  return at;
}

}  // namespace

Extension octonion_aut_from_group_aut(const Grading& cd, const AbHom& mu) {
  Extension ext;
  const StructAlgebra& c = cd.algebra;
  auto at = one_dim_components(cd);
  std::vector<Vec> gens, imgs;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string w = "w" + std::to_string(i + 1);
    gens.push_back(c.basis(w));
    AbElem target = mu.apply(cd.degree[c.index_of(w)]);
    auto it = at.find(target);
    if (cd.group.is_zero(target) || it == at.end()) {
      ext.failure = "mu is not an automorphism";
      return ext;
    }
    auto img = power_normalize(c, c.basis(it->second), 2);
    if (!img) {
      ext.failure = "no square-one element in the target component";
      return ext;
    }
    imgs.push_back(*img);
  }
  return extend_from_generators(c, gens, imgs);
}

std::optional<CycScalar> associativity_defect(const StructAlgebra& a, const Vec& x1, const Vec& x2, const Vec& x3) {
  Vec l = a.mul(a.mul(x1, x2), x3);
  Vec r = a.mul(x1, a.mul(x2, x3));
  auto nz = nonzero_indices(r);
  if (nz.empty()) return std::nullopt;
  CycScalar lam = l[nz[0]] / r[nz[0]];
  if (l != lam * r) return std::nullopt;
  return lam;
}

Extension realize_z33(const Z33Data& z, const AbHom& mu) {
  Extension ext;
  const Grading& g = z.grading;
  const StructAlgebra& a = g.algebra;
  static thread_local std::map<AbElem, std::size_t> at;
  at = one_dim_components(g);
  std::vector<Vec> gens, imgs;
  for (std::size_t idx : {z.X1, z.X2, z.X3}) {
    gens.push_back(a.basis(idx));
    AbElem target = mu.apply(g.degree[idx]);
    if (g.group.is_zero(target)) {
      ext.failure = "mu is not an automorphism";
      return ext;
    }
    imgs.push_back(a.basis(at.at(target)));  // basis elements already satisfy X^3 = 1
  }
  return extend_from_generators(a, gens, imgs);
}

}  // namespace fgw
