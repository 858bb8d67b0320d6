#include "fgw/algebras.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace fgw {

SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.push_back({static_cast<std::uint32_t>(i), v[i]});
  return s;
}

Vec to_dense(const SparseVec& s, std::size_t n, int conductor) {
  Vec v = zero_vec(n, conductor);
  for (const auto& t : s) v[t.index] += t.coeff;
  return v;
}

// ---------------------------------------------------------------------------
// StructAlgebra

std::size_t StructAlgebra::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw AlgebraError("no basis element labeled " + label + " in " + name());
  return static_cast<std::size_t>(it - labels_.begin());
}

const Vec& StructAlgebra::unit() const {
  if (!opts_.unit) throw AlgebraError(name() + " has no unit");
  return *opts_.unit;
}

const Mat& StructAlgebra::norm_polar() const {
  if (!opts_.norm_polar) throw AlgebraError(name() + " has no norm");
  return *opts_.norm_polar;
}

Vec StructAlgebra::scalar(const CycScalar& c) const { return c * unit(); }

Vec StructAlgebra::mul(const Vec& x, const Vec& y) const {
  const std::size_t n = dim();
  Vec out = zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const SparseVec& p = table_[i * n + j];
      if (p.empty()) continue;
      CycScalar c = x[i] * y[j];
      for (const auto& t : p) out[t.index] += c * t.coeff;
    }
  }
  return out;
}

CycScalar StructAlgebra::polar(const Vec& x, const Vec& y) const {
  const Mat& m = norm_polar();
  CycScalar s = CycScalar::zero(conductor());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j)
      if (!y[j].is_zero() && !m(i, j).is_zero()) s += x[i] * m(i, j) * y[j];
  }
  return s;
}

CycScalar StructAlgebra::norm(const Vec& x) const { return polar(x, x) * CycScalar(Rational(1, 2)); }

CycScalar StructAlgebra::trace(const Vec& x) const {
  if (!opts_.trace) throw AlgebraError(name() + " has no trace form");
  CycScalar s = CycScalar::zero(conductor());
  for (std::size_t i = 0; i < dim(); ++i)
    if (!x[i].is_zero() && !(*opts_.trace)[i].is_zero()) s += x[i] * (*opts_.trace)[i];
  return s;
}

std::string StructAlgebra::format(const Vec& x) const {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    std::string c = x[i].to_string();
    c = c.substr(c.find(']') + 2);
    bool simple = c.find_first_of("+z") == std::string::npos;
    if (!out.empty()) out += " + ";
    if (c == "1")
      out += labels_[i];
    else
      out += (simple ? c : "(" + c + ")") + "*" + labels_[i];
  }
  return out.empty() ? "0" : out;
}

namespace {

SparseVec normalize_sparse(SparseVec s, std::size_t n) {
  std::sort(s.begin(), s.end(), [](const SparseTerm& a, const SparseTerm& b) { return a.index < b.index; });
  SparseVec out;
  for (auto& t : s) {
    if (t.index >= n) throw AlgebraError("structure constant refers to a basis index out of range");
    if (!out.empty() && out.back().index == t.index)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
    if (out.back().coeff.is_zero()) out.pop_back();
  }
  return out;
}

}  // namespace

StructAlgebra algebra_from_table(std::vector<std::string> labels, std::vector<SparseVec> table, AlgebraOptions opts) {
  const std::size_t n = labels.size();
  if (table.size() != n * n) throw AlgebraError("structure constant table has wrong size");
  StructAlgebra a;
  a.labels_ = std::move(labels);
  for (auto& p : table) p = normalize_sparse(std::move(p), n);
  a.table_ = std::move(table);
  a.opts_ = std::move(opts);
  const std::string& nm = a.opts_.name;
  if (a.opts_.unit && a.opts_.unit->size() != n) throw AlgebraError(nm + ": unit has wrong length");
  if (a.opts_.norm_polar && (a.opts_.norm_polar->rows() != n || a.opts_.norm_polar->cols() != n))
    throw AlgebraError(nm + ": norm matrix has wrong shape");
  if (a.opts_.trace && a.opts_.trace->size() != n) throw AlgebraError(nm + ": trace form has wrong length");
  if (!a.opts_.degree_hint.empty() && a.opts_.degree_hint.size() != n)
    throw AlgebraError(nm + ": degree hint has wrong length");

  if (a.opts_.unit) {
    const Vec& u = *a.opts_.unit;
    for (std::size_t i = 0; i < n; ++i) {
      Vec b = a.basis(i);
      if (a.mul(u, b) != b || a.mul(b, u) != b)
        throw AlgebraError(nm + ": declared unit is not a unit (fails on " + a.labels_[i] + ")");
    }
  }
  if (a.opts_.norm_polar) {
    const Mat& m = *a.opts_.norm_polar;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m(i, j) != m(j, i)) throw AlgebraError(nm + ": norm polar matrix is not symmetric");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec& p = a.table_[i * n + j];
      const SparseVec& q = a.table_[j * n + i];
      if (a.opts_.commutative && !(p == q))
        throw AlgebraError(nm + ": not commutative on " + a.labels_[i] + ", " + a.labels_[j]);
      if (a.opts_.anticommutative) {
        SparseVec mq = q;
        for (auto& t : mq) t.coeff = -t.coeff;
        if (!(p == mq)) throw AlgebraError(nm + ": not anticommutative on " + a.labels_[i] + ", " + a.labels_[j]);
      }
    }
  if (a.opts_.composition) {
    if (!a.opts_.norm_polar) throw AlgebraError(nm + ": composition declared without a norm");
    auto check = [&](const Vec& x, const Vec& y) {
      if (a.norm(a.mul(x, y)) != a.norm(x) * a.norm(y))
        throw AlgebraError(nm + ": composition property fails on " + a.format(x) + ", " + a.format(y));
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) check(a.basis(i), a.basis(j));
    std::mt19937 g(7);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
      Vec x = a.zero(), y = a.zero();
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = CycScalar(Rational(c(g)), a.conductor());
        y[i] = CycScalar(Rational(c(g)), a.conductor());
      }
      check(x, y);
    }
  }
  return a;
}

StructAlgebra rebase(const StructAlgebra& a, const std::vector<Vec>& vectors, std::vector<std::string> labels,
                     const std::string& name) {
  const std::size_t n = a.dim();
  if (vectors.size() != n || labels.size() != n) throw AlgebraError("rebase: need dim() vectors and labels");
  Mat p = Mat::from_columns(vectors);
  auto pinv = p.inverse();
  if (!pinv) throw AlgebraError("rebase: vectors are not a basis");
  std::vector<SparseVec> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = to_sparse(pinv->apply(a.mul(vectors[i], vectors[j])));
  AlgebraOptions o = a.options();
  o.name = name;
  o.degree_hint.clear();
  if (o.unit) o.unit = pinv->apply(*o.unit);
  if (o.norm_polar) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a.polar(vectors[i], vectors[j]);
    o.norm_polar = m;
  }
  if (o.trace) {
    Vec t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = a.trace(vectors[i]);
    o.trace = t;
  }
  return algebra_from_table(std::move(labels), std::move(table), std::move(o));
}

// ---------------------------------------------------------------------------
// Cayley algebra

namespace {

enum : std::size_t { E1 = 0, E2 = 1, U1 = 2, U2 = 3, U3 = 4, V1 = 5, V2 = 6, V3 = 7 };

std::size_t u_of(std::size_t i) { return U1 + (i % 3); }
std::size_t v_of(std::size_t i) { return V1 + (i % 3); }

}  // namespace

StructAlgebra cayley_good_basis(int conductor) {
  const std::size_t n = 8;
  std::vector<SparseVec> t(n * n);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long s) {
    t[i * n + j] = {{static_cast<std::uint32_t>(k), CycScalar(Rational(s), conductor)}};
  };
  set(E1, E1, E1, 1);
  set(E2, E2, E2, 1);
  for (std::size_t i = 0; i < 3; ++i) {
    set(E1, u_of(i), u_of(i), 1);
    set(u_of(i), E2, u_of(i), 1);
    set(E2, v_of(i), v_of(i), 1);
    set(v_of(i), E1, v_of(i), 1);
    set(u_of(i), v_of(i), E1, -1);
    set(v_of(i), u_of(i), E2, -1);
    set(u_of(i), u_of(i + 1), v_of(i + 2), 1);
    set(u_of(i + 1), u_of(i), v_of(i + 2), -1);
    set(v_of(i), v_of(i + 1), u_of(i + 2), 1);
    set(v_of(i + 1), v_of(i), u_of(i + 2), -1);
  }
  AlgebraOptions o;
  o.name = "cayley";
  o.conductor = conductor;
  Vec unit = zero_vec(n, conductor);
  unit[E1] = unit[E2] = CycScalar::one(conductor);
  o.unit = unit;
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = CycScalar::zero(conductor);
  m(E1, E2) = m(E2, E1) = CycScalar::one(conductor);
  for (std::size_t i = 0; i < 3; ++i) m(u_of(i), v_of(i)) = m(v_of(i), u_of(i)) = CycScalar::one(conductor);
  o.norm_polar = m;
  o.trace = m.apply(unit);
  o.composition = true;
  return algebra_from_table({"e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"}, std::move(t), std::move(o));
}

Vec conjugate(const StructAlgebra& c, const Vec& x) {
  if (!c.has_unit() || !c.has_norm()) throw AlgebraError("conjugation needs a unit and a norm");
  return c.polar(x, c.unit()) * c.unit() - x;
}

StructAlgebra cd_field(int conductor) {
  AlgebraOptions o;
  o.name = "F";
  o.conductor = conductor;
  o.unit = Vec{CycScalar::one(conductor)};
  Mat m(1, 1);
  m(0, 0) = CycScalar(Rational(2), conductor);
  o.norm_polar = m;
  o.trace = Vec{CycScalar(Rational(2), conductor)};
  o.commutative = true;
  o.composition = true;
  o.degree_hint = {{}};
  return algebra_from_table({"1"}, {{{0, CycScalar::one(conductor)}}}, std::move(o));
}

StructAlgebra cd_double(const StructAlgebra& q, const CycScalar& alpha, const std::string& gen) {
  const std::size_t d = q.dim();
  if (alpha.is_zero()) throw AlgebraError("cd_double: alpha must be nonzero");
  if (d == 8) throw AlgebraError("cd_double: doubling past dimension 8 is not supported");
  if (d != 1 && d != 2 && d != 4) throw AlgebraError("cd_double: input must have dimension 1, 2 or 4");
  if (!q.has_unit() || !q.has_norm()) throw AlgebraError("cd_double: input needs a unit and a norm");
  const int N = q.conductor();
  const std::size_t n = 2 * d;
  std::vector<Vec> conj(d);
  for (std::size_t j = 0; j < d; ++j) conj[j] = conjugate(q, q.basis(j));
  auto shifted = [&](const Vec& v, std::size_t off, const CycScalar& s) {
    SparseVec out;
    for (std::size_t k = 0; k < d; ++k)
      if (!v[k].is_zero()) out.push_back({static_cast<std::uint32_t>(k + off), s * v[k]});
    return out;
  };
  const CycScalar one = CycScalar::one(N);
  std::vector<SparseVec> t(n * n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec bi = q.basis(i), bj = q.basis(j);
      t[i * n + j] = shifted(q.mul(bi, bj), 0, one);
      t[i * n + (j + d)] = shifted(q.mul(bj, bi), d, one);              // q_i (q_j u) = (q_j q_i) u
      t[(i + d) * n + j] = shifted(q.mul(bi, conj[j]), d, one);         // (q_i u) q_j = (q_i conj q_j) u
      t[(i + d) * n + (j + d)] = shifted(q.mul(conj[j], bi), 0, -alpha);  // (q_i u)(q_j u) = -alpha conj(q_j) q_i
    }
  std::vector<std::string> labels = q.labels();
  for (std::size_t i = 0; i < d; ++i) labels.push_back(q.labels()[i] == "1" ? gen : q.labels()[i] + gen);
  AlgebraOptions o;
  o.name = "CD(" + q.name() + ")";
  o.conductor = N;
  Vec unit = zero_vec(n, N);
  for (std::size_t i = 0; i < d; ++i) unit[i] = q.unit()[i];
  o.unit = unit;
  Mat m(n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      m(i, j) = q.norm_polar()(i, j);
      m(i + d, j + d) = alpha * q.norm_polar()(i, j);
    }
  o.norm_polar = m;
  o.trace = m.apply(unit);
  o.commutative = d == 1;
  o.composition = true;
  for (std::size_t i = 0; i < d; ++i) {
    auto h = q.degree_hint().empty() ? std::vector<std::int64_t>{} : q.degree_hint()[i];
    h.push_back(0);
    o.degree_hint.push_back(h);
  }
  for (std::size_t i = 0; i < d; ++i) {
    auto h = q.degree_hint().empty() ? std::vector<std::int64_t>{} : q.degree_hint()[i];
    h.push_back(1);
    o.degree_hint.push_back(h);
  }
  return algebra_from_table(std::move(labels), std::move(t), std::move(o));
}

StructAlgebra cayley_cd_basis(int conductor) {
  const CycScalar m1(Rational(-1), conductor);
  StructAlgebra k = cd_double(cd_field(conductor), m1, "w1");
  StructAlgebra q = cd_double(k, m1, "w2");
  StructAlgebra c = cd_double(q, m1, "w3");
  AlgebraOptions o = c.options();
  o.name = "cayley_cd";
  std::vector<SparseVec> t;
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = 0; j < c.dim(); ++j) t.push_back(c.product(i, j));
  return algebra_from_table(c.labels(), std::move(t), std::move(o));
}

std::vector<Vec> cd_generators_in_good_basis(const StructAlgebra& good) {
  return {good.basis(E1) - good.basis(E2), good.basis(U1) - good.basis(V1), good.basis(U2) - good.basis(V2)};
}

Mat cayley_tau(const StructAlgebra& good) {
  const int N = good.conductor();
  Mat m(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) m(i, j) = CycScalar::zero(N);
  m(E1, E1) = m(E2, E2) = CycScalar::one(N);
  for (std::size_t i = 0; i < 3; ++i) {
    m(u_of(i + 1), u_of(i)) = CycScalar::one(N);
    m(v_of(i + 1), v_of(i)) = CycScalar::one(N);
  }
  return m;
}

std::vector<SparseVec> okubo_reference_table(int conductor) {
  // rows/columns in the order e1 e2 u1 v1 u2 v2 u3 v3
  static const char* const kTable[8][8] = {
      {"e2", "0", "0", "-v3", "0", "-v1", "0", "-v2"},
      {"0", "e1", "-u3", "0", "-u1", "0", "-u2", "0"},
      {"-u2", "0", "v1", "0", "-v3", "0", "0", "-e1"},
      {"0", "-v2", "0", "u1", "0", "-u3", "-e2", "0"},
      {"-u3", "0", "0", "-e1", "v2", "0", "-v1", "0"},
      {"0", "-v3", "-e2", "0", "0", "u2", "0", "-u1"},
      {"-u1", "0", "-v2", "0", "0", "-e1", "v3", "0"},
      {"0", "-v1", "0", "-u2", "-e2", "0", "0", "u3"},
  };
  static const std::size_t kOrder[8] = {E1, E2, U1, V1, U2, V2, U3, V3};
  static const char* const kNames[8] = {"e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"};
  std::vector<SparseVec> t(64);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) {
      std::string s = kTable[r][c];
      if (s == "0") continue;
      long sign = 1;
      if (s[0] == '-') sign = -1, s = s.substr(1);
      std::size_t k = static_cast<std::size_t>(std::find(kNames, kNames + 8, s) - kNames);
      t[kOrder[r] * 8 + kOrder[c]] = {{static_cast<std::uint32_t>(k), CycScalar(Rational(sign), conductor)}};
    }
  return t;
}

StructAlgebra okubo_algebra(int conductor) {
  StructAlgebra c = cayley_good_basis(conductor);
  Mat tau = cayley_tau(c);
  Mat tau2 = tau * tau;
  std::vector<SparseVec> t(64);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      Vec x = tau.apply(conjugate(c, c.basis(i)));
      Vec y = tau2.apply(conjugate(c, c.basis(j)));
      t[i * 8 + j] = to_sparse(c.mul(x, y));
    }
  std::vector<SparseVec> ref = okubo_reference_table(conductor);
  for (std::size_t k = 0; k < 64; ++k)
    if (!(t[k] == ref[k]))
      throw AlgebraError("okubo_algebra: formula disagrees with the reference table at " + c.labels()[k / 8] + " * " +
                         c.labels()[k % 8]);
  AlgebraOptions o;
  o.name = "okubo";
  o.conductor = conductor;
  o.norm_polar = c.norm_polar();
  o.composition = true;
  StructAlgebra ok = algebra_from_table(c.labels(), std::move(t), std::move(o));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      for (std::size_t k = 0; k < 8; ++k) {
        Vec x = ok.basis(i), y = ok.basis(j), z = ok.basis(k);
        if (ok.polar(ok.mul(x, y), z) != ok.polar(x, ok.mul(y, z)))
          throw AlgebraError("okubo_algebra: norm is not associative");
      }
  return ok;
}

// ---------------------------------------------------------------------------
// Albert algebra

StructAlgebra albert_algebra(const StructAlgebra& c) {
  if (c.dim() != 8 || !c.has_unit() || !c.has_norm())
    throw AlgebraError("albert_algebra: need an 8-dimensional composition algebra with unit and norm");
  const int N = c.conductor();
  const std::size_t n = 27;
  std::vector<Vec> conj(8);
  for (std::size_t k = 0; k < 8; ++k) conj[k] = conjugate(c, c.basis(k));
  std::vector<SparseVec> t(n * n);
  auto at = [&](std::size_t a, std::size_t b) -> SparseVec& { return t[a * n + b]; };
  const CycScalar half(Rational(1, 2), N), one = CycScalar::one(N);
  auto nxt = [](std::size_t i, std::size_t s) { return (i - 1 + s) % 3 + 1; };
  for (std::size_t a = 1; a <= 3; ++a) at(albert_E(a), albert_E(a)) = {{static_cast<std::uint32_t>(albert_E(a)), one}};
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t k = 0; k < 8; ++k) {
      const auto ik = static_cast<std::uint32_t>(albert_iota(i, k));
      for (std::size_t s = 1; s <= 2; ++s) {
        std::size_t a = albert_E(nxt(i, s));
        at(a, ik) = {{ik, half}};
        at(ik, a) = {{ik, half}};
      }
      for (std::size_t l = 0; l < 8; ++l) {
        CycScalar w = CycScalar(Rational(2), N) * c.norm_polar()(k, l);
        if (!w.is_zero())
          at(ik, albert_iota(i, l)) = {{static_cast<std::uint32_t>(albert_E(nxt(i, 1))), w},
                                       {static_cast<std::uint32_t>(albert_E(nxt(i, 2))), w}};
        Vec p = c.mul(conj[k], conj[l]);
        SparseVec s;
        for (std::size_t m = 0; m < 8; ++m)
          if (!p[m].is_zero()) s.push_back({static_cast<std::uint32_t>(albert_iota(nxt(i, 2), m)), p[m]});
        at(ik, albert_iota(nxt(i, 1), l)) = s;
        at(albert_iota(nxt(i, 1), l), ik) = s;
      }
    }
  std::vector<std::string> labels{"E1", "E2", "E3"};
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t k = 0; k < 8; ++k) labels.push_back("i" + std::to_string(i) + "(" + c.labels()[k] + ")");
  AlgebraOptions o;
  o.name = "albert(" + c.name() + ")";
  o.conductor = N;
  Vec unit = zero_vec(n, N);
  for (std::size_t a = 1; a <= 3; ++a) unit[albert_E(a)] = one;
  o.unit = unit;
  o.trace = unit;
  o.commutative = true;
  return algebra_from_table(std::move(labels), std::move(t), std::move(o));
}

Vec albert_embed(const StructAlgebra& albert, std::size_t i, const Vec& x) {
  Vec v = albert.zero();
  const std::size_t cdim = (albert.dim() - 3) / 3;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!x[k].is_zero()) v[albert_iota(i, k, cdim)] = x[k];
  return v;
}

// ---------------------------------------------------------------------------
// Pauli matrices

MonomialMatrix MonomialMatrix::operator*(const MonomialMatrix& o) const {
  if (root_order != o.root_order || rows.size() != o.rows.size())
    throw AlgebraError("monomial matrices do not match");
  MonomialMatrix r;
  r.root_order = root_order;
  r.rows.resize(rows.size());
  r.exps.resize(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::uint32_t mid = o.rows[k];
    r.rows[k] = rows[mid];
    r.exps[k] = (exps[mid] + o.exps[k]) % root_order;
  }
  return r;
}

Mat MonomialMatrix::dense(int conductor) const {
  const std::size_t n = rows.size();
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = CycScalar::zero(conductor);
  for (std::size_t k = 0; k < n; ++k)
    m(rows[k], k) = CycScalar::root_of_unity(conductor, exps[k] * (conductor / root_order));
  return m;
}

int pauli_conductor(const std::vector<std::int64_t>& ls) {
  std::int64_t n = 24;
  for (auto l : ls) n = lcm_i64(n, 2 * l);
  return static_cast<int>(n);
}

namespace {

struct PauliGenerators {
  std::int64_t size = 1, L = 1;
  std::vector<MonomialMatrix> gens;  // X_a1, X_b1, X_a2, ...
};

PauliGenerators pauli_generators(const std::vector<std::int64_t>& ls) {
  PauliGenerators pg;
  for (auto l : ls) {
    pg.size *= l;
    pg.L = lcm_i64(pg.L, l);
  }
  const std::size_t n = static_cast<std::size_t>(pg.size);
  std::int64_t stride = pg.size;
  for (auto l : ls) {
    stride /= l;
    MonomialMatrix x, y;
    x.root_order = y.root_order = pg.L;
    x.rows.resize(n);
    x.exps.resize(n);
    y.rows.resize(n);
    y.exps.assign(n, 0);
    for (std::size_t col = 0; col < n; ++col) {
      std::int64_t j = (static_cast<std::int64_t>(col) / stride) % l;
      x.rows[col] = static_cast<std::uint32_t>(col);
      x.exps[col] = (pg.L / l) * (l - 1 - j);
      // Y e_j = e_{j-1}
      std::int64_t jm = (j + l - 1) % l;
      y.rows[col] = static_cast<std::uint32_t>(static_cast<std::int64_t>(col) + (jm - j) * stride);
    }
    pg.gens.push_back(x);
    pg.gens.push_back(y);
  }
  return pg;
}

MonomialMatrix monomial_identity(std::size_t n, std::int64_t L) {
  MonomialMatrix m;
  m.root_order = L;
  m.rows.resize(n);
  m.exps.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) m.rows[k] = static_cast<std::uint32_t>(k);
  return m;
}

// X_s X_t = zeta_L^c X_{s+t}; returns c.
std::int64_t pauli_cocycle(const MonomialMatrix& prod, const MonomialMatrix& target) {
  std::int64_t c = ((prod.exps[0] - target.exps[0]) % prod.root_order + prod.root_order) % prod.root_order;
  for (std::size_t k = 0; k < prod.rows.size(); ++k)
    if (prod.rows[k] != target.rows[k] ||
        ((prod.exps[k] - target.exps[k] - c) % prod.root_order + prod.root_order) % prod.root_order != 0)
      throw AlgebraError("Pauli product is not a multiple of the expected basis matrix");
  return c;
}

}  // namespace

PauliAlgebra pauli_matrix_algebra(const std::vector<std::int64_t>& ls, std::int64_t bound) {
  std::int64_t ell = 1;
  for (auto l : ls) {
    if (l < 2) throw AlgebraError("pauli_matrix_algebra: l_i must be >= 2");
    ell *= l;
  }
  if (ell > bound)
    throw BoundExceeded("matrix size " + std::to_string(ell) + " exceeds bound " + std::to_string(bound),
                        static_cast<std::uint64_t>(bound));
  PauliAlgebra pa;
  pa.ls = ls;
  SymplecticGroupData sd = standard_bicharacter(ls);
  pa.group = sd.group;
  pa.beta = sd.beta;
  PauliGenerators pg = pauli_generators(ls);
  const int N = pauli_conductor(ls);
  const auto elems = pa.group.elements();
  for (const auto& t : elems) {
    MonomialMatrix m = monomial_identity(static_cast<std::size_t>(ell), pg.L);
    for (std::size_t g = 0; g < t.coords.size(); ++g)
      for (std::int64_t p = 0; p < t.coords[g]; ++p) m = m * pg.gens[g];
    pa.matrices.push_back(m);
  }
  const std::size_t n = elems.size();
  std::vector<SparseVec> table(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t u = pa.group.index_of(pa.group.add(elems[s], elems[t]));
      std::int64_t c = pauli_cocycle(pa.matrices[s] * pa.matrices[t], pa.matrices[u]);
      table[s * n + t] = {{static_cast<std::uint32_t>(u), CycScalar::root_of_unity(N, c * (N / pg.L))}};
    }
  std::vector<std::string> labels;
  for (const auto& t : elems) labels.push_back("X" + t.to_string());
  AlgebraOptions o;
  o.name = "pauli" + AbGroup(0, ls).to_string();
  o.conductor = N;
  o.unit = unit_vec(n, 0, N);
  Vec tr = zero_vec(n, N);
  tr[0] = CycScalar(Rational(ell), N);
  o.trace = tr;
  o.commutative = n == 1;
  pa.algebra = algebra_from_table(std::move(labels), std::move(table), std::move(o));
  return pa;
}

MatrixAlgebraMDk matrix_algebra_MDk(const std::vector<std::int64_t>& ls, std::size_t k, std::int64_t bound) {
  std::int64_t ell = 1;
  for (auto l : ls) ell *= l;
  if (k < 1) throw AlgebraError("matrix_algebra_MDk: k must be positive");
  if (static_cast<std::int64_t>(k) * ell > bound)
    throw BoundExceeded("matrix size " + std::to_string(static_cast<std::int64_t>(k) * ell) + " exceeds bound " +
                            std::to_string(bound),
                        static_cast<std::uint64_t>(bound));
  MatrixAlgebraMDk out;
  out.k = k;
  out.division = pauli_matrix_algebra(ls, bound);
  const StructAlgebra& d = out.division.algebra;
  const std::size_t nt = d.dim();
  const std::size_t n = k * k * nt;
  const int N = d.conductor();
  std::vector<SparseVec> table(n * n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t m = 0; m < k; ++m)
        for (std::size_t s = 0; s < nt; ++s)
          for (std::size_t t = 0; t < nt; ++t) {
            SparseVec p = d.product(s, t);
            for (auto& term : p) term.index = static_cast<std::uint32_t>(out.index(i, m, term.index));
            table[out.index(i, j, s) * n + out.index(j, m, t)] = std::move(p);
          }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t < nt; ++t)
        labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1) + "*" + d.labels()[t]);
  AlgebraOptions o;
  o.name = "M" + std::to_string(k) + "(" + d.name() + ")";
  o.conductor = N;
  Vec unit = zero_vec(n, N), tr = zero_vec(n, N);
  for (std::size_t i = 0; i < k; ++i) {
    unit[out.index(i, i, 0)] = CycScalar::one(N);
    tr[out.index(i, i, 0)] = CycScalar(Rational(ell), N);
  }
  o.unit = unit;
  o.trace = tr;
  out.algebra = algebra_from_table(std::move(labels), std::move(table), std::move(o));
  return out;
}

// ---------------------------------------------------------------------------
// Powers and the cubic fit

Vec jordan_power(const StructAlgebra& a, const Vec& x, int k) {
  switch (k) {
    case 0:
      return a.unit();
    case 1:
      return x;
    case 2:
      return a.mul(x, x);
    case 3:
      return a.mul(a.mul(x, x), x);
    default:
      throw AlgebraError("jordan_power: k must be at most 3");
  }
}

CubicFit cubic_fit(const StructAlgebra& a, const Vec& x) {
  const int N = a.conductor();
  EchelonSpan span(a.dim());
  std::vector<Vec> powers{jordan_power(a, x, 0), x, jordan_power(a, x, 2)};
  powers.push_back(a.mul(powers[2], x));
  CubicFit fit;
  for (std::size_t k = 0; k < 4; ++k) {
    Vec residual;
    if (span.insert(powers[k], unit_vec(4, k, N), &residual)) continue;
    if (k < 3) {
      fit.degenerate = true;
      fit.dependency.assign(residual.begin(), residual.begin() + 3);
      return fit;
    }
    fit.t = -residual[2];
    fit.s = residual[1];
    fit.n = -residual[0];
    return fit;
  }
  throw AlgebraError("cubic_fit: X^3 is not in the span of 1, X, X^2");
}

// ---------------------------------------------------------------------------
// The E, Et, S+-, nu basis of the Albert algebra

namespace {

struct NuMaps {
  const StructAlgebra& A;
  const StructAlgebra& C;
  CycScalar i4;
  Vec E() const { return A.basis(albert_E(1)); }
  Vec Et() const { return A.basis(albert_E(2)) + A.basis(albert_E(3)); }
  Vec S(int sign) const {
    CycScalar c = CycScalar(Rational(sign, 2), A.conductor()) * i4;
    return A.basis(albert_E(3)) - A.basis(albert_E(2)) + c * albert_embed(A, 1, C.unit());
  }
  Vec nu(const Vec& a) const { return i4 * albert_embed(A, 1, a); }
  Vec nu_pm(int sign, const Vec& x) const {
    CycScalar s = sign > 0 ? i4 : -i4;
    return albert_embed(A, 2, x) + s * albert_embed(A, 3, conjugate(C, x));
  }
};

void require_cd(const StructAlgebra& albert, const StructAlgebra& cd) {
  if (cd.labels() != std::vector<std::string>{"1", "w1", "w2", "w1w2", "w3", "w1w3", "w2w3", "w1w2w3"})
    throw AlgebraError("albert_nu_basis: expected the Cayley-Dickson basis");
  if (albert.dim() != 27 || albert.labels()[3] != "i1(1)")
    throw AlgebraError("albert_nu_basis: expected the Albert algebra over the Cayley-Dickson basis");
  if (albert.conductor() % 4 != 0) throw AlgebraError("albert_nu_basis: conductor must contain a 4th root of unity");
}

}  // namespace

std::vector<std::string> nu_identity_failures(const StructAlgebra& A, const StructAlgebra& C, NuCrossSign cross) {
  require_cd(A, C);
  const int N = A.conductor();
  NuMaps m{A, C, CycScalar::root_of_unity(N, N / 4)};
  std::vector<std::string> fails;
  auto expect = [&](const std::string& what, const Vec& got, const Vec& want) {
    if (got != want) fails.push_back(what);
  };
  auto mul = [&](const Vec& x, const Vec& y) { return A.mul(x, y); };
  const CycScalar half(Rational(1, 2), N), two(Rational(2), N);
  const Vec zero = A.zero();
  const Vec E = m.E(), Et = m.Et(), Sp = m.S(1), Sm = m.S(-1);
  expect("E Et = 0", mul(E, Et), zero);
  expect("E S+ = 0", mul(E, Sp), zero);
  expect("E S- = 0", mul(E, Sm), zero);
  expect("Et S+ = S+", mul(Et, Sp), Sp);
  expect("Et S- = S-", mul(Et, Sm), Sm);
  expect("S+ S- = 2 Et", mul(Sp, Sm), two * Et);
  for (std::size_t ka = 1; ka < 8; ++ka) {
    Vec a = C.basis(ka);
    const std::string an = C.labels()[ka];
    Vec na = m.nu(a);
    expect("E nu(" + an + ") = 0", mul(E, na), zero);
    expect("Et nu(" + an + ") = nu", mul(Et, na), na);
    expect("S+ nu(" + an + ") = 0", mul(Sp, na), zero);
    expect("S- nu(" + an + ") = 0", mul(Sm, na), zero);
    for (std::size_t kb = 1; kb < 8; ++kb) {
      Vec b = C.basis(kb);
      expect("nu(" + an + ") nu(" + C.labels()[kb] + ")", mul(na, m.nu(b)), -two * C.polar(a, b) * Et);
    }
    for (std::size_t kx = 0; kx < 8; ++kx) {
      Vec x = C.basis(kx);
      for (int s : {1, -1}) {
        Vec want = m.nu_pm(s, C.mul(x, a));
        if (s < 0) want = -want;
        expect("nu(" + an + ") nu" + (s > 0 ? "+" : "-") + "(" + C.labels()[kx] + ")", mul(na, m.nu_pm(s, x)), want);
      }
    }
  }
  for (std::size_t kx = 0; kx < 8; ++kx) {
    Vec x = C.basis(kx);
    const std::string xn = C.labels()[kx];
    for (int s : {1, -1}) {
      const std::string sn = s > 0 ? "+" : "-";
      Vec nx = m.nu_pm(s, x);
      const Vec& S_same = s > 0 ? Sp : Sm;
      const Vec& S_other = s > 0 ? Sm : Sp;
      expect("E nu" + sn + "(" + xn + ")", mul(E, nx), half * nx);
      expect("Et nu" + sn + "(" + xn + ")", mul(Et, nx), half * nx);
      expect("S" + sn + " nu" + sn + "(" + xn + ") = 0", mul(S_same, nx), zero);
      // S^{-s} nu_s(x) = nu_{-s}(x)
      expect("S nu" + sn + "(" + xn + ") swap", mul(S_other, nx), m.nu_pm(-s, x));
      for (std::size_t ky = 0; ky < 8; ++ky) {
        Vec y = C.basis(ky);
        expect("nu" + sn + "(" + xn + ") nu" + sn + "(" + C.labels()[ky] + ")", mul(nx, m.nu_pm(s, y)),
               two * C.polar(x, y) * S_same);
      }
    }
    for (std::size_t ky = 0; ky < 8; ++ky) {
      Vec y = C.basis(ky);
      Vec d = m.nu(C.mul(conjugate(C, x), y) - C.mul(conjugate(C, y), x));
      Vec want = two * C.polar(x, y) * (two * E + Et) + (cross == NuCrossSign::Minus ? -d : d);
      expect("nu+(" + xn + ") nu-(" + C.labels()[ky] + ")", mul(m.nu_pm(1, x), m.nu_pm(-1, y)), want);
    }
  }
  return fails;
}

NuBasis albert_nu_basis(const StructAlgebra& albert, const StructAlgebra& cd) {
  require_cd(albert, cd);
  auto fails = nu_identity_failures(albert, cd);
  if (!fails.empty()) throw AlgebraError("albert_nu_basis: identity fails: " + fails.front());
  const int N = albert.conductor();
  NuMaps m{albert, cd, CycScalar::root_of_unity(N, N / 4)};
  NuBasis nb;
  std::vector<std::string> labels{"E", "Et", "S+", "S-"};
  nb.vectors = {m.E(), m.Et(), m.S(1), m.S(-1)};
  for (std::size_t k = 1; k < 8; ++k) {
    nb.vectors.push_back(m.nu(cd.basis(k)));
    labels.push_back("nu(" + cd.labels()[k] + ")");
  }
  for (int s : {1, -1})
    for (std::size_t k = 0; k < 8; ++k) {
      nb.vectors.push_back(m.nu_pm(s, cd.basis(k)));
      labels.push_back(std::string("nu") + (s > 0 ? "+" : "-") + "(" + cd.labels()[k] + ")");
    }
  nb.to_albert = Mat::from_columns(nb.vectors);
  auto inv = nb.to_albert.inverse();
  if (!inv) throw AlgebraError("albert_nu_basis: vectors are not a basis");
  nb.from_albert = *inv;
  nb.algebra = rebase(albert, nb.vectors, labels, "albert_nu");
  return nb;
}

}  // namespace fgw
