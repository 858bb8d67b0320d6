#include "fgw/abgroups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fgw {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw GroupError("integer overflow in group arithmetic");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw GroupError("integer overflow in group arithmetic");
  return r;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t abs64(std::int64_t a) { return a < 0 ? -a : a; }

// Floor division.
std::int64_t fdiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// IntMat

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IntMat::operator*: shape mismatch");
  IntMat out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::int64_t a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c)
        out(r, c) = checked_add(out(r, c), checked_mul(a, o(k, c)));
    }
  return out;
}

std::vector<std::int64_t> IntMat::apply(const std::vector<std::int64_t>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("IntMat::apply: size mismatch");
  std::vector<std::int64_t> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (v[c] != 0) out[r] = checked_add(out[r], checked_mul((*this)(r, c), v[c]));
  return out;
}

IntMat IntMat::transpose() const {
  IntMat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<std::int64_t> SmithResult::diagonal() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

struct SmithState {
  IntMat d, u, ui, v, vi;

  // row_i += q * row_t
  void row_add(std::size_t i, std::size_t t, std::int64_t q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < d.cols(); ++c) d(i, c) = checked_add(d(i, c), checked_mul(q, d(t, c)));
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = checked_add(u(i, c), checked_mul(q, u(t, c)));
    for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, t) = checked_add(ui(r, t), checked_mul(-q, ui(r, i)));
  }
  // col_j += q * col_t
  void col_add(std::size_t j, std::size_t t, std::int64_t q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, j) = checked_add(d(r, j), checked_mul(q, d(r, t)));
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, j) = checked_add(v(r, j), checked_mul(q, v(r, t)));
    for (std::size_t c = 0; c < vi.cols(); ++c) vi(t, c) = checked_add(vi(t, c), checked_mul(-q, vi(j, c)));
  }
  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < d.cols(); ++c) std::swap(d(i, c), d(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < ui.rows(); ++r) std::swap(ui(r, i), ui(r, j));
  }
  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < d.rows(); ++r) std::swap(d(r, i), d(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    for (std::size_t c = 0; c < vi.cols(); ++c) std::swap(vi(i, c), vi(j, c));
  }
  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < d.cols(); ++c) d(i, c) = -d(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    for (std::size_t r = 0; r < ui.rows(); ++r) ui(r, i) = -ui(r, i);
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMat& m) {
  const std::size_t n = m.rows(), k = m.cols();
  SmithState s{m, IntMat::identity(n), IntMat::identity(n), IntMat::identity(k), IntMat::identity(k)};
  for (std::size_t t = 0; t < std::min(n, k); ++t) {
    for (;;) {
      // smallest nonzero entry of the remaining block goes to (t, t)
      std::size_t pr = n, pc = k;
      for (std::size_t r = t; r < n; ++r)
        for (std::size_t c = t; c < k; ++c)
          if (s.d(r, c) != 0 && (pr == n || abs64(s.d(r, c)) < abs64(s.d(pr, pc)))) pr = r, pc = c;
      if (pr == n) break;
      s.row_swap(t, pr);
      s.col_swap(t, pc);
      bool dirty = false;
      const std::int64_t p = s.d(t, t);
      for (std::size_t r = t + 1; r < n; ++r) {
        if (s.d(r, t) == 0) continue;
        s.row_add(r, t, -fdiv(s.d(r, t), p));
        if (s.d(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < k; ++c) {
        if (s.d(t, c) == 0) continue;
        s.col_add(c, t, -fdiv(s.d(t, c), p));
        if (s.d(t, c) != 0) dirty = true;
      }
      if (dirty) continue;
      // divisibility repair
      std::size_t bad = n;
      for (std::size_t r = t + 1; r < n && bad == n; ++r)
        for (std::size_t c = t + 1; c < k; ++c)
          if (s.d(r, c) % p != 0) {
            bad = r;
            break;
          }
      if (bad == n) break;
      s.row_add(t, bad, 1);
    }
    if (s.d(t, t) < 0) s.row_negate(t);
  }
  return SmithResult{std::move(s.d), std::move(s.u), std::move(s.ui), std::move(s.v), std::move(s.vi)};
}

std::optional<std::vector<std::int64_t>> solve_integer(const IntMat& a, const std::vector<std::int64_t>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: size mismatch");
  SmithResult snf = smith_normal_form(a);
  std::vector<std::int64_t> c = snf.u.apply(b);
  std::vector<std::int64_t> y(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::int64_t di = i < a.cols() ? snf.d(i, i) : 0;
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % di != 0) return std::nullopt;
      y[i] = c[i] / di;
    }
  }
  return snf.v.apply(y);
}

// ---------------------------------------------------------------------------
// AbElem / AbGroup

std::string AbElem::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ')';
  return os.str();
}

std::size_t AbElemHash::operator()(const AbElem& e) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto c : e.coords) h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

AbGroup::AbGroup(int free_rank, std::vector<std::int64_t> moduli, TorsionOrder order)
    : free_rank_(free_rank), moduli_(std::move(moduli)), order_(order) {
  if (free_rank_ < 0) throw GroupError("negative free rank");
  for (auto m : moduli_)
    if (m < 2) throw GroupError("torsion moduli must be >= 2");
}

std::int64_t AbGroup::modulus(std::size_t i) const {
  if (i < static_cast<std::size_t>(free_rank_)) return 0;
  return moduli_.at(i - static_cast<std::size_t>(free_rank_));
}

std::uint64_t AbGroup::order() const {
  if (!is_finite()) throw GroupError("order of an infinite group");
  std::uint64_t o = 1;
  for (auto m : moduli_) {
    if (__builtin_mul_overflow(o, static_cast<std::uint64_t>(m), &o)) throw GroupError("group order overflow");
  }
  return o;
}

AbElem AbGroup::generator(std::size_t i) const {
  AbElem e = zero();
  e.coords.at(i) = 1;
  return e;
}

AbElem AbGroup::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != rank()) throw GroupError("element has wrong number of coordinates");
  for (std::size_t i = static_cast<std::size_t>(free_rank_); i < coords.size(); ++i)
    coords[i] = mod_pos(coords[i], modulus(i));
  return AbElem{std::move(coords)};
}

AbElem AbGroup::add(const AbElem& a, const AbElem& b) const {
  std::vector<std::int64_t> c(rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_add(a.coords[i], b.coords[i]);
  return element(std::move(c));
}

AbElem AbGroup::sub(const AbElem& a, const AbElem& b) const { return add(a, neg(b)); }

AbElem AbGroup::neg(const AbElem& a) const {
  std::vector<std::int64_t> c(a.coords);
  for (auto& x : c) x = -x;
  return element(std::move(c));
}

AbElem AbGroup::scale(std::int64_t k, const AbElem& a) const {
  std::vector<std::int64_t> c(a.coords);
  for (auto& x : c) x = checked_mul(k, x);
  return element(std::move(c));
}

bool AbGroup::is_zero(const AbElem& a) const {
  for (std::size_t i = 0; i < rank(); ++i) {
    std::int64_t m = modulus(i);
    if (m == 0 ? a.coords[i] != 0 : mod_pos(a.coords[i], m) != 0) return false;
  }
  return true;
}

std::int64_t AbGroup::element_order(const AbElem& a) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    std::int64_t m = modulus(i);
    if (m == 0) {
      if (a.coords[i] != 0) return 0;
      continue;
    }
    o = lcm_i64(o, m / gcd_i64(mod_pos(a.coords[i], m), m));
  }
  return o;
}

std::vector<AbElem> AbGroup::elements() const {
  std::uint64_t n = order();
  std::vector<AbElem> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(from_index(i));
  return out;
}

// Mixed radix with the last coordinate varying fastest.
std::uint64_t AbGroup::index_of(const AbElem& a) const {
  if (!is_finite()) throw GroupError("index_of on an infinite group");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    idx = idx * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(mod_pos(a.coords[i], moduli_[i]));
  return idx;
}

AbElem AbGroup::from_index(std::uint64_t idx) const {
  if (!is_finite()) throw GroupError("from_index on an infinite group");
  std::vector<std::int64_t> c(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    c[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(moduli_[i]));
    idx /= static_cast<std::uint64_t>(moduli_[i]);
  }
  return AbElem{std::move(c)};
}

AbGroup AbGroup::normal_form() const {
  const std::size_t s = moduli_.size();
  IntMat d(s, s);
  for (std::size_t i = 0; i < s; ++i) d(i, i) = moduli_[i];
  SmithResult snf = smith_normal_form(d);
  std::vector<std::int64_t> tors;
  for (auto x : snf.diagonal())
    if (x > 1) tors.push_back(x);
  return AbGroup(free_rank_, std::move(tors), TorsionOrder::DivisibilityChain);
}

std::string AbGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.emplace_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (std::size_t i = 0; i < moduli_.size();) {
    std::size_t j = i;
    while (j < moduli_.size() && moduli_[j] == moduli_[i]) ++j;
    std::string p = "Z_" + std::to_string(moduli_[i]);
    if (j - i > 1) p += "^" + std::to_string(j - i);
    parts.push_back(p);
    i = j;
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
  return out;
}

// ---------------------------------------------------------------------------
// AbHom

namespace {

// |<gens>| inside a finite group, via a bitmap over element indices.
std::uint64_t subgroup_order(const AbGroup& g, const std::vector<AbElem>& gens) {
  const std::uint64_t n = g.order();
  std::vector<char> mark(n, 0);
  std::vector<std::uint64_t> members{0};
  mark[0] = 1;
  for (const auto& x : gens) {
    if (mark[g.index_of(x)]) continue;
    // multiples of x not yet in the subgroup
    AbElem y = x;
    std::vector<AbElem> mults;
    while (!mark[g.index_of(y)]) {
      mults.push_back(y);
      y = g.add(y, x);
    }
    std::vector<std::uint64_t> next = members;
    for (const auto& m : mults)
      for (auto h : members) {
        std::uint64_t idx = g.index_of(g.add(g.from_index(h), m));
        if (!mark[idx]) {
          mark[idx] = 1;
          next.push_back(idx);
        }
      }
    members = std::move(next);
  }
  return members.size();
}

}  // namespace

AbHom::AbHom(AbGroup source, AbGroup target, IntMat matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
    throw GroupError("homomorphism matrix has wrong shape");
  for (std::size_t r = 0; r < matrix_.rows(); ++r) {
    std::int64_t m = target_.modulus(r);
    if (m != 0)
      for (std::size_t c = 0; c < matrix_.cols(); ++c) matrix_(r, c) = mod_pos(matrix_(r, c), m);
  }
}

AbHom AbHom::identity(const AbGroup& g) { return AbHom(g, g, IntMat::identity(g.rank())); }

AbHom AbHom::from_images(const AbGroup& source, const AbGroup& target, const std::vector<AbElem>& images) {
  if (images.size() != source.rank()) throw GroupError("from_images: wrong number of images");
  IntMat m(target.rank(), source.rank());
  for (std::size_t c = 0; c < images.size(); ++c)
    for (std::size_t r = 0; r < target.rank(); ++r) m(r, c) = images[c].coords.at(r);
  return AbHom(source, target, std::move(m));
}

AbElem AbHom::apply(const AbElem& x) const { return target_.element(matrix_.apply(x.coords)); }

AbHom AbHom::compose(const AbHom& inner) const {
  if (!(inner.target_ == source_)) throw GroupError("compose: groups do not match");
  return AbHom(inner.source_, target_, matrix_ * inner.matrix_);
}

bool AbHom::well_defined() const {
  for (std::size_t c = 0; c < source_.rank(); ++c) {
    std::int64_t m = source_.modulus(c);
    if (m == 0) continue;
    std::vector<std::int64_t> col(target_.rank());
    for (std::size_t r = 0; r < col.size(); ++r) col[r] = checked_mul(m, matrix_(r, c));
    if (!target_.is_zero(AbElem{col})) return false;
  }
  return true;
}

bool AbHom::is_bijective() const {
  if (!source_.is_finite() || !target_.is_finite()) throw GroupError("is_bijective needs finite groups");
  if (!well_defined() || source_.order() != target_.order()) return false;
  std::vector<AbElem> imgs;
  for (std::size_t c = 0; c < source_.rank(); ++c) imgs.push_back(apply(source_.generator(c)));
  return subgroup_order(target_, imgs) == target_.order();
}

bool AbHom::operator==(const AbHom& o) const {
  return source_ == o.source_ && target_ == o.target_ && matrix_ == o.matrix_;
}

// ---------------------------------------------------------------------------
// Quotients

Quotient quotient_presentation(std::size_t n, const std::vector<std::vector<std::int64_t>>& relations) {
  IntMat a(n, relations.size());
  for (std::size_t c = 0; c < relations.size(); ++c) {
    if (relations[c].size() != n) throw GroupError("relation vector has wrong length");
    for (std::size_t r = 0; r < n; ++r) a(r, c) = relations[c][r];
  }
  SmithResult snf = smith_normal_form(a);
  std::vector<std::size_t> free_rows, tors_rows;
  std::vector<std::int64_t> moduli;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t di = i < relations.size() ? snf.d(i, i) : 0;
    if (di == 0)
      free_rows.push_back(i);
    else if (di > 1) {
      tors_rows.push_back(i);
      moduli.push_back(di);
    }
  }
  AbGroup g(static_cast<int>(free_rows.size()), moduli, TorsionOrder::DivisibilityChain);
  std::vector<std::size_t> rows = free_rows;
  rows.insert(rows.end(), tors_rows.begin(), tors_rows.end());
  IntMat proj(rows.size(), n);
  Quotient q;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t c = 0; c < n; ++c) proj(k, c) = snf.u(rows[k], c);
    std::vector<std::int64_t> sec(n);
    for (std::size_t r = 0; r < n; ++r) sec[r] = snf.u_inv(r, rows[k]);
    q.section.push_back(std::move(sec));
  }
  q.group = g;
  q.projection = AbHom(AbGroup(static_cast<int>(n), {}), g, std::move(proj));
  return q;
}

// ---------------------------------------------------------------------------
// Automorphism enumeration

namespace {

struct FiniteTables {
  std::uint64_t n;
  std::vector<std::uint32_t> add;  // n x n
  std::vector<AbElem> elems;
};

FiniteTables make_tables(const AbGroup& g) {
  FiniteTables t;
  t.n = g.order();
  t.elems = g.elements();
  t.add.resize(t.n * t.n);
  for (std::uint64_t i = 0; i < t.n; ++i)
    for (std::uint64_t j = 0; j < t.n; ++j)
      t.add[i * t.n + j] = static_cast<std::uint32_t>(g.index_of(g.add(t.elems[i], t.elems[j])));
  return t;
}

}  // namespace

void for_each_automorphism(const AbGroup& g,
                           const std::function<bool(std::size_t, const std::vector<AbElem>&)>& prune,
                           const std::function<bool(const std::vector<AbElem>&)>& visit,
                           const EnumerationLimits& limits) {
  if (!g.is_finite()) throw GroupError("automorphism enumeration needs a finite group");
  if (g.order() > limits.max_group_order)
    throw BoundExceeded("group order " + std::to_string(g.order()) + " exceeds bound " +
                            std::to_string(limits.max_group_order),
                        limits.max_group_order);
  const std::size_t k = g.rank();
  if (k == 0) {
    visit({});
    return;
  }
  FiniteTables t = make_tables(g);
  const std::uint64_t n = t.n;
  // candidates[i]: elements of order exactly m_i
  std::vector<std::vector<std::uint32_t>> cand(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::uint64_t x = 0; x < n; ++x)
      if (g.element_order(t.elems[x]) == g.modulus(i)) cand[i].push_back(static_cast<std::uint32_t>(x));

  std::vector<AbElem> images(k, g.zero());
  // subgroup generated by images[0..i-1], as membership bitmap per level
  std::vector<std::vector<char>> mark(k + 1, std::vector<char>(n, 0));
  std::vector<std::vector<std::uint32_t>> members(k + 1);
  mark[0][0] = 1;
  members[0] = {0};
  std::uint64_t produced = 0;
  bool stop = false;

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == k) {
      if (++produced > limits.max_results)
        throw BoundExceeded("automorphism count exceeds bound " + std::to_string(limits.max_results),
                            limits.max_results, produced - 1);
      if (!visit(images)) stop = true;
      return;
    }
    const auto m = static_cast<std::uint64_t>(g.modulus(i));
    for (std::uint32_t x : cand[i]) {
      // multiples j*x for 0 < j < m must avoid the previous subgroup
      bool ok = true;
      std::uint32_t y = x;
      for (std::uint64_t j = 1; j < m; ++j) {
        if (mark[i][y]) {
          ok = false;
          break;
        }
        y = t.add[static_cast<std::uint64_t>(y) * n + x];
      }
      if (!ok) continue;
      images[i] = t.elems[x];
      if (prune && !prune(i, images)) continue;
      auto& mk = mark[i + 1];
      std::copy(mark[i].begin(), mark[i].end(), mk.begin());
      auto& mem = members[i + 1];
      mem.clear();
      std::uint32_t step = 0;
      for (std::uint64_t j = 0; j < m; ++j) {
        for (auto h : members[i]) {
          std::uint32_t z = t.add[static_cast<std::uint64_t>(h) * n + step];
          mk[z] = 1;
          mem.push_back(z);
        }
        step = t.add[static_cast<std::uint64_t>(step) * n + x];
      }
      rec(i + 1);
      if (stop) return;
    }
  };
  rec(0);
}

std::vector<AbHom> enumerate_automorphisms(const AbGroup& g, const EnumerationLimits& limits) {
  std::vector<AbHom> out;
  for_each_automorphism(
      g, nullptr,
      [&](const std::vector<AbElem>& imgs) {
        out.push_back(AbHom::from_images(g, g, imgs));
        return true;
      },
      limits);
  return out;
}

// ---------------------------------------------------------------------------
// Bicharacters

Bicharacter::Bicharacter(AbGroup group, std::int64_t root_order, IntMat exponents)
    : group_(std::move(group)), root_order_(root_order), exponents_(std::move(exponents)) {
  if (!group_.is_finite()) throw GroupError("bicharacter on an infinite group");
  if (root_order_ < 1) throw GroupError("bicharacter root order must be positive");
  if (exponents_.rows() != group_.rank() || exponents_.cols() != group_.rank())
    throw GroupError("bicharacter exponent matrix has wrong shape");
  for (auto r = 0u; r < exponents_.rows(); ++r)
    for (auto c = 0u; c < exponents_.cols(); ++c) exponents_(r, c) = mod_pos(exponents_(r, c), root_order_);
}

std::int64_t Bicharacter::exponent(const AbElem& u, const AbElem& v) const {
  const std::size_t k = group_.rank();
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (u.coords[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (v.coords[j] == 0) continue;
      s = mod_pos(s + mod_pos(checked_mul(checked_mul(u.coords[i], v.coords[j]) % root_order_, exponents_(i, j)),
                              root_order_),
                  root_order_);
    }
  }
  return s;
}

CycScalar Bicharacter::value(const AbElem& u, const AbElem& v, int conductor) const {
  if (conductor % root_order_ != 0) throw GroupError("conductor does not contain the bicharacter values");
  return CycScalar::root_of_unity(conductor, exponent(u, v) * (conductor / root_order_));
}

bool Bicharacter::well_defined() const {
  for (std::size_t i = 0; i < group_.rank(); ++i)
    for (std::size_t j = 0; j < group_.rank(); ++j) {
      if (checked_mul(group_.modulus(i), exponents_(i, j)) % root_order_ != 0) return false;
      if (checked_mul(group_.modulus(j), exponents_(i, j)) % root_order_ != 0) return false;
    }
  return true;
}

bool Bicharacter::is_alternating() const {
  for (std::size_t i = 0; i < group_.rank(); ++i) {
    if (exponents_(i, i) != 0) return false;
    for (std::size_t j = i + 1; j < group_.rank(); ++j)
      if ((exponents_(i, j) + exponents_(j, i)) % root_order_ != 0) return false;
  }
  return true;
}

std::optional<AbElem> Bicharacter::radical_element() const {
  const std::uint64_t n = group_.order();
  for (std::uint64_t idx = 1; idx < n; ++idx) {
    AbElem u = group_.from_index(idx);
    bool rad = true;
    for (std::size_t j = 0; j < group_.rank() && rad; ++j)
      if (exponent(u, group_.generator(j)) != 0) rad = false;
    if (rad) return u;
  }
  return std::nullopt;
}

bool Bicharacter::preserved_by(const AbHom& mu) const {
  const std::size_t k = group_.rank();
  std::vector<AbElem> imgs;
  for (std::size_t i = 0; i < k; ++i) imgs.push_back(mu.apply(group_.generator(i)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (exponent(imgs[i], imgs[j]) != exponents_(i, j)) return false;
  return true;
}

SymplecticGroupData standard_bicharacter(const std::vector<std::int64_t>& ls) {
  std::vector<std::int64_t> moduli;
  std::int64_t L = 1;
  for (auto l : ls) {
    if (l < 2) throw GroupError("standard_bicharacter: moduli must be >= 2");
    moduli.push_back(l);
    moduli.push_back(l);
    L = lcm_i64(L, l);
  }
  AbGroup t(0, moduli, TorsionOrder::SymplecticPairs);
  IntMat e(moduli.size(), moduli.size());
  for (std::size_t i = 0; i < ls.size(); ++i) {
    e(2 * i, 2 * i + 1) = L / ls[i];
    e(2 * i + 1, 2 * i) = -(L / ls[i]);
  }
  return SymplecticGroupData{t, Bicharacter(t, L, e)};
}

std::vector<AbHom> aut_bicharacter_bruteforce(const Bicharacter& beta, std::uint64_t bound) {
  const AbGroup& g = beta.group();
  EnumerationLimits lim;
  lim.max_group_order = bound;
  std::vector<AbHom> out;
  for_each_automorphism(
      g,
      [&](std::size_t k, const std::vector<AbElem>& imgs) {
        for (std::size_t i = 0; i <= k; ++i) {
          if (beta.exponent(imgs[i], imgs[k]) != beta.exponents()(i, k)) return false;
          if (beta.exponent(imgs[k], imgs[i]) != beta.exponents()(k, i)) return false;
        }
        return true;
      },
      [&](const std::vector<AbElem>& imgs) {
        out.push_back(AbHom::from_images(g, g, imgs));
        return true;
      },
      lim);
  return out;
}

// ---------------------------------------------------------------------------
// Matrix criterion

namespace {

// (q, alpha) with m = q^alpha, or (0, 0) if m is not a prime power.
std::pair<std::int64_t, int> prime_power(std::int64_t m) {
  std::int64_t q = 0;
  for (std::int64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      q = p;
      break;
    }
  if (q == 0) q = m;
  int a = 0;
  while (m % q == 0) {
    m /= q;
    ++a;
  }
  if (m != 1) return {0, 0};
  return {q, a};
}

}  // namespace

SymplecticCriterion SymplecticCriterion::make(const Bicharacter& beta) {
  const AbGroup& g = beta.group();
  if (g.free_rank() != 0 || g.moduli().size() % 2 != 0 || g.moduli().empty())
    throw GroupError("matrix criterion: group is not in symplectic form");
  SymplecticCriterion sc;
  sc.beta_ = beta;
  const auto& mods = g.moduli();
  const std::size_t pairs = mods.size() / 2;
  std::vector<int> alpha(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    if (mods[2 * i] != mods[2 * i + 1]) throw GroupError("matrix criterion: group is not in symplectic form");
    auto [q, a] = prime_power(mods[2 * i]);
    if (q == 0) throw GroupError("matrix criterion: group is not a q-group");
    if (sc.q_ == 0) sc.q_ = q;
    if (q != sc.q_) throw GroupError("matrix criterion: group is not a q-group");
    alpha[i] = a;
  }
  // beta must be the standard bicharacter on these pairs
  std::vector<std::int64_t> ls;
  for (std::size_t i = 0; i < pairs; ++i) ls.push_back(mods[2 * i]);
  SymplecticGroupData std_b = standard_bicharacter(ls);
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (std::size_t j = 0; j < mods.size(); ++j)
      if (checked_mul(beta.exponents()(i, j), std_b.beta.root_order()) !=
          checked_mul(std_b.beta.exponents()(i, j), beta.root_order()))
        throw GroupError("matrix criterion: bicharacter is not in standard symplectic form");

  std::vector<std::size_t> pair_order(pairs);
  std::iota(pair_order.begin(), pair_order.end(), 0);
  std::stable_sort(pair_order.begin(), pair_order.end(), [&](std::size_t a, std::size_t b) { return alpha[a] < alpha[b]; });
  int top_alpha = alpha[pair_order.back()];
  sc.top_mod_ = 1;
  for (int i = 0; i < top_alpha; ++i) sc.top_mod_ = checked_mul(sc.top_mod_, sc.q_);
  const std::size_t n = mods.size();
  sc.j_ = IntMat(n, n);
  for (std::size_t p = 0; p < pairs; ++p) {
    std::size_t orig = pair_order[p];
    sc.order_.push_back(2 * orig);
    sc.order_.push_back(2 * orig + 1);
    sc.row_mod_.push_back(mods[2 * orig]);
    sc.row_mod_.push_back(mods[2 * orig]);
    std::int64_t w = sc.top_mod_ / mods[2 * orig];
    sc.j_(2 * p, 2 * p + 1) = w;
    sc.j_(2 * p + 1, 2 * p) = sc.top_mod_ - w;
  }
  return sc;
}

namespace {

// (tA J A)(c1, c2) modulo top, using columns of a.
std::int64_t pairing(const IntMat& a, const IntMat& j, std::size_t c1, std::size_t c2, std::int64_t top) {
  std::int64_t s = 0;
  const std::size_t n = a.rows();
  for (std::size_t r = 0; r < n; r += 2) {
    // J only couples r and r+1
    std::int64_t w = j(r, r + 1);
    std::int64_t t = mod_pos(checked_mul(a(r, c1), a(r + 1, c2)) - checked_mul(a(r + 1, c1), a(r, c2)), top);
    s = mod_pos(s + checked_mul(w, t) % top, top);
  }
  return s;
}

}  // namespace

bool SymplecticCriterion::accepts(const IntMat& a0) const {
  const std::size_t n = size();
  if (a0.rows() != n || a0.cols() != n) return false;
  IntMat a = a0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      a(r, c) = mod_pos(a(r, c), row_mod_[r]);
      if (row_mod_[r] > row_mod_[c] && a(r, c) % (row_mod_[r] / row_mod_[c]) != 0) return false;
    }
  for (std::size_t c1 = 0; c1 < n; ++c1)
    for (std::size_t c2 = 0; c2 < n; ++c2)
      if (pairing(a, j_, c1, c2, top_mod_) != mod_pos(j_(c1, c2), top_mod_)) return false;
  return true;
}

void SymplecticCriterion::for_each(const std::function<void(const IntMat&)>& visit) const {
  const std::size_t n = size();
  IntMat a(n, n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t c, std::size_t r) {
    if (c == n) {
      visit(a);
      return;
    }
    if (r == n) {
      for (std::size_t c1 = 0; c1 <= c; ++c1)
        if (pairing(a, j_, c1, c, top_mod_) != mod_pos(j_(c1, c), top_mod_)) return;
      rec(c + 1, 0);
      return;
    }
    std::int64_t step = row_mod_[r] > row_mod_[c] ? row_mod_[r] / row_mod_[c] : 1;
    for (std::int64_t x = 0; x < row_mod_[r]; x += step) {
      a(r, c) = x;
      rec(c, r + 1);
    }
    a(r, c) = 0;
  };
  rec(0, 0);
}

std::uint64_t SymplecticCriterion::count() const {
  std::uint64_t k = 0;
  for_each([&](const IntMat&) { ++k; });
  return k;
}

AbHom SymplecticCriterion::to_hom(const IntMat& a) const {
  const std::size_t n = size();
  IntMat m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(order_[r], order_[c]) = a(r, c);
  return AbHom(beta_.group(), beta_.group(), m);
}

// ---------------------------------------------------------------------------
// Symplectic basis

std::vector<AbElem> symplectic_basis(const Bicharacter& beta, std::uint64_t bound) {
  const AbGroup& g = beta.group();
  if (g.order() > bound)
    throw BoundExceeded("group order " + std::to_string(g.order()) + " exceeds bound " + std::to_string(bound), bound);
  if (!beta.well_defined() || !beta.is_alternating()) throw GroupError("symplectic_basis: beta is not alternating");
  if (auto rad = beta.radical_element())
    throw GroupError("symplectic_basis: beta is degenerate, radical contains " + rad->to_string());
  const std::int64_t L = beta.root_order();
  std::vector<AbElem> rest = g.elements();
  std::vector<AbElem> out;
  while (rest.size() > 1) {
    const AbElem* a = nullptr;
    std::int64_t oa = 0;
    for (const auto& x : rest)
      if (g.element_order(x) > oa) a = &x, oa = g.element_order(x);
    const AbElem* b = nullptr;
    for (const auto& y : rest) {
      std::int64_t e = beta.exponent(*a, y);
      if (L / gcd_i64(e, L) == oa) {
        b = &y;
        break;
      }
    }
    if (b == nullptr) throw GroupError("symplectic_basis: no partner for " + a->to_string());
    AbElem aa = *a, bb = *b;
    std::vector<AbElem> next;
    for (const auto& z : rest)
      if (beta.exponent(aa, z) == 0 && beta.exponent(bb, z) == 0) next.push_back(z);
    out.push_back(aa);
    out.push_back(bb);
    rest = std::move(next);
  }
  return out;
}

}  // namespace fgw
