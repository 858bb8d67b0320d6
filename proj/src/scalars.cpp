#include "fgw/scalars.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

namespace fgw {

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t lcm_i64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return (a / gcd_i64(a, b)) * b;
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Exact division of integer polynomials; the divisor must be monic.
IntPoly divide_exact(const IntPoly& num, const IntPoly& den) {
  IntPoly rem = num;
  const std::size_t dd = den.size() - 1;
  if (rem.size() < den.size()) throw ScalarError("polynomial division: degree too small");
  IntPoly quot(rem.size() - dd, 0);
  for (std::size_t k = rem.size(); k-- > dd;) {
    std::int64_t c = rem[k];
    quot[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= c * den[j];
  }
  for (std::size_t k = 0; k < dd; ++k)
    if (rem[k] != 0) throw ScalarError("polynomial division: nonzero remainder");
  return quot;
}

}  // namespace

IntPoly cyclotomic_polynomial(int n) {
  if (n < 1) throw ScalarError("cyclotomic_polynomial: N must be positive");
  static std::mutex mu;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, p);
  return p;
}

CyclotomicField::CyclotomicField(int conductor)
    : conductor_(conductor), poly_(cyclotomic_polynomial(conductor)) {
  degree_ = static_cast<int>(poly_.size()) - 1;
  std::vector<std::int64_t> cur(static_cast<std::size_t>(degree_), 0);
  cur[0] = 1;
  powers_.resize(static_cast<std::size_t>(conductor_));
  for (int e = 0; e < conductor_; ++e) {
    auto& out = powers_[static_cast<std::size_t>(e)];
    for (int k = 0; k < degree_; ++k)
      if (cur[static_cast<std::size_t>(k)] != 0) out.emplace_back(k, cur[static_cast<std::size_t>(k)]);
    // multiply by x and reduce with the monic Phi_N
    std::int64_t top = cur[static_cast<std::size_t>(degree_ - 1)];
    for (int k = degree_ - 1; k > 0; --k) cur[static_cast<std::size_t>(k)] = cur[static_cast<std::size_t>(k - 1)];
    cur[0] = 0;
    if (top != 0)
      for (int k = 0; k < degree_; ++k) cur[static_cast<std::size_t>(k)] -= top * poly_[static_cast<std::size_t>(k)];
  }
}

const CyclotomicField& CyclotomicField::get(int conductor) {
  if (conductor < 1) throw ScalarError("conductor must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CyclotomicField>> registry;
  // fast path for the common fields without locking
  static const CyclotomicField* small[64] = {};
  if (conductor < 64) {
    const CyclotomicField* f = __atomic_load_n(&small[conductor], __ATOMIC_ACQUIRE);
    if (f != nullptr) return *f;
  }
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(conductor);
  if (it == registry.end())
    it = registry.emplace(conductor, std::unique_ptr<CyclotomicField>(new CyclotomicField(conductor))).first;
  if (conductor < 64) __atomic_store_n(&small[conductor], it->second.get(), __ATOMIC_RELEASE);
  return *it->second;
}

CycScalar::CycScalar(long v) : field_(&CyclotomicField::get(1)) {
  if (v != 0) terms_.push_back({0, Rational(v)});
}

CycScalar::CycScalar(const Rational& q) : CycScalar(q, 1) {}

CycScalar::CycScalar(const Rational& q, int conductor) : field_(&CyclotomicField::get(conductor)) {
  if (q != 0) {
    terms_.push_back({0, q});
    terms_[0].coeff.canonicalize();
  }
}

CycScalar CycScalar::zero(int conductor) { return CycScalar(&CyclotomicField::get(conductor), {}); }

CycScalar CycScalar::root_of_unity(int conductor, long k) {
  const CyclotomicField& f = CyclotomicField::get(conductor);
  long e = k % conductor;
  if (e < 0) e += conductor;
  std::vector<Term> t;
  for (const auto& [exp, c] : f.power(static_cast<int>(e))) t.push_back({exp, Rational(static_cast<long>(c))});
  return CycScalar(&f, std::move(t));
}

CycScalar CycScalar::sqrt2(int conductor) {
  if (conductor % 8 != 0) throw ScalarError("sqrt(2) needs a conductor divisible by 8");
  int s = conductor / 8;
  return root_of_unity(conductor, s) + root_of_unity(conductor, 7 * s);
}

CycScalar CycScalar::from_powers(int conductor, const std::vector<std::pair<long, Rational>>& terms) {
  const CyclotomicField& f = CyclotomicField::get(conductor);
  std::vector<Rational> dense(static_cast<std::size_t>(f.degree()));
  for (const auto& [k, c0] : terms) {
    Rational c = c0;
    c.canonicalize();
    long e = k % conductor;
    if (e < 0) e += conductor;
    for (const auto& [exp, m] : f.power(static_cast<int>(e)))
      dense[static_cast<std::size_t>(exp)] += c * static_cast<long>(m);
  }
  return reduce_dense(f, dense);
}

CycScalar CycScalar::reduce_dense(const CyclotomicField& f, std::vector<Rational>& dense) {
  std::vector<Term> t;
  for (int k = 0; k < f.degree(); ++k)
    if (sgn(dense[static_cast<std::size_t>(k)]) != 0) t.push_back({k, dense[static_cast<std::size_t>(k)]});
  return CycScalar(&f, std::move(t));
}

bool CycScalar::is_one() const { return terms_.size() == 1 && terms_[0].exp == 0 && terms_[0].coeff == 1; }

Rational CycScalar::rational_value() const {
  if (!is_rational()) throw ScalarError("scalar is not rational: " + to_string());
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

Rational CycScalar::coeff(int k) const {
  for (const auto& t : terms_)
    if (t.exp == k) return t.coeff;
  return Rational(0);
}

CycScalar CycScalar::embed(int conductor) const {
  if (conductor == field_->conductor()) return *this;
  if (conductor % field_->conductor() != 0)
    throw ScalarError("cannot embed Q(zeta_" + std::to_string(field_->conductor()) + ") into Q(zeta_" +
                      std::to_string(conductor) + ")");
  const CyclotomicField& target = CyclotomicField::get(conductor);
  if (is_rational()) return CycScalar(&target, terms_);
  const int step = conductor / field_->conductor();
  std::vector<Rational> dense(static_cast<std::size_t>(target.degree()));
  for (const auto& t : terms_)
    for (const auto& [exp, m] : target.power((t.exp * step) % conductor))
      dense[static_cast<std::size_t>(exp)] += t.coeff * static_cast<long>(m);
  return reduce_dense(target, dense);
}

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

void CycScalar::add_scaled(const CycScalar& o, int sign) {
  if (o.terms_.empty()) return;
  if (field_ != o.field_) {
    if (is_rational() && o.field_->conductor() % field_->conductor() == 0) {
      field_ = o.field_;
    } else if (o.is_rational() && field_->conductor() % o.field_->conductor() == 0) {
      // o embeds trivially
    } else {
      int l = static_cast<int>(lcm_i64(field_->conductor(), o.field_->conductor()));
      *this = embed(l);
      add_scaled(o.embed(l), sign);
      return;
    }
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j >= o.terms_.size() || (i < terms_.size() && terms_[i].exp < o.terms_[j].exp)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i >= terms_.size() || o.terms_[j].exp < terms_[i].exp) {
      out.push_back({o.terms_[j].exp, sign > 0 ? o.terms_[j].coeff : Rational(-o.terms_[j].coeff)});
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(terms_[i].coeff + o.terms_[j].coeff)
                            : Rational(terms_[i].coeff - o.terms_[j].coeff);
      if (sgn(c) != 0) out.push_back({terms_[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  add_scaled(o, 1);
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
  add_scaled(o, -1);
  return *this;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  *this = *this * o;
  return *this;
}

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
  const CyclotomicField* f = a.field_;
  if (a.field_ != b.field_) {
    if (a.is_rational() && b.field_->conductor() % a.field_->conductor() == 0) {
      f = b.field_;
    } else if (b.is_rational() && a.field_->conductor() % b.field_->conductor() == 0) {
      f = a.field_;
    } else {
      int l = static_cast<int>(lcm_i64(a.conductor(), b.conductor()));
      return a.embed(l) * b.embed(l);
    }
  }
  if (a.terms_.empty() || b.terms_.empty()) return CycScalar(f, {});
  if (a.is_rational() || b.is_rational()) {
    const CycScalar& r = a.is_rational() ? a : b;
    const CycScalar& g = a.is_rational() ? b : a;
    if (r.terms_[0].coeff == 1) return CycScalar(f, g.terms_);
    std::vector<CycScalar::Term> t;
    t.reserve(g.terms_.size());
    for (const auto& x : g.terms_) t.push_back({x.exp, x.coeff * r.terms_[0].coeff});
    return CycScalar(f, std::move(t));
  }
  const int deg = f->degree();
  const int n = f->conductor();
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    int e = a.terms_[0].exp + b.terms_[0].exp;
    Rational c = a.terms_[0].coeff * b.terms_[0].coeff;
    if (e < deg) return CycScalar(f, {{e, std::move(c)}});
    std::vector<CycScalar::Term> t;
    for (const auto& [exp, m] : f->power(e % n)) t.push_back({exp, c * static_cast<long>(m)});
    return CycScalar(f, std::move(t));
  }
  thread_local std::vector<Rational> acc;
  if (static_cast<int>(acc.size()) < deg) acc.resize(static_cast<std::size_t>(deg));
  for (int k = 0; k < deg; ++k) acc[static_cast<std::size_t>(k)] = 0;
  Rational prod;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      int e = x.exp + y.exp;
      mpq_mul(prod.get_mpq_t(), x.coeff.get_mpq_t(), y.coeff.get_mpq_t());
      if (e < deg) {
        acc[static_cast<std::size_t>(e)] += prod;
      } else {
        for (const auto& [exp, m] : f->power(e % n)) {
          if (m == 1) acc[static_cast<std::size_t>(exp)] += prod;
          else if (m == -1) acc[static_cast<std::size_t>(exp)] -= prod;
          else acc[static_cast<std::size_t>(exp)] += prod * static_cast<long>(m);
        }
      }
    }
  }
  return CycScalar::reduce_dense(*f, acc);
}

CycScalar CycScalar::inverse() const {
  if (terms_.empty()) throw ScalarError("inversion of zero");
  if (is_rational()) return CycScalar(field_, {{0, Rational(1) / terms_[0].coeff}});
  // Solve (multiplication by this) * x = 1 over Q.
  const int d = field_->degree();
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d + 1)));
  for (int k = 0; k < d; ++k) {
    CycScalar col = *this * root_of_unity(field_->conductor(), k);
    for (const auto& t : col.terms_) m[static_cast<std::size_t>(t.exp)][static_cast<std::size_t>(k)] = t.coeff;
  }
  m[0][static_cast<std::size_t>(d)] = 1;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    while (piv < d && sgn(m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]) == 0) ++piv;
    if (piv == d) throw ScalarError("inverse: singular multiplication matrix");
    std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(c)]);
    auto& prow = m[static_cast<std::size_t>(c)];
    Rational inv = Rational(1) / prow[static_cast<std::size_t>(c)];
    for (auto& v : prow) v *= inv;
    for (int r = 0; r < d; ++r) {
      if (r == c) continue;
      auto& row = m[static_cast<std::size_t>(r)];
      if (sgn(row[static_cast<std::size_t>(c)]) == 0) continue;
      Rational factor = row[static_cast<std::size_t>(c)];
      for (int k = c; k <= d; ++k) row[static_cast<std::size_t>(k)] -= factor * prow[static_cast<std::size_t>(k)];
    }
  }
  std::vector<Rational> dense(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) dense[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)];
  return reduce_dense(*field_, dense);
}

CycScalar CycScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycScalar result = CycScalar(Rational(1), field_->conductor());
  CycScalar base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  if (a.field_ == b.field_) return a.terms_ == b.terms_;
  if (a.is_rational() && b.is_rational()) return a.terms_ == b.terms_;
  int l = static_cast<int>(lcm_i64(a.conductor(), b.conductor()));
  return a.embed(l).terms_ == b.embed(l).terms_;
}

long CycScalar::root_of_unity_exponent() const {
  const int n = field_->conductor();
  for (long k = 0; k < n; ++k)
    if (*this == root_of_unity(n, k)) return k;
  return -1;
}

std::string CycScalar::to_string() const {
  std::ostringstream os;
  os << '[' << field_->conductor() << "] ";
  if (terms_.empty()) {
    os << '0';
    return os.str();
  }
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.get_str();
    if (t.exp == 1) os << "*z";
    else if (t.exp > 1) os << "*z^" << t.exp;
  }
  return os.str();
}

CycScalar CycScalar::parse(std::string_view text) {
  auto fail = [&] { return ScalarError("cannot parse scalar: '" + std::string(text) + "'"); };
  if (text.empty() || text.front() != '[') throw fail();
  std::size_t close = text.find(']');
  if (close == std::string_view::npos) throw fail();
  int n = 0;
  try {
    n = std::stoi(std::string(text.substr(1, close - 1)));
  } catch (const std::exception&) {
    throw fail();
  }
  if (n < 1) throw fail();
  const CyclotomicField& f = CyclotomicField::get(n);
  std::string_view body = text.substr(close + 1);
  while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
  std::vector<Rational> dense(static_cast<std::size_t>(f.degree()));
  if (body == "0") return reduce_dense(f, dense);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t next = body.find(" + ", pos);
    std::string_view term = body.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    int exp = 0;
    std::string_view coeff = term;
    std::size_t star = term.find("*z");
    if (star != std::string_view::npos) {
      coeff = term.substr(0, star);
      std::string_view rest = term.substr(star + 2);
      if (rest.empty()) exp = 1;
      else if (rest.front() == '^') exp = std::stoi(std::string(rest.substr(1)));
      else throw fail();
    }
    if (exp < 0 || exp >= f.degree()) throw fail();
    Rational c;
    if (c.set_str(std::string(coeff), 10) != 0) throw fail();
    c.canonicalize();
    dense[static_cast<std::size_t>(exp)] += c;
    if (next == std::string_view::npos) break;
    pos = next + 3;
  }
  return reduce_dense(f, dense);
}

std::ostream& operator<<(std::ostream& os, const CycScalar& s) { return os << s.to_string(); }

}  // namespace fgw
