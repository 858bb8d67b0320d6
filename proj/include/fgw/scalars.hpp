// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// A CycScalar is a polynomial in zeta_N of degree < phi(N), reduced modulo
// the N-th cyclotomic polynomial, with arbitrary-precision rational
// coefficients. Only nonzero coefficients are stored, so zero is the empty
// term list and costs no allocation.

#ifndef FGW_SCALARS_HPP_
#define FGW_SCALARS_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fgw {

using Rational = mpq_class;
using IntPoly = std::vector<std::int64_t>;  // coefficients, lowest degree first

/// Returns the N-th cyclotomic polynomial Phi_N.
IntPoly cyclotomic_polynomial(int n);

std::int64_t gcd_i64(std::int64_t a, std::int64_t b);
std::int64_t lcm_i64(std::int64_t a, std::int64_t b);
int euler_phi(int n);

struct ScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-conductor data: degree and the reduced form of every power zeta^e,
// 0 <= e < N. Instances live for the whole process.
class CyclotomicField {
public:
  static const CyclotomicField& get(int conductor);

  int conductor() const { return conductor_; }
  int degree() const { return degree_; }
  const IntPoly& polynomial() const { return poly_; }
  // zeta^e reduced, as (exponent < degree, integer coefficient) pairs.
  const std::vector<std::pair<int, std::int64_t>>& power(int e) const {
    return powers_[static_cast<std::size_t>(e)];
  }

private:
  explicit CyclotomicField(int conductor);
  int conductor_;
  int degree_;
  IntPoly poly_;
  std::vector<std::vector<std::pair<int, std::int64_t>>> powers_;
};

class CycScalar {
public:
  struct Term {
    int exp;
    Rational coeff;
    bool operator==(const Term& o) const { return exp == o.exp && coeff == o.coeff; }
  };

  CycScalar() : field_(&CyclotomicField::get(1)) {}
  CycScalar(long v);  // NOLINT(google-explicit-constructor): rationals embed implicitly
  CycScalar(const Rational& q);  // NOLINT
  CycScalar(const Rational& q, int conductor);

  static CycScalar root_of_unity(int conductor, long k);
  static CycScalar zero(int conductor);
  static CycScalar one(int conductor) { return CycScalar(Rational(1), conductor); }
  // sqrt(2) = zeta_8 + zeta_8^7, embedded in Q(zeta_N); requires 8 | N.
  static CycScalar sqrt2(int conductor);
  // Builds sum coeffs[k] zeta_N^k for arbitrary k (reduced on construction).
  static CycScalar from_powers(int conductor, const std::vector<std::pair<long, Rational>>& terms);

  int conductor() const { return field_->conductor(); }
  const CyclotomicField& field() const { return *field_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0); }
  bool is_one() const;
  // Rational value; throws unless is_rational().
  Rational rational_value() const;
  // Coefficient of zeta^k in the reduced basis of its own field.
  Rational coeff(int k) const;

  // Same value, expressed in Q(zeta_L); requires conductor() | L.
  CycScalar embed(int conductor) const;

  CycScalar operator-() const;
  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
  friend CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inverse(); }

  CycScalar inverse() const;
  CycScalar pow(long e) const;

  friend bool operator==(const CycScalar& a, const CycScalar& b);
  friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

  // "[N] c0 + c1*z + c2*z^2", zero terms omitted, zero prints as "[N] 0".
  std::string to_string() const;
  static CycScalar parse(std::string_view text);

  // If this is a root of unity zeta_N^k, returns k in [0, N); otherwise -1.
  long root_of_unity_exponent() const;

private:
  CycScalar(const CyclotomicField* f, std::vector<Term> t) : field_(f), terms_(std::move(t)) {}
  static CycScalar reduce_dense(const CyclotomicField& f, std::vector<Rational>& dense);
  void add_scaled(const CycScalar& o, int sign);

  const CyclotomicField* field_;
  std::vector<Term> terms_;  // sorted by exp, all coefficients nonzero
};

std::ostream& operator<<(std::ostream& os, const CycScalar& s);

}  // namespace fgw

#endif  // FGW_SCALARS_HPP_
