// Algebras given by structure constants on a labeled basis, and the concrete
// constructions: Cayley algebra (good basis and Cayley-Dickson basis), Okubo
// algebra, Albert algebra, Pauli-graded matrix algebras and M_k(D).

#ifndef FGW_ALGEBRAS_HPP_
#define FGW_ALGEBRAS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgw/abgroups.hpp"
#include "fgw/linalg.hpp"
#include "fgw/scalars.hpp"

namespace fgw {

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One term of a sparse product: coeff * b_index.
struct SparseTerm {
  std::uint32_t index;
  CycScalar coeff;
  bool operator==(const SparseTerm& o) const { return index == o.index && coeff == o.coeff; }
};
using SparseVec = std::vector<SparseTerm>;

SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& s, std::size_t n, int conductor);

struct AlgebraOptions {
  std::string name;
  int conductor = 24;
  std::optional<Vec> unit;
  std::optional<Mat> norm_polar;  // n(b_i, b_j); n(x) = n(x, x) / 2
  std::optional<Vec> trace;       // linear form, as coefficients on the basis
  bool commutative = false;
  bool anticommutative = false;
  bool composition = false;       // n(xy) = n(x) n(y)
  // Optional per-basis-element degree vectors (e.g. from Cayley-Dickson doubling).
  std::vector<std::vector<std::int64_t>> degree_hint;
};

class StructAlgebra {
public:
  StructAlgebra() = default;

  std::size_t dim() const { return labels_.size(); }
  const std::string& name() const { return opts_.name; }
  int conductor() const { return opts_.conductor; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const;
  const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  const AlgebraOptions& options() const { return opts_; }

  bool has_unit() const { return opts_.unit.has_value(); }
  const Vec& unit() const;
  bool has_norm() const { return opts_.norm_polar.has_value(); }
  const Mat& norm_polar() const;
  bool has_trace() const { return opts_.trace.has_value(); }
  bool is_commutative() const { return opts_.commutative; }
  bool is_anticommutative() const { return opts_.anticommutative; }
  bool is_composition() const { return opts_.composition; }
  const std::vector<std::vector<std::int64_t>>& degree_hint() const { return opts_.degree_hint; }

  Vec zero() const { return zero_vec(dim(), conductor()); }
  Vec basis(std::size_t i) const { return unit_vec(dim(), i, conductor()); }
  Vec basis(const std::string& label) const { return basis(index_of(label)); }
  Vec scalar(const CycScalar& c) const;  // c * 1

  Vec mul(const Vec& x, const Vec& y) const;
  CycScalar polar(const Vec& x, const Vec& y) const;  // n(x, y)
  CycScalar norm(const Vec& x) const;                 // n(x)
  CycScalar trace(const Vec& x) const;
  std::string format(const Vec& x) const;

  friend StructAlgebra algebra_from_table(std::vector<std::string> labels, std::vector<SparseVec> table,
                                          AlgebraOptions opts);

private:
  std::vector<std::string> labels_;
  std::vector<SparseVec> table_;  // row-major dim x dim
  AlgebraOptions opts_;
};

/// Builds an algebra and runs the checks its options declare (unit,
/// commutativity, anticommutativity, composition); throws AlgebraError.
StructAlgebra algebra_from_table(std::vector<std::string> labels, std::vector<SparseVec> table, AlgebraOptions opts);

/// Same algebra in a new basis (columns of `vectors`, in old coordinates).
StructAlgebra rebase(const StructAlgebra& a, const std::vector<Vec>& vectors, std::vector<std::string> labels,
                     const std::string& name);

// Cayley algebra on the good basis e1, e2, u1, u2, u3, v1, v2, v3.
StructAlgebra cayley_good_basis(int conductor = 24);
Vec conjugate(const StructAlgebra& c, const Vec& x);

/// Cayley-Dickson doubling Q + Qu with u^2 = -alpha (as elements of Q + Qu).
/// New basis labels are the old ones with `gen` appended ("1" becomes `gen`).
StructAlgebra cd_double(const StructAlgebra& q, const CycScalar& alpha, const std::string& gen);
StructAlgebra cd_field(int conductor = 24);
// F doubled three times with alpha = -1: basis 1, w1, w2, w1w2, w3, w1w3, w2w3, w1w2w3.
StructAlgebra cayley_cd_basis(int conductor = 24);
// Images of w1, w2, w3 in the good basis: e1 - e2, u1 - v1, u2 - v2.
std::vector<Vec> cd_generators_in_good_basis(const StructAlgebra& good);

// tau: e_j -> e_j, u_i -> u_{i+1}, v_i -> v_{i+1}, as a matrix on the good basis.
Mat cayley_tau(const StructAlgebra& good);
/// (C, *) with x * y = tau(conj x) tau^2(conj y), checked against the
/// hardcoded table; basis order e1, e2, u1, u2, u3, v1, v2, v3.
StructAlgebra okubo_algebra(int conductor = 24);
// The hardcoded Okubo table, used for the executed check.
std::vector<SparseVec> okubo_reference_table(int conductor);

// Albert algebra on E1, E2, E3, i1(b), i2(b), i3(b) (b running over c's basis).
StructAlgebra albert_algebra(const StructAlgebra& c);
// Index of iota_i(b_k) (i in 1..3) / of E_i in an Albert algebra built by albert_algebra.
inline std::size_t albert_iota(std::size_t i, std::size_t k, std::size_t cdim = 8) { return 3 + (i - 1) * cdim + k; }
inline std::size_t albert_E(std::size_t i) { return i - 1; }
// iota_i(x) as an element of the Albert algebra.
Vec albert_embed(const StructAlgebra& albert, std::size_t i, const Vec& x);

// Monomial matrix: column k has the single entry zeta_L^exps[k] in row rows[k].
struct MonomialMatrix {
  std::vector<std::uint32_t> rows;
  std::vector<std::int64_t> exps;
  std::int64_t root_order = 1;
  MonomialMatrix operator*(const MonomialMatrix& o) const;
  Mat dense(int conductor) const;
  bool operator==(const MonomialMatrix& o) const = default;
};

struct PauliAlgebra {
  StructAlgebra algebra;  // basis X_t, t in T.elements() order
  AbGroup group;          // T, symplectic pairs
  Bicharacter beta;
  std::vector<MonomialMatrix> matrices;  // X_t
  std::vector<std::int64_t> ls;
};

PauliAlgebra pauli_matrix_algebra(const std::vector<std::int64_t>& ls, std::int64_t bound = 12);
// Conductor used for a Pauli algebra: lcm(24, 2 l_i).
int pauli_conductor(const std::vector<std::int64_t>& ls);

struct MatrixAlgebraMDk {
  StructAlgebra algebra;  // basis E_ij (x) X_t, index ((i * k) + j) * |T| + t
  PauliAlgebra division;
  std::size_t k = 1;
  std::size_t index(std::size_t i, std::size_t j, std::size_t t) const {
    return (i * k + j) * division.group.order() + t;
  }
};

MatrixAlgebraMDk matrix_algebra_MDk(const std::vector<std::int64_t>& ls, std::size_t k, std::int64_t bound = 8);

Vec jordan_power(const StructAlgebra& a, const Vec& x, int k);

struct CubicFit {
  bool degenerate = false;
  // X^3 = t X^2 - s X + n 1
  CycScalar t, s, n;
  // when degenerate: coefficients c0, c1, c2 of a relation c0 1 + c1 X + c2 X^2 = 0
  std::vector<CycScalar> dependency;
};
CubicFit cubic_fit(const StructAlgebra& a, const Vec& x);

// Basis E, Et, S+, S-, nu(a) for the 7 trace-zero Cayley-Dickson basis
// elements, nu+(x), nu-(x) for the 8 basis elements x.
struct NuBasis {
  StructAlgebra algebra;   // rebased
  std::vector<Vec> vectors;  // in Albert coordinates
  Mat to_albert;             // columns = vectors
  Mat from_albert;
  std::size_t E = 0, Et = 1, Sp = 2, Sm = 3;
  std::size_t nu(std::size_t k) const { return 4 + (k - 1); }    // k = 1..7
  std::size_t nu_plus(std::size_t k) const { return 11 + k; }    // k = 0..7
  std::size_t nu_minus(std::size_t k) const { return 19 + k; }
};

/// `albert` must be albert_algebra(cayley_cd_basis()); the product identities
/// of the basis are verified on construction.
NuBasis albert_nu_basis(const StructAlgebra& albert, const StructAlgebra& cd);
// Sign of the nu-term in nu+(x) nu-(y) = 2n(x,y)(2E + Et) +- nu(conj(x) y - conj(y) x).
// The product rules give Minus.
enum class NuCrossSign { Minus, Plus };
// Names of the failing identities (empty when all hold).
std::vector<std::string> nu_identity_failures(const StructAlgebra& albert, const StructAlgebra& cd,
                                              NuCrossSign cross = NuCrossSign::Minus);

}  // namespace fgw

#endif  // FGW_ALGEBRAS_HPP_
