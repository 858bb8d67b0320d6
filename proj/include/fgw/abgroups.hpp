// Finitely generated abelian groups Z^r x Z_m1 x ... x Z_ms, their
// homomorphisms, Smith normal form, and alternating bicharacters on finite
// groups together with their automorphism groups.

#ifndef FGW_ABGROUPS_HPP_
#define FGW_ABGROUPS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgw/scalars.hpp"

namespace fgw {

struct BoundExceeded : std::runtime_error {
  BoundExceeded(const std::string& what, std::uint64_t bound, std::uint64_t partial = 0)
      : std::runtime_error(what), bound(bound), partial(partial) {}
  std::uint64_t bound;
  std::uint64_t partial;
};

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Row-major integer matrix.
class IntMat {
public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static IntMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  IntMat operator*(const IntMat& o) const;
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;
  IntMat transpose() const;
  bool operator==(const IntMat& o) const = default;
  bool operator<(const IntMat& o) const { return data_ < o.data_; }
  const std::vector<std::int64_t>& data() const { return data_; }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> data_;
};

struct SmithResult {
  IntMat d;     // U * M * V
  IntMat u, u_inv;
  IntMat v, v_inv;
  std::vector<std::int64_t> diagonal() const;
};

/// Smith normal form: U*M*V = D with d_1 | d_2 | ... and U, V unimodular.
SmithResult smith_normal_form(const IntMat& m);

/// Integer solution of A x = b, if one exists.
std::optional<std::vector<std::int64_t>> solve_integer(const IntMat& a, const std::vector<std::int64_t>& b);

// Element coordinates; the owning group is passed wherever normalization
// matters. Torsion coordinates of a normalized element lie in [0, m_i).
struct AbElem {
  std::vector<std::int64_t> coords;
  bool operator==(const AbElem& o) const = default;
  auto operator<=>(const AbElem& o) const = default;
  std::string to_string() const;
};

struct AbElemHash {
  std::size_t operator()(const AbElem& e) const noexcept;
};

enum class TorsionOrder { Given, DivisibilityChain, SymplecticPairs };

class AbGroup {
public:
  AbGroup() = default;
  AbGroup(int free_rank, std::vector<std::int64_t> moduli, TorsionOrder order = TorsionOrder::Given);

  int free_rank() const { return free_rank_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  TorsionOrder torsion_order() const { return order_; }
  // Number of coordinates r + s.
  std::size_t rank() const { return static_cast<std::size_t>(free_rank_) + moduli_.size(); }
  // Modulus of coordinate i (0 for free coordinates).
  std::int64_t modulus(std::size_t i) const;
  bool is_finite() const { return free_rank_ == 0; }
  std::uint64_t order() const;
  bool is_trivial() const { return free_rank_ == 0 && moduli_.empty(); }

  AbElem zero() const { return AbElem{std::vector<std::int64_t>(rank(), 0)}; }
  AbElem generator(std::size_t i) const;
  AbElem element(std::vector<std::int64_t> coords) const;
  AbElem add(const AbElem& a, const AbElem& b) const;
  AbElem sub(const AbElem& a, const AbElem& b) const;
  AbElem neg(const AbElem& a) const;
  AbElem scale(std::int64_t k, const AbElem& a) const;
  bool is_zero(const AbElem& a) const;
  // Order of a (0 if infinite).
  std::int64_t element_order(const AbElem& a) const;

  // Finite groups only: all elements in mixed-radix order, and the index of
  // an element in that order.
  std::vector<AbElem> elements() const;
  std::uint64_t index_of(const AbElem& a) const;
  AbElem from_index(std::uint64_t idx) const;

  /// Canonical form: free rank plus SNF torsion, unit moduli dropped.
  AbGroup normal_form() const;
  bool isomorphic(const AbGroup& o) const { return normal_form() == o.normal_form(); }
  bool operator==(const AbGroup& o) const {
    return free_rank_ == o.free_rank_ && moduli_ == o.moduli_;
  }
  std::string to_string() const;

private:
  int free_rank_ = 0;
  std::vector<std::int64_t> moduli_;
  TorsionOrder order_ = TorsionOrder::Given;
};

// Homomorphism acting on coordinates: target = matrix * source.
class AbHom {
public:
  AbHom() = default;
  AbHom(AbGroup source, AbGroup target, IntMat matrix);
  static AbHom identity(const AbGroup& g);
  // Homomorphism sending generator i to images[i].
  static AbHom from_images(const AbGroup& source, const AbGroup& target, const std::vector<AbElem>& images);

  const AbGroup& source() const { return source_; }
  const AbGroup& target() const { return target_; }
  const IntMat& matrix() const { return matrix_; }

  AbElem apply(const AbElem& x) const;
  AbHom compose(const AbHom& inner) const;  // this o inner
  bool well_defined() const;
  // Finite source and target only.
  bool is_bijective() const;
  bool operator==(const AbHom& o) const;
  bool operator<(const AbHom& o) const { return matrix_ < o.matrix_; }

private:
  AbGroup source_, target_;
  IntMat matrix_;  // reduced modulo the target moduli
};

struct Quotient {
  AbGroup group;    // normal form
  AbHom projection; // from Z^n
  // section[i]: integer preimage in Z^n of the i-th generator of `group`
  std::vector<std::vector<std::int64_t>> section;
};

/// Z^n modulo the span of the relation vectors.
Quotient quotient_presentation(std::size_t num_generators, const std::vector<std::vector<std::int64_t>>& relations);

struct EnumerationLimits {
  std::uint64_t max_group_order = 243;
  std::uint64_t max_results = 20'000'000;
};

// Visits every automorphism of the finite group g as the list of generator
// images. `prune(k, images)` may reject a partial assignment images[0..k].
// The visitor returns false to stop early.
void for_each_automorphism(const AbGroup& g,
                           const std::function<bool(std::size_t, const std::vector<AbElem>&)>& prune,
                           const std::function<bool(const std::vector<AbElem>&)>& visit,
                           const EnumerationLimits& limits = {});

/// All automorphisms of a finite group, in lexicographic order of images.
std::vector<AbHom> enumerate_automorphisms(const AbGroup& g, const EnumerationLimits& limits = {});

// Bicharacter with values in the roots of unity of order root_order:
// beta(e_i, e_j) = zeta^{exponents(i,j)}.
class Bicharacter {
public:
  Bicharacter() = default;
  Bicharacter(AbGroup group, std::int64_t root_order, IntMat exponents);

  const AbGroup& group() const { return group_; }
  std::int64_t root_order() const { return root_order_; }
  const IntMat& exponents() const { return exponents_; }

  // Exponent k with beta(u, v) = zeta_{root_order}^k, 0 <= k < root_order.
  std::int64_t exponent(const AbElem& u, const AbElem& v) const;
  CycScalar value(const AbElem& u, const AbElem& v, int conductor) const;

  bool well_defined() const;
  bool is_alternating() const;
  // A nonzero element of the radical, if any.
  std::optional<AbElem> radical_element() const;
  bool is_nondegenerate() const { return !radical_element().has_value(); }
  bool preserved_by(const AbHom& mu) const;

private:
  AbGroup group_;
  std::int64_t root_order_ = 1;
  IntMat exponents_;
};

struct SymplecticGroupData {
  AbGroup group;  // moduli l1, l1, l2, l2, ... (generators a1, b1, a2, b2, ...)
  Bicharacter beta;
};

/// T = prod (Z_li)^2 with beta(a_i, b_i) = zeta_li.
SymplecticGroupData standard_bicharacter(const std::vector<std::int64_t>& ls);

/// All mu in Aut(T) preserving beta, by enumeration of generator images.
std::vector<AbHom> aut_bicharacter_bruteforce(const Bicharacter& beta, std::uint64_t bound = 256);

// Block-matrix description of Aut(T, beta) for a q-group in standard
// symplectic form: blocks ordered by increasing exponent alpha, entries of row
// block i modulo q^alpha_i, A_ij = 0 mod q^(alpha_i - alpha_j) for i > j, and
// tA J A = J mod q^alpha_f.
class SymplecticCriterion {
public:
  static SymplecticCriterion make(const Bicharacter& beta);

  std::int64_t prime() const { return q_; }
  std::size_t size() const { return row_mod_.size(); }
  // Matrices are in the sorted block coordinates.
  bool accepts(const IntMat& a) const;
  std::uint64_t count() const;
  void for_each(const std::function<void(const IntMat&)>& visit) const;
  // Converts a criterion matrix into an automorphism on the original coordinates.
  AbHom to_hom(const IntMat& a) const;

private:
  Bicharacter beta_;
  std::int64_t q_ = 0;
  std::vector<std::size_t> order_;      // sorted position -> original generator index
  std::vector<std::int64_t> row_mod_;   // q^alpha for each sorted coordinate
  IntMat j_;                             // sorted coordinates, modulo q^alpha_f
  std::int64_t top_mod_ = 1;
};

/// Symplectic basis a1, b1, ..., ar, br of (T, beta); throws on a degenerate beta.
std::vector<AbElem> symplectic_basis(const Bicharacter& beta, std::uint64_t bound = 256);

}  // namespace fgw

#endif  // FGW_ABGROUPS_HPP_
