// Gradings on algebras with a homogeneous basis: validation, supports,
// universal groups, coarsenings, and the fine gradings on the Cayley algebra,
// matrix algebras and the Albert algebra.

#ifndef FGW_GRADINGS_HPP_
#define FGW_GRADINGS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgw/abgroups.hpp"
#include "fgw/algebras.hpp"
#include "fgw/linalg.hpp"

namespace fgw {

struct GradingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Basis j of `algebra` is homogeneous of degree degree[j]. When the basis was
// obtained by a change of basis from a reference algebra `base`, to_base has the
// new basis vectors as columns (in base coordinates) and from_base is its inverse.
struct Grading {
  StructAlgebra algebra;
  AbGroup group;
  std::vector<AbElem> degree;
  std::string name;
  std::optional<StructAlgebra> base;
  Mat to_base, from_base;
};

/// Validates A_g A_h in A_{g+h} on all basis pairs; throws GradingError naming
/// the first offending (b_i, b_j, b_k).
Grading grading_make(StructAlgebra algebra, AbGroup group, std::vector<AbElem> degree, std::string name = "");

struct SupportEntry {
  AbElem degree;
  std::vector<std::size_t> basis;
  std::size_t dim() const { return basis.size(); }
};

struct SupportTable {
  std::vector<SupportEntry> entries;  // sorted by degree
  std::vector<std::size_t> entry_of;  // basis index -> entry
  std::size_t size() const { return entries.size(); }
  std::optional<std::size_t> find(const AbElem& g) const;
};

SupportTable support(const Grading& g);
// One line per support entry: "<degree>\t<dim>\t<labels>".
std::string support_report(const Grading& g);

struct UniversalGroup {
  AbGroup group;                  // normal form
  std::vector<AbElem> embedding;  // support entry -> U
  Quotient quotient;              // Z^{|supp|} -> U
  std::vector<std::vector<std::int64_t>> relations;
  Grading regraded;               // the same algebra graded by U
};

UniversalGroup universal_abelian_group(const Grading& g);

/// Coarsening by alpha: Gamma.group -> H.
Grading induce(const Grading& g, const AbHom& alpha);

// Basis pairs (i, j) with T(b_i b_j) != 0 but deg b_i + deg b_j != 0.
std::vector<std::pair<std::size_t, std::size_t>> trace_orthogonality_failures(const Grading& g);

struct GradingParams {
  std::vector<std::int64_t> ls{2};
  std::size_t k = 1;
};

const std::vector<std::string>& builtin_grading_names();
/// cartan_cayley, cd_cayley, gamma_M, albert_cartan, albert_z25, albert_zz23, albert_z33.
Grading builtin_grading(const std::string& name, const GradingParams& params = {});
// Gamma_M(T, k) on a given M_k(D): deg(E_ij (x) X_t) = (e_i - e_j, t) in Z^k x T.
Grading gamma_M_grading(const MatrixAlgebraMDk& m);
// The universal group each builtin grading is known to have.
AbGroup declared_universal_group(const std::string& name, const GradingParams& params = {});

// Data behind the Z_3^3 grading. The basis is
//   E(k) = sum_i w^{-k i} E_i,  B(x,k) = 1/2 sum_i w^{-k i} itilde_i(x)
// for x in the good basis of the Cayley algebra (homogeneous for the Okubo
// Z_3^2-grading with deg e1 = (1,0), deg u1 = (0,1)), itilde_i(x) = iota_i(tau^i x).
struct Z33Data {
  Grading grading;
  StructAlgebra cayley;  // good basis
  StructAlgebra albert;  // albert_algebra(cayley)
  std::vector<AbElem> okubo_degree;  // per good-basis element, in Z_3^2
  std::vector<std::string> okubo_degree_derivation;
  std::size_t X1 = 0, X2 = 0, X3 = 0;  // indices of B(e1,0), B(u1,0), E(1)
};
Z33Data albert_z33_data();

// Okubo product x * y = tau(conj x) tau^2(conj y) on the good basis.
Vec okubo_mul(const StructAlgebra& cayley, const Mat& tau, const Vec& x, const Vec& y);

// Cube-normalizes a homogeneous element with X^3 = n 1, n a rational cube;
// throws GradingError otherwise.
Vec cube_normalize(const StructAlgebra& a, const Vec& x);

}  // namespace fgw

#endif  // FGW_GRADINGS_HPP_
