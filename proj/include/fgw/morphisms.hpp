// Algebra automorphisms: certification, the induced permutation of a grading's
// support, extension from generators, and the explicit automorphism families
// of the Cayley algebra, matrix algebras and the Albert algebra.

#ifndef FGW_MORPHISMS_HPP_
#define FGW_MORPHISMS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgw/abgroups.hpp"
#include "fgw/algebras.hpp"
#include "fgw/gradings.hpp"
#include "fgw/linalg.hpp"

namespace fgw {

struct MorphismError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear map on basis coordinates: column j is the image of b_j.
struct AlgAutomorphism {
  std::string algebra;
  Mat matrix;
  bool certified = false;
  Vec apply(const Vec& x) const { return matrix.apply(x); }
};

/// Certifies phi(b_i b_j) = phi(b_i) phi(b_j) on all basis pairs, phi(1) = 1
/// and invertibility; throws MorphismError naming a witness pair.
AlgAutomorphism automorphism_check(const StructAlgebra& a, const Mat& m);
// First failing witness, or nullopt if m is an automorphism.
std::optional<std::string> automorphism_failure(const StructAlgebra& a, const Mat& m);
AlgAutomorphism compose(const AlgAutomorphism& outer, const AlgAutomorphism& inner);

// A grading together with its support and universal group.
struct GradedContext {
  Grading grading;
  SupportTable supp;
  UniversalGroup univ;
};
GradedContext graded_context(Grading g);

// Permutation of support entries (entry s goes to perm[s]) with the induced
// automorphism of U(Gamma).
struct SupportPerm {
  std::vector<std::uint32_t> perm;
  AbHom induced;
};

/// pi with phi(A_s) = A_{pi(s)}; throws MorphismError("not in Aut(Gamma)") when
/// phi splits a component.
SupportPerm graded_automorphism_check(const GradedContext& ctx, const AlgAutomorphism& phi);
// The automorphism of U(Gamma) extending perm, if there is one.
std::optional<AbHom> induced_universal(const GradedContext& ctx, const std::vector<std::uint32_t>& perm);

// Expresses a matrix given on g.base in the grading's own basis.
Mat to_grading_basis(const Grading& g, const Mat& base_matrix);
AlgAutomorphism in_grading_basis(const Grading& g, const AlgAutomorphism& base_aut);

// ---- Cayley algebra (good basis)
AlgAutomorphism tau_cayley(const StructAlgebra& c);
AlgAutomorphism phi1_cayley(const StructAlgebra& c);  // e1 <-> e2, u_i <-> v_i
AlgAutomorphism phi2_cayley(const StructAlgebra& c);  // u1 -> -u1, u2 <-> u3, v1 -> -v1, v2 <-> v3

// ---- Albert algebra (a = albert_algebra(c), base coordinates)
AlgAutomorphism psi_123(const StructAlgebra& a, const StructAlgebra& c);
AlgAutomorphism psi_23(const StructAlgebra& a, const StructAlgebra& c);
AlgAutomorphism psi_12(const StructAlgebra& a, const StructAlgebra& c);
// Fixes E_i, iota_i(x) -> iota_i(phi x).
AlgAutomorphism phi_extension_albert(const StructAlgebra& a, const StructAlgebra& c, const Mat& phi);
AlgAutomorphism tau_albert(const StructAlgebra& a, const StructAlgebra& c);

Mat reflection(const StructAlgebra& c, const Vec& v);  // z -> z - n(z,v)/n(v) v
enum class SpinOrder { XY, YX };  // chi_c = s_x s_y or s_y s_x
/// psi_c for c = x.y, n(x) = n(y) = 1: fixes E_i, iota_1(z) -> iota_1(chi_c z),
/// iota_2(z) -> iota_2((zy) conj x), iota_3(z) -> iota_3(conj x (yz)).
/// Throws MorphismError("spin convention mismatch") if certification fails.
AlgAutomorphism spin_automorphism(const StructAlgebra& a, const StructAlgebra& c, const Vec& x, const Vec& y,
                                  SpinOrder order = SpinOrder::XY);
Mat spin_chi(const StructAlgebra& c, const Vec& x, const Vec& y, SpinOrder order = SpinOrder::XY);

// ---- Z x Z_2^3 grading (nu basis)
AlgAutomorphism psi0_zz23(const Grading& zz);
AlgAutomorphism phi_extension_zz23(const Grading& zz, const StructAlgebra& cd, const Mat& phi);

// ---- Z_3^3 grading: phi_1, phi_2, phi_3 in the grading's basis
AlgAutomorphism z33_phi(const Z33Data& z, int j);

// ---- Matrix algebras
AlgAutomorphism ad_homogeneous(const PauliAlgebra& d, std::size_t t);
// psi_0 with psi_0(X_u) in F X_{mu(u)}; throws if mu does not preserve beta.
AlgAutomorphism division_aut_from_symplectic(const PauliAlgebra& d, const AbHom& mu);
// E_ij (x) x -> E_{pi(i) pi(j)} (x) d_i psi0(x) d_j^{-1}, d_i = X_{dlist[i]} (indices into T.elements()).
AlgAutomorphism monomial_automorphism(const MatrixAlgebraMDk& m, const std::vector<std::size_t>& pi,
                                      const std::vector<std::size_t>& dlist, const AlgAutomorphism& psi0);

// ---- Extension from generators
enum class WordOrder { Forward, Reverse };
struct Extension {
  std::optional<AlgAutomorphism> aut;
  std::string failure;  // "inconsistent", "not generating", or a certification witness
  explicit operator bool() const { return aut.has_value(); }
};
Extension extend_from_generators(const StructAlgebra& a, const std::vector<Vec>& gens, const std::vector<Vec>& images,
                                 WordOrder order = WordOrder::Forward);

/// Octonion automorphism w_i -> w~_i, w~_i in C_{mu(c_i)} with w~_i^2 = 1
/// (cd_cayley grading).
Extension octonion_aut_from_group_aut(const Grading& cd, const AbHom& mu);

// lambda with (x1 x2) x3 = lambda x1 (x2 x3), if the two sides are proportional and nonzero.
std::optional<CycScalar> associativity_defect(const StructAlgebra& a, const Vec& x1, const Vec& x2, const Vec& x3);

// Extension of X_j -> X'_j with deg X'_j = mu(g_j), X'_j^3 = 1.
Extension realize_z33(const Z33Data& z, const AbHom& mu);

// Scalar c in the algebra's field with (c x)^m = 1 when x^m is a nonzero
// multiple of 1 (m-th power taken with left-normed products).
std::optional<Vec> power_normalize(const StructAlgebra& a, const Vec& x, int m);

}  // namespace fgw

#endif  // FGW_MORPHISMS_HPP_
