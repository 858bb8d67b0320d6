// Weyl groups of gradings: closure of support permutations, support-preserving
// upper bounds, root systems of the Cartan gradings, and the per-grading
// verification pipeline.

#ifndef FGW_WEYL_HPP_
#define FGW_WEYL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgw/gradings.hpp"
#include "fgw/morphisms.hpp"

namespace fgw {

using Perm = std::vector<std::uint32_t>;  // support entry s -> p[s]

Perm perm_identity(std::size_t n);
Perm perm_compose(const Perm& outer, const Perm& inner);  // outer o inner
Perm perm_inverse(const Perm& p);

struct PermGroup {
  std::size_t degree = 0;
  std::vector<Perm> generators;
  std::vector<Perm> elements;  // sorted lexicographically
  std::size_t order() const { return elements.size(); }
  bool contains(const Perm& p) const;
};

/// Breadth-first closure; throws BoundExceeded when more than `bound` elements appear.
PermGroup closure(std::size_t degree, const std::vector<Perm>& gens, std::uint64_t bound = 1'000'000);
// Group-axiom check on a finite set of permutations (identity, products, inverses).
bool is_group(const PermGroup& g);

struct UpperBoundOptions {
  // Also require pi to preserve which products A_s A_t vanish and, on pairs of
  // one-dimensional components, the commutation factor x_s x_t = lambda x_t x_s.
  bool refine = true;
  std::uint64_t bound = 1'000'000;
  int jobs = 0;  // 0: OpenMP default
};

/// All support permutations preserving dimensions (and, when refined, the
/// product pattern) that extend to automorphisms of U(Gamma).
PermGroup support_preserving_upper_bound(const GradedContext& ctx, const UpperBoundOptions& opts = {});
// Single-threaded reference with the same search order.
PermGroup support_preserving_upper_bound_serial(const GradedContext& ctx, const UpperBoundOptions& opts = {});

// Order of {mu in Aut(Z_2^5) | mu(T) = T}, T = 0 x 0 x Z_2^3, from the block
// form |GL_2(2)| * |Hom(Z_2^2, Z_2^3)| * |GL_3(2)|.
std::uint64_t z25_structured_count();
// The same count by enumerating Aut(Z_2^5) with pruning.
std::uint64_t z25_exhaustive_count();

struct RootSystem {
  std::vector<AbElem> roots;       // sorted
  std::vector<bool> is_short;      // per root: lies in Supp Gamma
  std::size_t short_count = 0;
  // Subsets S of the short roots with S = {+-d} u {g | (g,d) = 0} for every d in S.
  std::vector<std::vector<AbElem>> orthogonal_subsets;
  bool subsets_are_iota_supports = false;  // F4 only
};
/// Phi for cartan_cayley (G2) or albert_cartan (F4); throws on any other grading.
RootSystem phi_root_system(const Grading& g);

struct NamedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct WeylReport {
  std::string grading;
  std::uint64_t lower_order = 0, upper_order = 0;
  bool matched = false;
  std::vector<NamedCheck> checks;
  std::vector<Perm> generators;
  std::map<std::string, double> seconds;  // wall-clock, metadata only
  bool all_checks_pass() const;
};

struct WeylStrategy {
  std::optional<std::size_t> samples;  // sampled(n) for albert_z33; full otherwise
  std::uint64_t seed = 1;
  int jobs = 0;
  bool exhaustive_z25 = false;  // enumerate Aut(Z_2^5) instead of the block count
  std::uint64_t bound = 1'000'000;
};
WeylStrategy parse_mode(const std::string& mode);  // "full" or "sampled:n"

// Projections of the generator families used as lower bounds for each builtin grading.
std::vector<AlgAutomorphism> lower_bound_generators(const Grading& g, const GradingParams& params = {});

/// Lower bound (closure of generator projections), upper bound, and the
/// structure checks for a builtin grading.
WeylReport weyl_group(const std::string& name, const GradingParams& params = {}, const WeylStrategy& s = {});
/// Gamma_M(T, k): the order formula |T|^{k-1} |Aut(T,beta)| k!, the action
/// laws of each generator on Z^k x T, and equality with the upper bound.
WeylReport weyl_matrix_theorem_check(const std::vector<std::int64_t>& ls, std::size_t k, const WeylStrategy& s = {});

struct StabDiag {
  bool in_stab = false;
  bool in_diag = false;
};
StabDiag stab_diag_membership(const GradedContext& ctx, const AlgAutomorphism& phi);

// Serialization; timings go into a separate "metadata" object.
std::string weyl_report_json(const WeylReport& r, bool with_metadata = true);
WeylReport weyl_report_from_json(const std::string& text);

}  // namespace fgw

#endif  // FGW_WEYL_HPP_
