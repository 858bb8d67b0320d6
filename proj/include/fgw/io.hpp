// JSON formats for groups, scalars, algebras, gradings and automorphisms.
// Loading re-runs the same validation as construction.

#ifndef FGW_IO_HPP_
#define FGW_IO_HPP_

#include <stdexcept>
#include <string>

#include "fgw/morphisms.hpp"
#include "json.hpp"

namespace fgw {

using Json = nlohmann::ordered_json;

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json to_json(const AbGroup& g);  // {"free_rank", "moduli", "torsion_order"}
AbGroup ab_group_from_json(const Json& j);
Json to_json(const AbElem& e);    // integer array
AbElem ab_elem_from_json(const Json& j);

Json to_json(const CycScalar& s);  // CycScalar::to_string form
CycScalar scalar_from_json(const Json& j);
Json to_json(const Vec& v);
Vec vec_from_json(const Json& j);
Json to_json(const Mat& m);  // {"rows", "cols", "entries": row-major scalar strings}
Mat mat_from_json(const Json& j);

// Labels, nonzero structure constants as [i, j, [[k, scalar], ...]], unit,
// norm, trace and flags.
Json to_json(const StructAlgebra& a);
StructAlgebra algebra_from_json(const Json& j);

// Full algebra, group, degree per basis element, and the optional base algebra
// with the change-of-basis matrices.
Json to_json(const Grading& g);
Grading grading_from_json(const Json& j);

Json to_json(const AlgAutomorphism& phi);
// Recertifies against `a`; throws MorphismError when the matrix is not an automorphism.
AlgAutomorphism automorphism_from_json(const Json& j, const StructAlgebra& a);

// Two-space indented text; the byte-exact form used for files.
std::string dump(const Json& j);

}  // namespace fgw

#endif  // FGW_IO_HPP_
