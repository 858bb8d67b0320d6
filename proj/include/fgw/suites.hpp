// Named verification checks grouped into suites (algebras, gradings, weyl),
// and the ten acceptance criteria built from them.

#ifndef FGW_SUITES_HPP_
#define FGW_SUITES_HPP_

#include <functional>
#include <string>
#include <vector>

#include "fgw/weyl.hpp"

namespace fgw {

// Failing basis pairs of the Albert product against the 3x3 hermitian matrix
// model X Y = (X.Y + Y.X)/2 (empty when the two agree).
std::vector<std::string> albert_matrix_model_failures(const StructAlgebra& albert, const StructAlgebra& c);
// Linearized composition n(xy, zw) + n(xw, zy) = n(x,z) n(y,w) on basis quadruples.
std::vector<std::string> composition_failures(const StructAlgebra& c);
// Linearized symmetric composition (x*y)*z + (z*y)*x = n(x,z) y on basis triples.
std::vector<std::string> symmetric_composition_failures(const StructAlgebra& s);
// Cayley good-basis table against the literal multiplication table.
std::vector<std::string> cayley_figure_failures(const StructAlgebra& c);

const std::vector<std::string>& suite_names();  // algebras, gradings, weyl
/// Runs one suite ("all" runs every suite); exceptions inside a check make it fail.
/// Throws std::invalid_argument for an unknown suite name.
std::vector<NamedCheck> run_suite(const std::string& suite, const WeylStrategy& s = {});

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};
// Criterion n (1..10). The Z_3^3 criterion runs both the exhaustive and the sampled:200 mode.
CriterionResult acceptance_criterion(int n, int jobs = 0);

}  // namespace fgw

#endif  // FGW_SUITES_HPP_
