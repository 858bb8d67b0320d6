#include "fgw/io.hpp"

namespace fgw {

namespace {

const char* torsion_name(TorsionOrder o) {
  switch (o) {
    case TorsionOrder::Given: return "given";
    case TorsionOrder::DivisibilityChain: return "divisibility_chain";
    case TorsionOrder::SymplecticPairs: return "symplectic_pairs";
  }
  return "given";
}

TorsionOrder torsion_from_name(const std::string& s) {
  if (s == "given") return TorsionOrder::Given;
  if (s == "divisibility_chain") return TorsionOrder::DivisibilityChain;
  if (s == "symplectic_pairs") return TorsionOrder::SymplecticPairs;
  throw FormatError("unknown torsion_order: " + s);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field: ") + key);
  return j.at(key);
}

template <class T, class F>
std::optional<T> optional_field(const Json& j, const char* key, F f) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return f(j.at(key));
}

}  // namespace

Json to_json(const AbGroup& g) {
  Json j;
  j["free_rank"] = g.free_rank();
  j["moduli"] = g.moduli();
  j["torsion_order"] = torsion_name(g.torsion_order());
  return j;
}

AbGroup ab_group_from_json(const Json& j) {
  TorsionOrder o = j.contains("torsion_order") ? torsion_from_name(j.at("torsion_order").get<std::string>())
                                               : TorsionOrder::Given;
  return AbGroup(field(j, "free_rank").get<int>(), field(j, "moduli").get<std::vector<std::int64_t>>(), o);
}

Json to_json(const AbElem& e) { return Json(e.coords); }
AbElem ab_elem_from_json(const Json& j) { return AbElem{j.get<std::vector<std::int64_t>>()}; }

Json to_json(const CycScalar& s) { return s.to_string(); }

CycScalar scalar_from_json(const Json& j) {
  if (!j.is_string()) throw FormatError("scalar must be a string");
  return CycScalar::parse(j.get<std::string>());
}

Json to_json(const Vec& v) {
  Json j = Json::array();
  for (const auto& s : v) j.push_back(to_json(s));
  return j;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("vector must be an array");
  Vec v;
  for (const auto& s : j) v.push_back(scalar_from_json(s));
  return v;
}

Json to_json(const Mat& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json e = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e.push_back(to_json(m(r, c)));
  j["entries"] = e;
  return j;
}

Mat mat_from_json(const Json& j) {
  const auto rows = field(j, "rows").get<std::size_t>(), cols = field(j, "cols").get<std::size_t>();
  const Json& e = field(j, "entries");
  if (!e.is_array() || e.size() != rows * cols) throw FormatError("matrix entries have the wrong length");
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(e[r * cols + c]);
  return m;
}

Json to_json(const StructAlgebra& a) {
  const AlgebraOptions& o = a.options();
  Json j;
  j["kind"] = "algebra";
  j["name"] = o.name;
  j["conductor"] = o.conductor;
  j["labels"] = a.labels();
  Json table = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const SparseVec& p = a.product(i, k);
      if (p.empty()) continue;
      Json terms = Json::array();
      for (const auto& t : p) terms.push_back(Json::array({t.index, to_json(t.coeff)}));
      table.push_back(Json::array({i, k, terms}));
    }
  j["table"] = table;
  j["unit"] = o.unit ? to_json(*o.unit) : Json();
  j["norm_polar"] = o.norm_polar ? to_json(*o.norm_polar) : Json();
  j["trace"] = o.trace ? to_json(*o.trace) : Json();
  j["commutative"] = o.commutative;
  j["anticommutative"] = o.anticommutative;
  j["composition"] = o.composition;
  j["degree_hint"] = o.degree_hint;
  return j;
}

StructAlgebra algebra_from_json(const Json& j) {
  AlgebraOptions o;
  o.name = field(j, "name").get<std::string>();
  o.conductor = field(j, "conductor").get<int>();
  auto labels = field(j, "labels").get<std::vector<std::string>>();
  const std::size_t n = labels.size();
  std::vector<SparseVec> table(n * n);
  for (const auto& row : field(j, "table")) {
    const auto i = row.at(0).get<std::size_t>(), k = row.at(1).get<std::size_t>();
    if (i >= n || k >= n) throw FormatError("structure constant index out of range");
    SparseVec& p = table[i * n + k];
    for (const auto& t : row.at(2)) {
      const auto idx = t.at(0).get<std::uint32_t>();
      if (idx >= n) throw FormatError("structure constant index out of range");
      p.push_back(SparseTerm{idx, scalar_from_json(t.at(1))});
    }
  }
  o.unit = optional_field<Vec>(j, "unit", vec_from_json);
  o.norm_polar = optional_field<Mat>(j, "norm_polar", mat_from_json);
  o.trace = optional_field<Vec>(j, "trace", vec_from_json);
  o.commutative = j.value("commutative", false);
  o.anticommutative = j.value("anticommutative", false);
  o.composition = j.value("composition", false);
  if (j.contains("degree_hint")) o.degree_hint = j.at("degree_hint").get<std::vector<std::vector<std::int64_t>>>();
  return algebra_from_table(std::move(labels), std::move(table), std::move(o));
}

Json to_json(const Grading& g) {
  Json j;
  j["kind"] = "grading";
  j["name"] = g.name;
  j["algebra"] = to_json(g.algebra);
  j["group"] = to_json(g.group);
  Json d = Json::array();
  for (const auto& e : g.degree) d.push_back(to_json(e));
  j["degrees"] = d;
  if (g.base) {
    j["base"] = to_json(*g.base);
    j["to_base"] = to_json(g.to_base);
    j["from_base"] = to_json(g.from_base);
  } else {
    j["base"] = Json();
  }
  return j;
}

Grading grading_from_json(const Json& j) {
  StructAlgebra a = algebra_from_json(field(j, "algebra"));
  AbGroup group = ab_group_from_json(field(j, "group"));
  std::vector<AbElem> degree;
  for (const auto& e : field(j, "degrees")) degree.push_back(ab_elem_from_json(e));
  if (degree.size() != a.dim()) throw FormatError("one degree per basis element required");
  Grading g = grading_make(std::move(a), std::move(group), std::move(degree), field(j, "name").get<std::string>());
  if (j.contains("base") && !j.at("base").is_null()) {
    g.base = algebra_from_json(j.at("base"));
    g.to_base = mat_from_json(field(j, "to_base"));
    g.from_base = mat_from_json(field(j, "from_base"));
    const std::size_t n = g.algebra.dim();
    if (g.to_base.rows() != n || g.to_base.cols() != n || g.to_base * g.from_base != Mat::identity(n, g.algebra.conductor()))
      throw FormatError("from_base is not the inverse of to_base");
  }
  return g;
}

Json to_json(const AlgAutomorphism& phi) {
  Json j;
  j["kind"] = "automorphism";
  j["algebra"] = phi.algebra;
  j["matrix"] = to_json(phi.matrix);
  return j;
}

AlgAutomorphism automorphism_from_json(const Json& j, const StructAlgebra& a) {
  const auto name = field(j, "algebra").get<std::string>();
  if (name != a.name()) throw FormatError("automorphism is for algebra '" + name + "', not '" + a.name() + "'");
  return automorphism_check(a, mat_from_json(field(j, "matrix")));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace fgw
