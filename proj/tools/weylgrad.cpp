// weylgrad: build algebras and gradings into a workspace, compute Weyl groups,
// and run the verification suites.
//
// Exit codes: 0 success, 1 logical failure (validation, mismatch, unknown
// name), 2 resource bound exhausted.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fgw/io.hpp"
#include "fgw/suites.hpp"

namespace fs = std::filesystem;
using namespace fgw;

namespace {

struct Options {
  std::string workspace = "weylgrad-workspace";
  int jobs = 0;
  std::string kind, name;
  std::vector<std::int64_t> ls{2};
  std::size_t k = 1;
  std::string mode = "full";
  std::string out;
  std::uint64_t bound = 1'000'000;
  std::string suite = "all";
  bool tsv = false;
  std::string file, algebra_file;
};

struct CliFailure {
  int code;
  std::string error, message;
};

[[noreturn]] void fail(int code, std::string error, std::string message) {
  throw CliFailure{code, std::move(error), std::move(message)};
}

std::string ls_stem(const std::vector<std::int64_t>& ls) {
  std::string s;
  for (auto l : ls) s += "_" + std::to_string(l);
  return s;
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) fail(1, "io error", "cannot write " + p.string());
}

Json read_json(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) fail(1, "io error", "cannot read " + p.string());
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const std::exception& e) {
    fail(1, "format error", p.string() + ": " + e.what());
  }
}

// Builtin algebra by CLI name; the stem names the output file.
StructAlgebra build_algebra(const Options& o, std::string& stem) {
  stem = o.name;
  if (o.name == "cayley") return cayley_good_basis();
  if (o.name == "cayley_cd") return cayley_cd_basis();
  if (o.name == "okubo") return okubo_algebra();
  if (o.name == "albert") return albert_algebra(cayley_good_basis());
  if (o.name == "albert_cd") return albert_algebra(cayley_cd_basis());
  if (o.name == "pauli") {
    stem += ls_stem(o.ls);
    return pauli_matrix_algebra(o.ls).algebra;
  }
  if (o.name == "matrix") {
    stem += ls_stem(o.ls) + "_k" + std::to_string(o.k);
    return matrix_algebra_MDk(o.ls, o.k).algebra;
  }
  fail(1, "unknown algebra", o.name);
}

bool known_grading(const std::string& name) {
  const auto& n = builtin_grading_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::string grading_stem(const std::string& name, const GradingParams& p) {
  return name == "gamma_M" ? name + ls_stem(p.ls) + "_k" + std::to_string(p.k) : name;
}

fs::path grading_path(const Options& o, const std::string& name, const GradingParams& p) {
  return fs::path(o.workspace) / "gradings" / (grading_stem(name, p) + ".json");
}

// Builds (or checks the stored copy of) a builtin grading in the workspace.
Grading ensure_grading(const Options& o, const std::string& name, const GradingParams& p) {
  if (!known_grading(name)) fail(1, "unknown grading", name);
  Grading g = builtin_grading(name, p);
  const fs::path path = grading_path(o, name, p);
  const std::string text = dump(to_json(g));
  if (fs::exists(path)) {
    Grading stored = grading_from_json(read_json(path));
    if (dump(to_json(stored)) != text) fail(1, "workspace mismatch", path.string() + " differs from the builtin grading");
  } else {
    write_file(path, text);
  }
  return g;
}

int cmd_build(const Options& o) {
  if (o.kind == "algebra") {
    std::string stem;
    StructAlgebra a = build_algebra(o, stem);
    const fs::path path = fs::path(o.workspace) / "algebras" / (stem + ".json");
    write_file(path, dump(to_json(a)));
    std::cout << path.string() << "\t" << a.name() << "\tdim " << a.dim() << "\n";
    return 0;
  }
  if (o.kind == "grading") {
    GradingParams p{o.ls, o.k};
    Grading g = ensure_grading(o, o.name, p);
    std::cout << grading_path(o, o.name, p).string() << "\t" << g.name << "\tgroup " << g.group.to_string() << "\n"
              << support_report(g);
    return 0;
  }
  fail(1, "invalid argument", "build kind must be algebra or grading, got '" + o.kind + "'");
}

int cmd_weyl(const Options& o) {
  GradingParams p{o.ls, o.k};
  WeylStrategy s;
  try {
    s = parse_mode(o.mode);
  } catch (const std::invalid_argument& e) {
    fail(1, "invalid argument", e.what());
  }
  s.jobs = o.jobs;
  s.bound = o.bound;
  ensure_grading(o, o.name, p);
  WeylReport r = weyl_group(o.name, p, s);
  const fs::path out = o.out.empty() ? fs::path(o.workspace) / "reports" / (grading_stem(o.name, p) + ".json") : fs::path(o.out);
  write_file(out, weyl_report_json(r) + "\n");
  std::cout << r.grading << ": lower " << r.lower_order << ", upper " << r.upper_order << ", "
            << (r.matched ? "matched" : "MISMATCH") << "\n";
  for (const auto& c : r.checks)
    std::cout << "  " << c.name << ": " << (c.passed ? "pass" : "fail") << (c.detail.empty() ? "" : " (" + c.detail + ")")
              << "\n";
  std::cout << "report: " << out.string() << "\n";
  return r.matched && r.all_checks_pass() ? 0 : 1;
}

int cmd_verify(const Options& o) {
  if (o.suite != "all" && std::find(suite_names().begin(), suite_names().end(), o.suite) == suite_names().end())
    fail(1, "invalid argument", "unknown suite: " + o.suite);
  WeylStrategy s;
  try {
    s = parse_mode(o.mode);
  } catch (const std::invalid_argument& e) {
    fail(1, "invalid argument", e.what());
  }
  s.jobs = o.jobs;
  s.bound = o.bound;
  // prerequisites: the builtin gradings
  for (const auto& name : builtin_grading_names()) ensure_grading(o, name, {});
  auto checks = run_suite(o.suite, s);
  if (o.tsv) std::cout << "check\tresult\tdetail\n";
  const NamedCheck* first = nullptr;
  for (const auto& c : checks) {
    if (o.tsv)
      std::cout << c.name << "\t" << (c.passed ? "pass" : "fail") << "\t" << c.detail << "\n";
    else
      std::cout << c.name << ": " << (c.passed ? "pass" : "fail") << (c.detail.empty() ? "" : " (" + c.detail + ")")
                << "\n";
    if (!c.passed && !first) first = &c;
  }
  if (first) fail(1, "check failed", first->name);
  return 0;
}

// Loads a stored artifact, validating it; prints its kind and name.
int cmd_check(const Options& o) {
  Json j = read_json(o.file);
  const std::string kind = j.value("kind", j.contains("lower_order") ? "report" : "");
  std::string canonical;
  if (kind == "algebra") {
    StructAlgebra a = algebra_from_json(j);
    canonical = dump(to_json(a));
    std::cout << "algebra " << a.name() << " dim " << a.dim() << "\n";
  } else if (kind == "grading") {
    Grading g = grading_from_json(j);
    canonical = dump(to_json(g));
    std::cout << "grading " << g.name << " group " << g.group.to_string() << " support " << support(g).size() << "\n";
  } else if (kind == "automorphism") {
    if (o.algebra_file.empty()) fail(1, "invalid argument", "--algebra FILE is required for automorphisms");
    StructAlgebra a = algebra_from_json(read_json(o.algebra_file));
    canonical = dump(to_json(automorphism_from_json(j, a)));
    std::cout << "automorphism of " << a.name() << " certified\n";
  } else if (kind == "report") {
    WeylReport r = weyl_report_from_json(j.dump());
    canonical = dump(Json::parse(weyl_report_json(r)));
    std::cout << "report " << r.grading << " lower " << r.lower_order << " upper " << r.upper_order << "\n";
  } else {
    fail(1, "format error", "unrecognized artifact kind");
  }
  if (canonical != dump(j)) fail(1, "format error", "artifact is not in canonical form");
  return 0;
}

void print_error(const CliFailure& f, const std::string& command) {
  Json j;
  j["error"] = f.error;
  j["message"] = f.message;
  j["command"] = command;
  j["exit_code"] = f.code;
  std::cerr << j.dump() << "\n";
}

// "2,2" -> {2, 2}
std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) out.push_back(std::stoll(part));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fine gradings and their Weyl groups, computed exactly"};
  app.require_subcommand(1);
  Options o;
  std::string ls_text;
  app.add_option("--workspace", o.workspace, "Workspace directory")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads (0: all)")->check(CLI::NonNegativeNumber);

  auto params = [&](CLI::App* c) {
    c->add_option("--l", ls_text, "Cyclic factors l_1,...,l_r of T");
    c->add_option("--k", o.k, "Matrix size k")->check(CLI::PositiveNumber);
  };

  CLI::App* build = app.add_subcommand("build", "Build a builtin algebra or grading into the workspace");
  build->add_option("kind", o.kind, "algebra | grading")->required();
  build->add_option("name", o.name, "Builtin name")->required();
  params(build);

  CLI::App* weyl = app.add_subcommand("weyl", "Compute the Weyl group of a builtin grading");
  weyl->add_option("grading", o.name, "Grading name")->required();
  weyl->add_option("--mode", o.mode, "full | sampled:n")->capture_default_str();
  weyl->add_option("--out", o.out, "Report path");
  weyl->add_option("--bound", o.bound, "Maximum group order explored")->capture_default_str();
  params(weyl);

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", o.suite, "all | algebras | gradings | weyl")->capture_default_str();
  verify->add_flag("--tsv", o.tsv, "Tab-separated summary table");
  verify->add_option("--mode", o.mode, "full | sampled:n (for albert_z33)")->capture_default_str();
  verify->add_option("--bound", o.bound, "Maximum group order explored")->capture_default_str();

  CLI::App* check = app.add_subcommand("check", "Load and validate a stored JSON artifact");
  check->add_option("file", o.file, "Artifact path")->required();
  check->add_option("--algebra", o.algebra_file, "Algebra file (for automorphisms)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!ls_text.empty()) o.ls = parse_list(ls_text);
    if (build->parsed()) return cmd_build(o);
    if (weyl->parsed()) return cmd_weyl(o);
    if (verify->parsed()) return cmd_verify(o);
    return cmd_check(o);
  } catch (const CliFailure& f) {
    print_error(f, command);
    return f.code;
  } catch (const BoundExceeded& e) {
    print_error({2, "bound exceeded", e.what()}, command);
    return 2;
  } catch (const std::invalid_argument& e) {
    print_error({1, "invalid argument", e.what()}, command);
    return 1;
  } catch (const std::exception& e) {
    print_error({1, "validation failed", e.what()}, command);
    return 1;
  }
}
