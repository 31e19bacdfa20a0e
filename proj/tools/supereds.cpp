#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "supereds/supereds.hpp"
#include "supereds/verify.hpp"

namespace {

using namespace supereds;
using json = nlohmann::ordered_json;

enum Exit { ok = 0, verify_failed = 1, usage = 2, io_error = 3, parse_error = 4, precondition = 5, internal = 6 };

const char* kExitCodes =
    "Exit codes: 0 success, 1 verification failed, 2 usage error, 3 I/O error,\n"
    "            4 parse error, 5 precondition violated, 6 internal error.\n"
    "Environment: SUPEREDS_LOG=error|info|debug (default error), log lines go to stderr.";

int log_level() {
  static const int level = [] {
    const char* v = std::getenv("SUPEREDS_LOG");
    std::string s = v ? v : "error";
    return s == "debug" ? 2 : s == "info" ? 1 : 0;
  }();
  return level;
}

void log(int level, const std::string& msg) {
  if (level <= log_level()) std::cerr << (level == 2 ? "[debug] " : "[info] ") << msg << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  log(2, "read " + std::to_string(ss.str().size()) + " bytes from " + path);
  return ss.str();
}

dsl::Session load_script(const std::string& path) {
  auto s = dsl::Session::from_text(read_file(path));
  log(1, "loaded script " + path);
  return s;
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 1, static_cast<int>(e.byte));
  }
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

json strings(const std::vector<SuperPoly>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back(p.str());
  return a;
}

template <std::size_t N>
json strings(const std::array<SuperPoly, N>& v) {
  return strings(std::vector<SuperPoly>(v.begin(), v.end()));
}

json matrix(const std::vector<std::vector<SuperPoly>>& M) {
  json a = json::array();
  for (const auto& row : M) a.push_back(strings(row));
  return a;
}

std::string basis_vector(const LieSuperAlgebra& L, const BasisVector& v) {
  if (v.empty()) return "0";
  std::string s;
  for (std::size_t t = 0; t < v.size(); ++t) {
    const auto& [k, c] = v[t];
    std::string coeff = c.str();
    bool neg = !coeff.empty() && coeff[0] == '-';
    if (neg) coeff = coeff.substr(1);
    if (t) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    if (coeff != "1") s += (coeff.find_first_of(" +") != std::string::npos ? "(" + coeff + ")" : coeff) + "*";
    s += L.names()[k];
  }
  return s;
}

std::vector<std::string> field_strings(const std::vector<VectorField>& fs) {
  std::vector<std::string> out;
  for (const auto& X : fs) out.push_back(X.str());
  return out;
}

struct Output {
  bool as_json = false;
  void emit(const json& j, const std::string& text) const {
    if (as_json) std::cout << j.dump(2) << '\n';
    else std::cout << text;
  }
};

DistributionBasis distribution_from(dsl::Session& s) {
  if (!s.forms().empty()) {
    if (!s.fields().empty()) throw PreconditionError("give either Pfaff forms or fields, not both");
    return annihilator({s.context(), s.forms()});
  }
  if (s.fields().empty()) throw PreconditionError("script declares neither forms nor fields");
  DistributionBasis D{s.context(), {}};
  for (const auto& f : s.fields()) D.fields.push_back(f.field);
  return D;
}

LieSuperAlgebra algebra_from(const std::string& path) {
  if (ends_with(path, ".json")) return io::algebra_from_json(load_json(path));
  auto s = load_script(path);
  if (s.fields().empty()) throw PreconditionError("script declares no fields");
  std::vector<VectorField> fs;
  std::vector<std::string> names;
  for (const auto& f : s.fields()) {
    fs.push_back(f.field);
    names.push_back(f.name);
  }
  return extract_structure(fs, names);
}

int cmd_ideal(const Output& out, const std::string& path) {
  auto s = load_script(path);
  if (!s.order() || !s.equation()) throw PreconditionError("script needs 'order' and 'equation'");
  auto I = build_ideal({*s.order(), *s.equation(), s.extras(), s.distinguished()});
  std::ostringstream os;
  os << "domain:";
  json gens = json::array();
  for (const auto& g : I.domain->generators()) {
    os << ' ' << g.name;
    gens.push_back(g.name);
  }
  os << "\ngenerators:\n";
  for (const auto& g : I.generators) os << "  " << g.str() << '\n';
  os << "distinguished: " << (*I.domain)[I.distinguished].name << '\n';
  if (!I.diagnostic.empty()) os << "diagnostic: " << I.diagnostic << '\n';
  json j{{"domain", gens},
         {"generators", strings(I.generators)},
         {"distinguished", (*I.domain)[I.distinguished].name},
         {"f_step", I.f_step()},
         {"diagnostic", I.diagnostic}};
  out.emit(j, os.str());
  return ok;
}

int cmd_symmetries(const Output& out, const std::string& path, std::size_t degree, const std::string& parity,
                   const std::string& restriction) {
  auto s = load_script(path);
  if (!s.order() || !s.equation()) throw PreconditionError("script needs 'order' and 'equation'");
  auto I = build_ideal({*s.order(), *s.equation(), s.extras(), s.distinguished()});
  auto r = restriction == "point" ? SymmetryAnsatz::Restriction::point : SymmetryAnsatz::Restriction::full;
  std::vector<VectorField> sols;
  std::vector<Parity> pars;
  if (parity != "odd") pars.push_back(Parity::even);
  if (parity != "even") pars.push_back(Parity::odd);
  for (auto p : pars) {
    auto part = solve_symmetries(I, {degree, p, r});
    log(1, std::to_string(part.size()) + " " + to_string(p) + " solutions");
    sols.insert(sols.end(), part.begin(), part.end());
  }
  std::ostringstream os;
  os << "dimension " << sols.size() << '\n';
  for (const auto& X : sols) os << "  " << X.str() << '\n';
  json j{{"degree", degree}, {"parity", parity}, {"restriction", restriction}, {"dimension", sols.size()},
         {"fields", field_strings(sols)}};
  out.emit(j, os.str());
  return ok;
}

int cmd_frobenius(const Output& out, const std::string& path) {
  auto s = load_script(path);
  auto D = distribution_from(s);
  auto v = frobenius_test(D);
  std::ostringstream os;
  os << (v.integrable ? "integrable" : "nonintegrable") << (v.exact ? "" : " (jet test)") << '\n';
  os << "basis:\n";
  for (std::size_t k = 0; k < D.fields.size(); ++k) os << "  X" << k << " = " << D.fields[k].str() << '\n';
  json j{{"integrable", v.integrable}, {"exact", v.exact}, {"basis", field_strings(D.fields)}};
  if (!v.integrable) {
    os << "witness: [X" << v.first << ", X" << v.second << "] = " << v.bracket.str() << '\n';
    os << "outside the span by: " << v.residual.str() << '\n';
    j["witness"] = {{"first", v.first}, {"second", v.second}, {"bracket", v.bracket.str()},
                    {"residual", v.residual.str()}};
  }
  out.emit(j, os.str());
  return ok;
}

int cmd_growth(const Output& out, const std::string& path, std::size_t depth) {
  auto s = load_script(path);
  auto g = growth_vector(distribution_from(s), depth);
  std::ostringstream os;
  for (std::size_t k = 0; k < g.size(); ++k) os << (k ? " " : "") << g[k];
  os << '\n';
  out.emit(json{{"growth", g}, {"depth_bound", depth}}, os.str());
  return ok;
}

int cmd_cohomology(const Output& out, const std::string& path, const std::string& module, std::size_t imax,
                   bool weighted) {
  auto L = algebra_from(path);
  auto mod = module == "adjoint" ? CEModule::adjoint : CEModule::trivial;
  CohomologyReport rep;
  json j{{"module", module}, {"imax", imax}, {"weighted", weighted}};
  if (weighted) {
    auto w = ce_cohomology_weighted_report(L, mod, imax);
    rep = w.total;
    j["toral"] = w.toral;
    j["blocks"] = w.blocks;
  } else {
    rep = ce_cohomology_report(L, mod, imax);
  }
  log(1, "cohomology took " + std::to_string(rep.seconds) + " s");
  j["h"] = rep.h;
  j["cochains"] = rep.cochains;
  j["ranks"] = rep.ranks;
  std::ostringstream os;
  for (std::size_t k = 0; k < rep.h.size(); ++k) os << (k ? " " : "") << rep.h[k];
  os << '\n';
  out.emit(j, os.str());
  return ok;
}

int cmd_bracket_table(const Output& out, const std::string& path) {
  auto L = algebra_from(path);
  auto v = verify_superalgebra(L);
  std::ostringstream os;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t k = i; k < L.dim(); ++k) {
      const auto& b = L.bracket(i, k);
      if (b.empty()) continue;
      os << "[" << L.names()[i] << ", " << L.names()[k] << "] = " << basis_vector(L, b) << '\n';
    }
  if (!v.ok) os << "not a Lie superalgebra: " << v.violation << '\n';
  json j = io::to_json(L);
  j["superalgebra"] = v.ok;
  if (!v.ok) j["violation"] = v.violation;
  out.emit(j, os.str());
  return ok;
}

int cmd_curvature(const Output& out, const std::string& path) {
  auto s = load_script(path);
  auto C = connection_from_session(s);
  auto F = curvature(C);
  bool bianchi = true;
  for (const auto& x : apply_connection(end_connection(C), flatten(F), 2)) bianchi = bianchi && x.is_zero();
  std::ostringstream os;
  for (std::size_t i = 0; i < C.rank; ++i)
    for (std::size_t k = 0; k < C.rank; ++k) os << "F " << i + 1 << ' ' << k + 1 << " = " << F[i][k].str() << '\n';
  os << "Bianchi identity: " << (bianchi ? "holds" : "fails") << '\n';
  out.emit(json{{"rank", C.rank}, {"F", matrix(F)}, {"bianchi", bianchi}}, os.str());
  return ok;
}

int cmd_residual(const Output& out, const std::string& which, const std::string& path) {
  auto in = io::physics_from_json(load_json(path));
  auto g = GammaSet::weyl();
  std::ostringstream os;
  json j{{"equation", which}};
  if (which == "maxwell") {
    auto r = maxwell_residual(in.cfg, g);
    os << "d*F - *J = " << r.residual.str() << '\n' << "J = " << r.current.str() << '\n';
    j["residual"] = r.residual.str();
    j["current"] = r.current.str();
    j["bilinear"] = matrix(r.bilinear);
    j["satisfied"] = r.residual.is_zero();
  } else {
    auto r = dirac_residual(in.cfg, g, in.charge, in.mass);
    bool zero = true;
    for (std::size_t a = 0; a < 4; ++a) {
      os << "component " << a << ": " << r[a].str() << '\n';
      zero = zero && r[a].is_zero();
    }
    j["residual"] = strings(r);
    j["satisfied"] = zero;
  }
  out.emit(j, os.str());
  return ok;
}

int cmd_susy(const Output& out, const std::string& path) {
  auto in = io::physics_from_json(load_json(path));
  auto v = susy_variation(in.cfg, GammaSet::weyl());
  std::ostringstream os;
  for (std::size_t a = 0; a < 4; ++a) os << "delta psi" << a << " = " << v.dpsi[a].str() << '\n';
  for (std::size_t a = 0; a < 4; ++a) os << "delta psibar" << a << " = " << v.dpsibar[a].str() << '\n';
  for (std::size_t m = 0; m < 4; ++m) os << "delta A" << m << " = " << v.dA[m].str() << '\n';
  out.emit(json{{"dpsi", strings(v.dpsi)}, {"dpsibar", strings(v.dpsibar)}, {"dA", strings(v.dA)},
                {"sigmaF", matrix(v.sigmaF)}},
           os.str());
  return ok;
}

int cmd_hodge(const Output& out, const std::string& signature, const std::string& expr) {
  auto comma = signature.find(',');
  auto digits = [](const std::string& t) {
    return !t.empty() && t.size() < 4 && t.find_first_not_of("0123456789") == std::string::npos;
  };
  if (comma == std::string::npos || !digits(signature.substr(0, comma)) || !digits(signature.substr(comma + 1)))
    throw PreconditionError("--signature expects n,s");
  std::size_t n = std::stoul(signature.substr(0, comma)), s = std::stoul(signature.substr(comma + 1));
  std::vector<CoordinateSpec> cs;
  for (std::size_t k = 1; k <= n; ++k) cs.push_back({"x" + std::to_string(k)});
  auto c = make_domain(cs);
  auto w = dsl::parse_expression(c, expr);
  auto h = hodge_dual(w, {n, s});
  out.emit(json{{"signature", {n, s}}, {"form", w.str()}, {"dual", h.str()}}, h.str() + "\n");
  return ok;
}

int cmd_verify(const Output& out, const std::string& name) {
  std::vector<const verify::Criterion*> todo;
  if (name.empty()) {
    for (const auto& c : verify::criteria()) todo.push_back(&c);
  } else {
    auto c = verify::find(name);
    if (!c) throw PreconditionError("unknown criterion '" + name + "'");
    todo.push_back(c);
  }
  bool all = true;
  json arr = json::array();
  std::ostringstream os;
  for (auto c : todo) {
    auto r = verify::run(*c);
    all = all && r.pass;
    os << verify::line(r) << '\n';
    arr.push_back({{"id", r.id}, {"name", r.name}, {"title", r.title}, {"pass", r.pass}, {"seconds", r.seconds},
                   {"limit_seconds", r.limit_seconds}, {"detail", r.detail}});
  }
  out.emit(json{{"pass", all}, {"criteria", arr}}, os.str());
  return all ? ok : verify_failed;
}

int cmd_bench(const Output& out, std::size_t kmin, std::size_t kmax, std::size_t imax, const std::string& module) {
  std::vector<std::pair<std::string, LieSuperAlgebra>> suite;
  for (std::size_t k = kmin; k <= kmax; ++k) suite.push_back({"n" + std::to_string(k), fixtures::nilpotent(k)});
  auto recs = benchmark_cohomology(suite, imax, module == "adjoint" ? CEModule::adjoint : CEModule::trivial);
  json arr = json::array();
  bool agree = true;
  for (const auto& r : recs) {
    agree = agree && r.agree;
    json j{{"name", r.name}, {"module", to_string(r.module)}, {"imax", r.imax}, {"h", r.h}, {"cochains", r.cochains},
           {"ranks", r.ranks}, {"naive_seconds", r.naive_seconds}, {"agree", r.agree}};
    if (r.weighted_seconds) j["weighted_seconds"] = *r.weighted_seconds;
    if (r.blocks) j["blocks"] = *r.blocks;
    if (r.weighted_cochains) j["weighted_cochains"] = *r.weighted_cochains;
    arr.push_back(j);
  }
  out.emit(json{{"records", arr}, {"agree", agree}}, verify::bench_table(recs));
  return agree ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computer algebra for supermanifolds: forms, differential systems, Lie superalgebras, gauge fields"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  Output out;
  std::string mode = "text";
  app.add_option("--output", mode, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string file, which, parity = "even", restriction = "full", module = "trivial", signature, name;
  std::size_t degree = 1, imax = 3, depth = 6, kmin = 4, kmax = 7;
  bool weighted = false;

  auto ideal = app.add_subcommand("ideal", "Build the differential ideal of an ODE script and print its generators");
  ideal->add_option("file", file, ".dsl script with order/equation")->required();

  auto sym = app.add_subcommand("symmetries", "Solve the determining system for polynomial symmetries");
  sym->add_option("file", file, ".dsl script with order/equation")->required();
  sym->add_option("--degree", degree, "Ansatz degree D");
  sym->add_option("--parity", parity)->check(CLI::IsMember({"even", "odd", "both"}));
  sym->add_option("--restriction", restriction)->check(CLI::IsMember({"point", "full"}));

  auto frob = app.add_subcommand("frobenius", "Frobenius test of a Pfaff system or a field distribution");
  frob->add_option("file", file, ".pfaff or .dsl script")->required();

  auto growth = app.add_subcommand("growth", "Growth vector of a distribution at the origin");
  growth->add_option("file", file, ".pfaff or .dsl script")->required();
  growth->add_option("--depth", depth, "Depth bound");

  auto coh = app.add_subcommand("cohomology", "Chevalley-Eilenberg cohomology from structure constants");
  coh->add_option("file", file, "structure constant .json or .dsl with fields")->required();
  coh->add_option("--module", module)->check(CLI::IsMember({"trivial", "adjoint"}));
  coh->add_option("--imax", imax, "Top degree");
  coh->add_flag("--weighted", weighted, "Use the weight decomposition");

  auto table = app.add_subcommand("bracket-table", "Structure constants of a field realization or .json algebra");
  table->add_option("file", file)->required();

  auto curv = app.add_subcommand("curvature", "Curvature matrix of a connection script");
  curv->add_option("file", file, ".dsl with rank/alpha statements")->required();

  auto res = app.add_subcommand("residual", "Maxwell or Dirac residual of a field configuration");
  res->add_option("equation", which)->required()->check(CLI::IsMember({"maxwell", "dirac"}));
  res->add_option("file", file, "field configuration .json")->required();

  auto susy = app.add_subcommand("susy-vary", "Infinitesimal supersymmetry variations of a field configuration");
  susy->add_option("file", file, "field configuration .json")->required();

  std::string expr;
  auto hodge = app.add_subcommand("hodge", "Hodge dual on R^n with signature (n, s), coordinates x1..xn");
  hodge->add_option("--signature", signature, "n,s")->required();
  hodge->add_option("form", expr, "constant-coefficient form, e.g. dx1*dx2")->required();

  auto ver = app.add_subcommand("verify", "Run the acceptance criteria (all, or one by name or number)");
  ver->add_option("name", name);

  auto bench = app.add_subcommand("bench", "Naive vs weighted cohomology on the nilpotent suite n(k)");
  bench->add_option("--kmin", kmin)->check(CLI::Range(2, 12));
  bench->add_option("--kmax", kmax)->check(CLI::Range(2, 12));
  bench->add_option("--imax", imax);
  bench->add_option("--module", module)->check(CLI::IsMember({"trivial", "adjoint"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }
  out.as_json = mode == "json";

  try {
    if (*ideal) return cmd_ideal(out, file);
    if (*sym) return cmd_symmetries(out, file, degree, parity, restriction);
    if (*frob) return cmd_frobenius(out, file);
    if (*growth) return cmd_growth(out, file, depth);
    if (*coh) return cmd_cohomology(out, file, module, imax, weighted);
    if (*table) return cmd_bracket_table(out, file);
    if (*curv) return cmd_curvature(out, file);
    if (*res) return cmd_residual(out, which, file);
    if (*susy) return cmd_susy(out, file);
    if (*hodge) return cmd_hodge(out, signature, expr);
    if (*ver) return cmd_verify(out, name);
    if (*bench) {
      if (kmin > kmax) throw PreconditionError("--kmin exceeds --kmax");
      return cmd_bench(out, kmin, kmax, imax, module);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::io: return io_error;
      case ErrorKind::parse: return parse_error;
      default: return precondition;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return internal;
  }
  return usage;
}
