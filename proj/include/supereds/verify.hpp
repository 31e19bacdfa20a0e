#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "supereds/brackets.hpp"
#include "supereds/cohomology.hpp"
#include "supereds/eds.hpp"
#include "supereds/fixtures.hpp"
#include "supereds/gauge.hpp"
#include "supereds/random.hpp"

namespace supereds::verify {

struct Outcome {
  bool pass = false;
  std::string detail;
};

/// limit_seconds == 0 means no runtime bound.
struct Criterion {
  int id;
  std::string name;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

struct Result {
  int id = 0;
  std::string name, title, detail;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;
};

namespace detail {

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
  return s;
}

inline std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

// Dimension of the solution space of the classical point-symmetry
// determining equations of y'' = 0 for xi, eta polynomial in (x, u) of
// degree <= D:
//   eta_xx = 0, 2 eta_xu - xi_xx = 0, eta_uu - 2 xi_xu = 0, xi_uu = 0.
inline std::size_t point_symmetry_oracle(int D) {
  std::vector<std::pair<int, int>> mons;
  for (int d = 0; d <= D; ++d)
    for (int a = d; a >= 0; --a) mons.push_back({a, d - a});
  const std::size_t n = mons.size();
  struct Term {
    bool eta;
    int dx, du, coef;
  };
  const std::vector<std::vector<Term>> eqs{
      {{true, 2, 0, 1}},
      {{true, 1, 1, 2}, {false, 2, 0, -1}},
      {{true, 0, 2, 1}, {false, 1, 1, -2}},
      {{false, 0, 2, 1}},
  };
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& eq : eqs) {
    std::map<std::pair<int, int>, std::vector<mpq_class>> by_mono;
    for (const auto& t : eq)
      for (std::size_t j = 0; j < n; ++j) {
        auto [a, b] = mons[j];
        if (a < t.dx || b < t.du) continue;
        mpq_class f = t.coef;
        for (int s = 0; s < t.dx; ++s) f *= a - s;
        for (int s = 0; s < t.du; ++s) f *= b - s;
        auto& row = by_mono[{a - t.dx, b - t.du}];
        row.resize(2 * n);
        row[(t.eta ? n : 0) + j] += f;
      }
    for (auto& [m, row] : by_mono) rows.push_back(row);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < 2 * n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < 2 * n; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return 2 * n - r;
}

inline DifferentialForm random_one_form(std::mt19937& rng, const Context& c) {
  DifferentialForm w(c);
  for (auto k : c->coordinates()) {
    auto d = c->differential_of(k);
    int p = (c->is_odd(d) ? 1 : 0) ^ 1;
    w += random::random_poly(rng, c, p, 2, 2, c->coordinates()) * SuperPoly::generator(c, d);
  }
  return w;
}

inline Connection random_connection(std::mt19937& rng, const Context& c, std::size_t r) {
  Connection C = Connection::flat(c, r);
  for (auto& row : C.alpha)
    for (auto& a : row) a = random_one_form(rng, c);
  return C;
}

inline bool all_zero(const FormMatrix& M) {
  for (const auto& row : M)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

inline std::string mahonian_text(const std::vector<std::size_t>& h) { return "[" + join(h) + "]"; }

}  // namespace detail

inline Outcome hill() {
  auto J = make_jet_space({{"y1", 3}, {"y2", 3}, {"p", 1}});
  auto c = J.ctx;
  auto g = [&](const char* n) { return SuperPoly::generator(c, n); };
  auto half = SuperPoly::constant(c, Scalar::ratio(-1, 2));
  Relations base{{c->index("y1''"), half * g("p") * g("y1")}, {c->index("y2''"), half * g("p") * g("y2")}};
  auto rel = prolong_relations(base, J);
  auto z = g("y1") * g("y2");
  auto z1 = total_derivative(z, J);
  auto z3 = total_derivative(total_derivative(z1, J), J);
  auto expr = z3 + SuperPoly::constant(c, Scalar(2)) * g("p") * z1 + g("p'") * z;
  auto r = differential_reduce(expr, rel);
  std::ostringstream os;
  os << "(y1*y2)''' + 2*p*(y1*y2)' + p'*(y1*y2) under y_i'' -> -1/2*p*y_i reduces to " << r.str();
  return {r.is_zero(), os.str()};
}

inline Outcome susy_table() {
  auto L = extract_structure(fixtures::susy_fields(fixtures::minkowski_superspace()), fixtures::susy_names());
  bool ok = L.dim() == 8;
  for (std::size_t a = 0; ok && a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      ok = ok && L.bracket(a, 2 + b) == fixtures::bv({{4 + 2 * a + b, 2}});
      ok = ok && L.bracket(a, b).empty() && L.bracket(2 + a, 2 + b).empty();
    }
  for (std::size_t t = 4; t < 8; ++t)
    for (std::size_t j = 0; j < 8; ++j) ok = ok && L.bracket(t, j).empty();
  auto M = structure_from_matrices(fixtures::susy_matrices(), fixtures::susy_names());
  bool same = M == L;
  return {ok && same, std::string("[Q_a, Qb_b] = 2 T_ab, Q-Q = Qb-Qb = 0, T central: ") + (ok ? "yes" : "no") +
                          "; supermatrix realization preserves brackets: " + (same ? "yes" : "no")};
}

inline Outcome contact_nonintegrability() {
  std::ostringstream os;
  bool ok = true;
  for (std::size_t n : {1u, 2u}) {
    auto S = fixtures::contact(n);
    auto D = annihilator(S);
    auto v = frobenius_test(D);
    bool witness = !v.integrable && v.exact && !interior(v.residual, S.forms[0]).is_zero();
    auto g = growth_vector(D, 5);
    bool grow = g == std::vector<std::size_t>{2 * n, 2 * n + 1};
    ok = ok && witness && grow;
    os << "contact n=" << n << ": " << (v.integrable ? "integrable" : "nonintegrable") << ", witness [X" << v.first
       << ", X" << v.second << "] = " << v.bracket.str() << ", growth [" << detail::join(g) << "]; ";
  }
  auto S = fixtures::odd_contact(1);
  auto v = frobenius_test(annihilator(S));
  bool odd_ok = !v.integrable && !interior(v.residual, S.forms[0]).is_zero();
  os << "odd contact: " << (v.integrable ? "integrable" : "nonintegrable") << ", witness bracket " << v.bracket.str()
     << "; ";
  auto c = make_domain({{"x"}, {"y"}, {"z"}});
  bool plane = frobenius_test({c, {VectorField::partial(c, "x"), VectorField::partial(c, "y")}}).integrable;
  auto sc = make_domain({{"x"}, {"th", Parity::odd}, {"z"}});
  bool odd_plane = frobenius_test({sc, {VectorField::partial(sc, "x"), VectorField::partial(sc, "th")}}).integrable;
  os << "coordinate planes integrable: " << (plane && odd_plane ? "yes" : "no");
  return {ok && odd_ok && plane && odd_plane, os.str()};
}

inline Outcome eds_symmetries() {
  auto c = ode_domain(2, {});
  auto I = build_ideal({2, SuperPoly::generator(c, "p2"), {}, std::nullopt});
  bool closed = true;
  for (const auto& g : I.generators) closed = closed && is_member(g, I) && is_member(exterior_d(g), I);
  auto sols = solve_symmetries(I, {2, Parity::even, SymmetryAnsatz::Restriction::point});
  std::size_t oracle = detail::point_symmetry_oracle(2);
  bool members = true;
  for (const auto& X : sols) members = members && is_symmetry(X, I);
  std::ostringstream os;
  os << "d-closure " << (closed ? "holds" : "fails") << "; point symmetries (D = 2): " << sols.size()
     << ", oracle: " << oracle << "; re-verified: " << (members ? "all" : "not all");
  return {closed && sols.size() == oracle && oracle == 8 && members, os.str()};
}

inline Outcome cohomology() {
  using V = std::vector<std::size_t>;
  std::ostringstream os;
  bool ok = true;
  auto sl2 = ce_cohomology(fixtures::sl2(), CEModule::trivial, 3);
  ok = ok && sl2 == V{1, 0, 0, 1};
  os << "sl2 [" << detail::join(sl2) << "]; ";
  bool ab = true;
  for (std::size_t n = 1; n <= 6; ++n) {
    V want;
    for (std::size_t i = 0; i <= n; ++i) want.push_back(detail::binom(n, i));
    ab = ab && ce_cohomology(fixtures::abelian(n), CEModule::trivial, n) == want;
  }
  os << "abelian n<=6 binomial: " << (ab ? "yes" : "no") << "; ";
  auto heis = ce_cohomology(fixtures::heis3(), CEModule::trivial, 1);
  os << "heis3 H1 = " << heis[1] << "; ";
  ok = ok && ab && heis[1] == 2;
  const std::vector<std::pair<std::string, LieSuperAlgebra>> all{
      {"sl2", fixtures::sl2()},         {"gl2", fixtures::gl2()},       {"heis3", fixtures::heis3()},
      {"abelian3", fixtures::abelian(3)}, {"n4", fixtures::nilpotent(4)}, {"osp12", fixtures::osp12()},
      {"susy", fixtures::susy_with_torus()}};
  bool d2 = true, weighted = true;
  for (const auto& [name, L] : all)
    for (auto mod : {CEModule::trivial, CEModule::adjoint}) {
      d2 = d2 && ce_d_squared_zero(L, mod, 3);
      weighted = weighted && ce_cohomology_weighted(L, mod, 3) == ce_cohomology(L, mod, 3);
    }
  os << "d^2 = 0 on all fixtures: " << (d2 ? "yes" : "no") << "; weighted == full: " << (weighted ? "yes" : "no");
  return {ok && d2 && weighted, os.str()};
}

inline Outcome connections() {
  std::mt19937 rng(2718);
  auto even = make_domain({{"x"}, {"y"}, {"z"}});
  auto super = make_domain({{"x"}, {"y"}, {"th", Parity::odd}});
  int fails[4] = {0, 0, 0, 0};
  for (int t = 0; t < 200; ++t) {
    const auto& c = t % 2 ? super : even;
    auto C = detail::random_connection(rng, c, 2);
    // Leibniz: nabla(f s) = df s + (-1)^{p(f)} f nabla s
    int pf = t % 2 ? static_cast<int>(rng() % 2) : 0;
    auto f = random::random_poly(rng, c, pf, 2, 3, c->coordinates());
    FormColumn s, fs;
    for (int i = 0; i < 2; ++i) {
      s.push_back(random::random_poly(rng, c, 0, 2, 3, c->coordinates()));
      fs.push_back(f * s.back());
    }
    auto lhs = apply_connection(C, fs, 0), ns = apply_connection(C, s, 0);
    for (int i = 0; i < 2; ++i)
      if (lhs[i] != exterior_d(f) * s[i] + (pf ? -(f * ns[i]) : f * ns[i])) ++fails[0];
    // Bianchi: dF + [alpha, F] = 0
    auto F = curvature(C);
    auto B = apply_connection(end_connection(C), flatten(F), 2);
    for (const auto& x : B)
      if (!x.is_zero()) ++fails[1];
  }
  for (int t = 0; t < 200; ++t) {
    // pure gauge alpha = g^{-1} dg, g = U L unipotent
    auto rp = [&] { return random::random_poly(rng, even, 0, 2, 2, even->coordinates()); };
    SuperPoly one = SuperPoly::constant(even, Scalar(1)), zero(even);
    SuperPoly a = rp(), b = rp(), e = rp(), p = rp(), q = rp(), s = rp();
    FormMatrix U{{one, a, b}, {zero, one, e}, {zero, zero, one}};
    FormMatrix Ui{{one, -a, a * e - b}, {zero, one, -e}, {zero, zero, one}};
    FormMatrix Lo{{one, zero, zero}, {p, one, zero}, {q, s, one}};
    FormMatrix Li{{one, zero, zero}, {-p, one, zero}, {s * p - q, -s, one}};
    auto g = matmul(U, Lo), gi = matmul(Li, Ui);
    FormMatrix dg = g;
    for (auto& row : dg)
      for (auto& x : row) x = exterior_d(x);
    Connection C = Connection::flat(even, 3);
    C.alpha = matmul(gi, dg);
    if (!detail::all_zero(curvature(C))) ++fails[2];
    // abelian: alpha -> alpha + d chi
    auto A = detail::random_connection(rng, even, 1);
    auto chi = random::random_poly(rng, even, 0, 3, 4, even->coordinates());
    Connection A2 = A;
    A2.alpha[0][0] += exterior_d(chi);
    if (curvature(A2)[0][0] != curvature(A)[0][0]) ++fails[3];
  }
  std::ostringstream os;
  os << "200 trials each; failures: Leibniz " << fails[0] << ", Bianchi " << fails[1] << ", flat " << fails[2]
     << ", abelian gauge " << fails[3];
  return {fails[0] + fails[1] + fails[2] + fails[3] == 0, os.str()};
}

inline Outcome clifford_hodge() {
  bool cliff = GammaSet::weyl().clifford_holds();
  bool hodge = true;
  std::size_t pairs = 0;
  for (auto [n, s] : {std::pair<std::size_t, std::size_t>{2, 0}, {3, 0}, {4, 1}}) {
    std::vector<CoordinateSpec> cs;
    for (std::size_t k = 0; k < n; ++k) cs.push_back({"x" + std::to_string(k + 1)});
    auto c = make_domain(cs);
    Signature sig{n, s};
    auto g = sig.diagonal();
    std::vector<DifferentialForm> monos;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      auto m = SuperPoly::constant(c, Scalar(1));
      for (std::size_t k = 0; k < n; ++k)
        if (mask & (1u << k)) m = m * SuperPoly::generator(c, c->differential_of(c->coordinates()[k]));
      monos.push_back(m);
    }
    auto vol = volume_form(c);
    for (const auto& w : monos)
      for (const auto& v : monos)
        if (form_degree(w) == form_degree(v)) {
          ++pairs;
          hodge = hodge && wedge(w, hodge_dual(v, sig)) == metric_pairing(w, v, g) * vol;
        }
  }
  std::ostringstream os;
  os << "Weyl gammas Clifford: " << (cliff ? "exact" : "violated") << "; w ^ *v = g(w,v) vol on " << pairs
     << " monomial pairs: " << (hodge ? "yes" : "no");
  return {cliff && hodge, os.str()};
}

inline Outcome de_rham_triviality() {
  std::ostringstream os;
  bool ok = true;
  const std::vector<std::pair<std::string, Context>> doms{
      {"(1|0)", make_domain({{"x"}})},
      {"(0|2)", make_domain({{"a", Parity::odd}, {"b", Parity::odd}})},
      {"(2|1)", make_domain({{"x"}, {"y"}, {"th", Parity::odd}})}};
  for (const auto& [name, c] : doms) {
    auto h = de_rham(c, 4, 4);
    bool triv = !h.empty() && h[0] == 1;
    for (std::size_t i = 1; i < h.size(); ++i) triv = triv && h[i] == 0;
    ok = ok && triv;
    os << name << " [" << detail::join(h) << "] ";
  }
  return {ok, os.str()};
}

inline Outcome substrate() {
  std::mt19937 rng(1414);
  std::uniform_int_distribution<int> par(0, 1);
  auto c = make_plain_context({{"x"}, {"u"}, {"th1", Parity::odd}, {"th2", Parity::odd}, {"th3", Parity::odd}});
  int comm = 0, assoc = 0, leib = 0, pj = 0, aj = 0;
  for (int t = 0; t < 500; ++t) {
    int pa = par(rng), pb = par(rng);
    auto a = random::random_poly(rng, c, pa, 3), b = random::random_poly(rng, c, pb, 3);
    auto d = random::random_poly(rng, c, par(rng), 2);
    auto ab = a * b, ba = b * a;
    if (ab != ((pa & pb) ? -ba : ba)) ++comm;
    if ((ab * d) != (a * (b * d))) ++assoc;
    for (std::size_t g = 0; g < c->size(); ++g) {
      int pg = c->is_odd(g) ? 1 : 0;
      if (ab.partial(g) != a.partial(g) * b + ((pg & pa) ? -(a * b.partial(g)) : a * b.partial(g))) ++leib;
    }
  }
  auto po = make_plain_context({{"q1"}, {"q2"}, {"p1"}, {"p2"}, {"xi1", Parity::odd}, {"xi2", Parity::odd}});
  auto fr = DarbouxFrame::standard(po, 2, 2);
  for (int t = 0; t < 500; ++t) {
    int pf = par(rng), pg = par(rng), ph = par(rng);
    auto f = random::random_poly(rng, po, pf, 3, 3), g = random::random_poly(rng, po, pg, 3, 3),
         h = random::random_poly(rng, po, ph, 3, 3);
    auto fgh = poisson_bracket(f, poisson_bracket(g, h, fr), fr);
    auto t2 = poisson_bracket(g, poisson_bracket(f, h, fr), fr);
    if (fgh != poisson_bracket(poisson_bracket(f, g, fr), h, fr) + ((pf & pg) ? -t2 : t2)) ++pj;
  }
  auto bc = make_plain_context({{"q1"}, {"q2"}, {"pi1", Parity::odd}, {"pi2", Parity::odd}});
  auto ofr = OddDarbouxFrame::standard(bc, 2);
  for (int t = 0; t < 500; ++t) {
    int pf = par(rng), pg = par(rng), ph = par(rng);
    auto f = random::random_poly(rng, bc, pf, 3, 3), g = random::random_poly(rng, bc, pg, 3, 3),
         h = random::random_poly(rng, bc, ph, 3, 3);
    auto lhs = antibracket(f, antibracket(g, h, ofr), ofr);
    auto t2 = antibracket(g, antibracket(f, h, ofr), ofr);
    if (lhs != antibracket(antibracket(f, g, ofr), h, ofr) + (((pf ^ 1) & (pg ^ 1)) ? -t2 : t2)) ++aj;
  }
  std::ostringstream os;
  os << "500 cases each; failures: supercommutativity " << comm << ", associativity " << assoc << ", Leibniz " << leib
     << ", Poisson Jacobi " << pj << ", antibracket Jacobi " << aj;
  return {comm + assoc + leib + pj + aj == 0, os.str()};
}

/// Betti numbers of n(k) in degrees 0..3 (permutations of k letters by
/// number of inversions).
inline const std::map<std::size_t, std::vector<std::size_t>>& pinned_nilpotent_betti() {
  static const std::map<std::size_t, std::vector<std::size_t>> m{
      {4, {1, 3, 5, 6}}, {5, {1, 4, 9, 15}}, {6, {1, 5, 14, 29}}, {7, {1, 6, 20, 49}}};
  return m;
}

inline std::vector<std::pair<std::string, LieSuperAlgebra>> nilpotent_suite() {
  std::vector<std::pair<std::string, LieSuperAlgebra>> s;
  for (std::size_t k = 4; k <= 7; ++k) s.push_back({"n" + std::to_string(k), fixtures::nilpotent(k)});
  return s;
}

inline std::string bench_table(const std::vector<BenchRecord>& recs) {
  std::ostringstream os;
  os << "name    dim-cochains          H                 naive_s   weighted_s  blocks  weighted_cochains  agree\n";
  for (const auto& r : recs) {
    char line[256];
    std::snprintf(line, sizeof line, "%-7s %-21s %-17s %-9.4f %-11s %-7s %-18s %s\n", r.name.c_str(),
                  detail::join(r.cochains).c_str(), detail::join(r.h).c_str(), r.naive_seconds,
                  r.weighted_seconds ? std::to_string(*r.weighted_seconds).substr(0, 8).c_str() : "-",
                  r.blocks ? std::to_string(*r.blocks).c_str() : "-",
                  r.weighted_cochains ? std::to_string(*r.weighted_cochains).c_str() : "-", r.agree ? "yes" : "no");
    os << line;
  }
  return os.str();
}

inline Outcome bench() {
  auto recs = benchmark_cohomology(nilpotent_suite(), 3);
  bool ok = recs.size() == 4;
  std::ostringstream os;
  for (const auto& r : recs) {
    std::size_t k = std::stoul(r.name.substr(1));
    bool pinned = r.h == pinned_nilpotent_betti().at(k);
    ok = ok && r.agree && pinned && r.weighted_seconds.has_value();
    os << r.name << " " << detail::mahonian_text(r.h) << (pinned ? "" : " (mismatch)") << " naive "
       << r.naive_seconds << "s weighted " << r.weighted_seconds.value_or(-1) << "s; ";
  }
  return {ok, os.str()};
}

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "hill", "Hill identity", 1.0, hill},
      {2, "susy", "SUSY bracket table", 1.0, susy_table},
      {3, "contact", "Contact nonintegrability", 0, contact_nonintegrability},
      {4, "eds", "EDS construction and point symmetries", 60.0, eds_symmetries},
      {5, "cohomology", "Cohomology engine", 120.0, cohomology},
      {6, "connection", "Connection calculus", 120.0, connections},
      {7, "clifford-hodge", "Clifford and Hodge", 0, clifford_hodge},
      {8, "derham", "de Rham triviality", 0, de_rham_triviality},
      {9, "substrate", "Algebraic substrate", 0, substrate},
      {10, "bench", "Benchmark harness", 0, bench},
  };
  return all;
}

inline Result run(const Criterion& c) {
  Result r{c.id, c.name, c.title, "", false, 0, c.limit_seconds};
  auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = c.run();
    r.pass = o.pass;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.limit_seconds > 0 && r.seconds >= c.limit_seconds) {
    r.pass = false;
    r.detail += " (runtime limit exceeded)";
  }
  return r;
}

inline const Criterion* find(const std::string& name) {
  for (const auto& c : criteria())
    if (c.name == name || std::to_string(c.id) == name) return &c;
  return nullptr;
}

inline std::string line(const Result& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << r.seconds << " s";
  if (r.limit_seconds > 0) os << " < " << r.limit_seconds << " s";
  os << "): " << r.detail;
  return os.str();
}

}  // namespace supereds::verify
