#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "supereds/forms.hpp"
#include "supereds/linalg.hpp"
#include "supereds/vector_field.hpp"

namespace supereds {

/// F(x, u, p1, ..., pk) = 0 over an ode_domain context.
struct ODESpec {
  std::size_t order = 0;
  SuperPoly F;
  /// Extra coefficient functions of x, e.g. Hill's p.
  std::vector<std::string> extras;
  /// Variable F is divided by; defaults to p<order>.
  std::optional<std::string> distinguished;
};

/// Differential ideal of an ODE. Generators are F, the contact forms
/// w_0 = du - p1 dx, w_i = dp_i - p_{i+1} dx, one form de - e' dx per extra
/// function, followed by their nonzero differentials.
struct DifferentialIdeal {
  Context domain;
  std::vector<DifferentialForm> generators;
  std::size_t order = 0;
  SuperPoly F;
  std::vector<std::string> extras;
  std::size_t distinguished = 0;
  /// F = lead * v^f_degree + tail with constant lead; unset when F is not
  /// monic in v, in which case reduce skips the F-step.
  std::optional<Scalar> lead;
  std::size_t f_degree = 0;
  SuperPoly tail;
  std::string diagnostic;

  bool f_step() const { return lead.has_value(); }
};

namespace detail {

inline SuperPoly gen(const Context& c, std::string_view n) { return SuperPoly::generator(c, n); }

/// Splits F as lead * v^m + tail with tail of lower degree in v.
inline bool split_monic(const SuperPoly& F, std::size_t v, Scalar& lead, std::size_t& m, SuperPoly& tail) {
  m = F.degree_in(v);
  if (m == 0) return false;
  SuperPoly top(F.context());
  tail = SuperPoly(F.context());
  for (const auto& [mono, c] : F.terms()) {
    if (mono[v] == m) top.add_term(mono, c);
    else tail.add_term(mono, c);
  }
  if (top.size() != 1) return false;
  const auto& [mono, c] = *top.terms().begin();
  for (std::size_t k = 0; k < mono.size(); ++k)
    if (k != v && mono[k] != 0) return false;
  lead = c;
  return true;
}

}  // namespace detail

inline DifferentialIdeal build_ideal(const ODESpec& spec) {
  if (spec.order < 1) throw PreconditionError("ODE order must be at least 1");
  if (!spec.F.context()) throw PreconditionError("ODE right-hand side has no domain");
  const Context& c = spec.F.context();
  for (std::size_t i = 1; i <= spec.order; ++i) c->index("p" + std::to_string(i));
  c->index("x");
  c->index("u");
  if (form_degree(spec.F) != 0u) throw PreconditionError("F must be a function (0-form)");
  if (spec.F.parity() != Parity::even) throw ParityError("F must be even");
  for (const auto& [m, coef] : spec.F.terms())
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] && (*c)[k].role == Role::coordinate && c->is_odd(k))
        throw PreconditionError("F may only involve even generators");

  DifferentialIdeal I;
  I.domain = c;
  I.order = spec.order;
  I.F = spec.F;
  I.extras = spec.extras;
  I.distinguished = c->index(spec.distinguished.value_or("p" + std::to_string(spec.order)));
  if ((*c)[I.distinguished].role != Role::coordinate)
    throw PreconditionError("distinguished variable must be a coordinate");
  Scalar lead;
  if (detail::split_monic(spec.F, I.distinguished, lead, I.f_degree, I.tail)) {
    I.lead = lead;
  } else {
    I.diagnostic = "F is not monic in " + (*c)[I.distinguished].name + "; the F-step is skipped";
  }

  auto dx = detail::gen(c, "dx");
  std::vector<DifferentialForm> base{spec.F};
  base.push_back(detail::gen(c, "du") - detail::gen(c, "p1") * dx);
  for (std::size_t i = 1; i < spec.order; ++i)
    base.push_back(detail::gen(c, "dp" + std::to_string(i)) - detail::gen(c, "p" + std::to_string(i + 1)) * dx);
  for (const auto& e : spec.extras) base.push_back(detail::gen(c, "d" + e) - detail::gen(c, e + "'") * dx);
  I.generators = base;
  for (const auto& g : base)
    if (auto dg = exterior_d(g); !dg.is_zero()) I.generators.push_back(dg);
  return I;
}

/// Normal form modulo the ideal: eliminate dv via dF (F linear in v), then
/// du, dp_i (i < k) and extra differentials via the contact forms, then
/// divide the coefficients by F in v.
inline DifferentialForm reduce(const DifferentialForm& w, const DifferentialIdeal& I) {
  if (w.is_zero()) return w;
  if (!same_context(w.context(), I.domain)) throw ContextMismatch("form and ideal live on different domains");
  const Context& c = I.domain;
  const std::size_t v = I.distinguished;
  const std::size_t dv = c->differential_of(v);
  DifferentialForm r = w;

  if (I.f_step() && I.f_degree == 1 && r.uses(dv)) {
    SuperPoly repl = exterior_d(I.tail) * SuperPoly::constant(c, Scalar(-1) / *I.lead);
    r = r.substitute({{dv, repl}});
  }

  auto dx = detail::gen(c, "dx");
  std::map<std::size_t, SuperPoly> contact;
  contact.emplace(c->index("du"), detail::gen(c, "p1") * dx);
  for (std::size_t i = 1; i < I.order; ++i)
    contact.emplace(c->index("dp" + std::to_string(i)), detail::gen(c, "p" + std::to_string(i + 1)) * dx);
  for (const auto& e : I.extras) contact.emplace(c->index("d" + e), detail::gen(c, e + "'") * dx);
  r = r.substitute(contact);

  if (I.f_step()) {
    const std::size_t m = I.f_degree;
    const SuperPoly rest = I.tail * SuperPoly::constant(c, Scalar(-1) / *I.lead);
    while (r.degree_in(v) >= m) {
      SuperPoly keep(c), high(c);
      for (const auto& [mono, coef] : r.terms()) {
        if (mono[v] < m) {
          keep.add_term(mono, coef);
        } else {
          Monomial lower = mono;
          lower[v] -= static_cast<std::uint16_t>(m);
          high.add_term(lower, coef);
        }
      }
      r = keep + high * rest;
    }
  }
  return r;
}

inline bool is_member(const DifferentialForm& w, const DifferentialIdeal& I) { return reduce(w, I).is_zero(); }

struct SymmetryAnsatz {
  enum class Restriction { full, point };
  std::size_t degree = 0;
  Parity parity = Parity::even;
  Restriction restriction = Restriction::full;
};

namespace detail {

/// All monomials in the given generators of total degree <= D and given
/// parity, in increasing degree then monomial order.
inline std::vector<SuperPoly> monomials_upto(const Context& c, const std::vector<std::size_t>& gens, std::size_t D,
                                             int parity) {
  std::vector<Monomial> acc{Monomial(c->size(), 0)};
  std::set<Monomial> seen(acc.begin(), acc.end());
  std::vector<Monomial> frontier = acc;
  for (std::size_t d = 1; d <= D; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : frontier)
      for (auto g : gens) {
        Monomial n = m;
        if (c->is_odd(g) && n[g]) continue;
        ++n[g];
        if (seen.insert(n).second) next.push_back(n);
      }
    std::sort(next.begin(), next.end());
    for (auto& n : next) acc.push_back(n);
    frontier = std::move(next);
  }
  std::vector<SuperPoly> out;
  for (const auto& m : acc)
    if (monomial_parity(c->odd_mask(), m) == parity) out.push_back(SuperPoly::monomial(c, m));
  return out;
}

/// D_x on jet coordinates x, u, p1..pk (p_{k+1} must not be needed).
inline SuperPoly total_dx(const SuperPoly& f, const Context& c, std::size_t k) {
  SuperPoly r = f.partial(c->index("x"));
  r += gen(c, "p1") * f.partial(c->index("u"));
  for (std::size_t i = 1; i <= k; ++i) {
    auto pi = c->index("p" + std::to_string(i));
    if (!f.uses(pi)) continue;
    if (i == k) throw PreconditionError("prolongation needs a jet order above the equation");
    r += gen(c, "p" + std::to_string(i + 1)) * f.partial(pi);
  }
  return r;
}

}  // namespace detail

/// Point field with d/dx coefficient xi(x,u) and d/du coefficient eta(x,u),
/// prolonged by eta_i = D_x eta_{i-1} - p_i D_x xi.
inline VectorField prolong_point_field(const DifferentialIdeal& I, const SuperPoly& xi, const SuperPoly& eta) {
  const Context& c = I.domain;
  VectorField X(c);
  X.set("x", xi);
  X.set("u", eta);
  SuperPoly dxi = detail::total_dx(xi, c, I.order);
  SuperPoly prev = eta;
  for (std::size_t i = 1; i <= I.order; ++i) {
    SuperPoly next = detail::total_dx(prev, c, I.order) - detail::gen(c, "p" + std::to_string(i)) * dxi;
    X.set("p" + std::to_string(i), next);
    prev = next;
  }
  return X;
}

/// Basis fields of the ansatz; the sought field is a linear combination.
inline std::vector<VectorField> ansatz_basis(const DifferentialIdeal& I, const SymmetryAnsatz& a) {
  const Context& c = I.domain;
  if (a.parity == Parity::mixed) throw ParityError("ansatz parity must be even or odd");
  const int p = bit(a.parity);
  std::vector<VectorField> basis;
  if (a.restriction == SymmetryAnsatz::Restriction::point) {
    if (!I.extras.empty() || c->coordinates().size() != I.order + 2)
      throw PreconditionError("point restriction requires the bare jet space x, u, p1..pk");
    auto mons = detail::monomials_upto(c, {c->index("x"), c->index("u")}, a.degree, p);
    SuperPoly zero(c);
    for (const auto& m : mons) basis.push_back(prolong_point_field(I, m, zero));
    for (const auto& m : mons) basis.push_back(prolong_point_field(I, zero, m));
    return basis;
  }
  const auto& cs = c->coordinates();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    int need = p ^ (c->is_odd(cs[k]) ? 1 : 0);
    for (const auto& m : detail::monomials_upto(c, cs, a.degree, need)) {
      VectorField X(c);
      X.set_component(k, m);
      basis.push_back(std::move(X));
    }
  }
  return basis;
}

/// Linear system for the coefficients a_j of X = sum_j a_j B_j: one row per
/// (generator, monomial) of reduce(L_{B_j} g).
struct DeterminingSystem {
  std::vector<VectorField> basis;
  std::vector<linalg::ScalarRow> rows;
  std::size_t unknowns() const { return basis.size(); }
};

inline DeterminingSystem determining_system(const DifferentialIdeal& I, const SymmetryAnsatz& a) {
  DeterminingSystem sys;
  sys.basis = ansatz_basis(I, a);
  const std::size_t n = sys.basis.size();
  const std::size_t ng = I.generators.size();
  std::vector<std::vector<DifferentialForm>> images(ng, std::vector<DifferentialForm>(n));
  auto work = [&](std::size_t g) {
    for (std::size_t j = 0; j < n; ++j) images[g][j] = reduce(lie_derivative(sys.basis[j], I.generators[g]), I);
  };
  std::vector<std::future<void>> jobs;
  for (std::size_t g = 0; g < ng; ++g) jobs.push_back(std::async(std::launch::async, work, g));
  for (auto& j : jobs) j.get();

  for (std::size_t g = 0; g < ng; ++g) {
    std::map<Monomial, linalg::ScalarRow> eqs;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [m, coef] : images[g][j].terms()) eqs[m].emplace_back(j, coef);
    for (auto& [m, row] : eqs) sys.rows.push_back(std::move(row));
  }
  return sys;
}

inline std::vector<VectorField> solve_symmetries(const DifferentialIdeal& I, const SymmetryAnsatz& a) {
  auto sys = determining_system(I, a);
  std::vector<VectorField> out;
  for (const auto& v : linalg::nullspace(sys.rows, sys.unknowns())) {
    VectorField X(I.domain);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) X += v[j] * sys.basis[j];
    out.push_back(std::move(X));
  }
  return out;
}

/// True when L_X g reduces to zero for every generator g.
inline bool is_symmetry(const VectorField& X, const DifferentialIdeal& I) {
  for (const auto& g : I.generators)
    if (!is_member(lie_derivative(X, g), I)) return false;
  return true;
}

/// Plain jet algebra for differential_reduce: x (optional) and, for each
/// function name f, generators f, f', f'', ... up to the given order.
struct JetSpace {
  Context ctx;
  /// generator -> its x-derivative
  std::map<std::size_t, std::size_t> next;
  std::optional<std::size_t> x;
};

inline std::string jet_name(const std::string& f, std::size_t order) { return f + std::string(order, '\''); }

inline JetSpace make_jet_space(const std::vector<std::pair<std::string, std::size_t>>& functions, bool with_x = false) {
  std::vector<CoordinateSpec> gens;
  if (with_x) gens.push_back({"x"});
  for (const auto& [f, k] : functions)
    for (std::size_t i = 0; i <= k; ++i) gens.push_back({jet_name(f, i)});
  JetSpace J;
  J.ctx = make_plain_context(gens);
  if (with_x) J.x = J.ctx->index("x");
  for (const auto& [f, k] : functions)
    for (std::size_t i = 0; i < k; ++i) J.next[J.ctx->index(jet_name(f, i))] = J.ctx->index(jet_name(f, i + 1));
  return J;
}

/// D_x f = df/dx + sum f_v v'. Throws when f involves a top-order jet.
inline SuperPoly total_derivative(const SuperPoly& f, const JetSpace& J) {
  SuperPoly r(J.ctx);
  if (f.is_zero()) return r;
  if (J.x) r += f.partial(*J.x);
  for (std::size_t g = 0; g < J.ctx->size(); ++g) {
    if (!f.uses(g) || (J.x && g == *J.x)) continue;
    auto it = J.next.find(g);
    if (it == J.next.end())
      throw PreconditionError("jet order exceeded at '" + (*J.ctx)[g].name + "'");
    r += SuperPoly::generator(J.ctx, it->second) * f.partial(g);
  }
  return r;
}

using Relations = std::vector<std::pair<std::size_t, SuperPoly>>;

/// Exhaustive substitution var -> replacement until nothing changes.
/// A cyclic dependency between relations is an error.
inline SuperPoly differential_reduce(const SuperPoly& expr, const Relations& rel) {
  std::map<std::size_t, SuperPoly> table;
  for (const auto& [v, r] : rel) {
    if (!table.emplace(v, r).second)
      throw PreconditionError("two relations for the same variable");
  }
  // Depth-first cycle check on var -> vars of its replacement.
  std::map<std::size_t, int> state;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    state[v] = 1;
    for (const auto& [w, r] : table)
      if (table.at(v).uses(w)) {
        if (state[w] == 1) throw PreconditionError("relation table is cyclic; reduction would not terminate");
        if (state[w] == 0) visit(w);
      }
    state[v] = 2;
  };
  for (const auto& [v, r] : table)
    if (state[v] == 0) visit(v);

  SuperPoly cur = expr;
  for (std::size_t pass = 0; pass <= table.size(); ++pass) {
    bool hit = false;
    for (const auto& [v, r] : table) hit = hit || cur.uses(v);
    if (!hit) return cur;
    cur = cur.substitute(table);
  }
  return cur;
}

/// Extends f^(k) -> R to f^(k+1) -> D_x R, ... up to the jet order, each
/// new right-hand side reduced by the relations found so far.
inline Relations prolong_relations(const Relations& base, const JetSpace& J) {
  Relations out = base;
  for (const auto& [v, r] : base) {
    std::size_t var = v;
    SuperPoly rhs = r;
    while (true) {
      auto it = J.next.find(var);
      if (it == J.next.end()) break;
      SuperPoly next;
      try {
        next = total_derivative(rhs, J);
      } catch (const PreconditionError&) {
        break;
      }
      var = it->second;
      rhs = differential_reduce(next, out);
      out.emplace_back(var, rhs);
    }
  }
  return out;
}

}  // namespace supereds
