#pragma once

#include <map>
#include <optional>
#include <vector>

#include "supereds/linalg.hpp"
#include "supereds/superpoly.hpp"
#include "supereds/vector_field.hpp"

namespace supereds {

/// A differential form is a SuperPoly over a domain context (see
/// make_domain): coordinates plus their parity-flipped differentials.
using DifferentialForm = SuperPoly;

/// Total exponent in differentials of every term, or nullopt when the form
/// mixes degrees. The zero form has degree 0.
inline std::optional<std::size_t> form_degree(const DifferentialForm& w) {
  if (w.is_zero()) return 0;
  const auto& ctx = *w.context();
  std::optional<std::size_t> deg;
  for (const auto& [m, c] : w.terms()) {
    std::size_t d = 0;
    for (std::size_t k = 0; k < m.size(); ++k)
      if (ctx[k].role == Role::differential) d += m[k];
    if (!deg) deg = d;
    else if (*deg != d) return std::nullopt;
  }
  return deg;
}

inline std::size_t require_degree(const DifferentialForm& w) {
  auto d = form_degree(w);
  if (!d) throw PreconditionError("form is not degree-homogeneous");
  return *d;
}

/// d(f) = sum_i dxi_i * df/dxi_i over all coordinates. Parameters are
/// constants; differentials are closed.
inline DifferentialForm exterior_d(const DifferentialForm& w) {
  SuperPoly r(w.context());
  if (w.is_zero()) return r;
  const auto& ctx = w.context();
  for (auto c : ctx->coordinates()) {
    if (!w.uses(c)) continue;
    r += SuperPoly::generator(ctx, ctx->differential_of(c)) * w.partial(c);
  }
  return r;
}

inline DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) { return a * b; }

/// Interior product: the derivation of parity p(X)+1 with i_X(dxi_c) = X^c,
/// i.e. sum_c X^c * d/d(dxi_c) with left derivatives.
inline DifferentialForm interior(const VectorField& X, const DifferentialForm& w) {
  if (!w.is_zero() && !same_context(X.context(), w.context()))
    throw ContextMismatch("field and form live on different domains");
  SuperPoly r(X.context());
  if (w.is_zero()) return r;
  const auto& ctx = X.context();
  const auto& cs = ctx->coordinates();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (X[k].is_zero()) continue;
    r += X[k] * w.partial(ctx->differential_of(cs[k]));
  }
  return r;
}

/// Lie derivative as the graded commutator [i_X, d] = i_X d + (-1)^{p(X)} d i_X.
/// It is a derivation of parity p(X), restricts to X on functions, and
/// satisfies L_X d = (-1)^{p(X)} d L_X.
inline DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& w) {
  const int p = X.parity_bit();
  DifferentialForm a = interior(X, exterior_d(w));
  DifferentialForm b = exterior_d(interior(X, w));
  return p ? a - b : a + b;
}

/// Flat metric diag(-1 x s, +1 x (n-s)).
struct Signature {
  std::size_t n = 0;
  std::size_t s = 0;

  std::vector<int> diagonal() const {
    if (s > n) throw PreconditionError("signature requires 0 <= s <= n");
    std::vector<int> g(n, 1);
    for (std::size_t k = 0; k < s; ++k) g[k] = -1;
    return g;
  }
};

namespace detail {

inline void require_even_coordinates(const Context& ctx, std::size_t n) {
  const auto& cs = ctx->coordinates();
  if (cs.size() != n)
    throw PreconditionError("Hodge star needs exactly " + std::to_string(n) + " coordinates");
  for (auto c : cs)
    if (ctx->is_odd(c)) throw PreconditionError("Hodge star is defined on purely even domains only");
}

}  // namespace detail

/// Hodge star for a diagonal metric, extended linearly over functions:
/// *(f dx_I) = f * g(dx_I, dx_I) * eps(I, J) dx_J where dx_I ^ dx_J = eps vol.
/// Hence w ^ *v = g(w, v) vol on monomials.
inline DifferentialForm hodge_star(const DifferentialForm& w, const std::vector<int>& metric) {
  const auto& ctx = w.context();
  DifferentialForm r(ctx);
  if (w.is_zero()) return r;
  const std::size_t n = metric.size();
  detail::require_even_coordinates(ctx, n);
  const auto& cs = ctx->coordinates();
  std::vector<std::size_t> diffs;
  for (auto c : cs) diffs.push_back(ctx->differential_of(c));

  Monomial vol(ctx->size(), 0);
  for (auto d : diffs) vol[d] = 1;
  const auto& odd = ctx->odd_mask();
  for (const auto& [m, c] : w.terms()) {
    Monomial fpart = m, dpart(ctx->size(), 0), comp(ctx->size(), 0);
    int g = 1;
    for (std::size_t k = 0; k < n; ++k) {
      fpart[diffs[k]] = 0;
      if (m[diffs[k]]) {
        dpart[diffs[k]] = 1;
        g *= metric[k];
      } else {
        comp[diffs[k]] = 1;
      }
    }
    for (std::size_t k = 0; k < m.size(); ++k)
      if (ctx->is_odd(k) && fpart[k]) throw PreconditionError("Hodge star needs even coefficients");
    Monomial prod;
    int eps = detail::multiply_monomials(odd, dpart, comp, prod);
    Monomial out;
    detail::multiply_monomials(odd, fpart, comp, out);
    r.add_term(out, c * Scalar(static_cast<long>(g * eps)));
  }
  return r;
}

/// Hodge dual of a constant-coefficient form on an even n-dimensional domain
/// with signature (s, n-s), the first s coordinates being the minus ones.
inline DifferentialForm hodge_dual(const DifferentialForm& w, const Signature& sig) {
  if (w.is_zero()) return w;
  const auto& ctx = w.context();
  detail::require_even_coordinates(ctx, sig.n);
  for (const auto& [m, c] : w.terms())
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] && (*ctx)[k].role != Role::differential)
        throw PreconditionError("Hodge dual requires constant coefficients");
  return hodge_star(w, sig.diagonal());
}

/// g(dx_I, dx_J) extended by bilinearity to constant-coefficient forms.
inline Scalar metric_pairing(const DifferentialForm& a, const DifferentialForm& b, const std::vector<int>& metric) {
  Scalar s;
  if (a.is_zero() || b.is_zero()) return s;
  const auto& ctx = a.context();
  const auto& cs = ctx->coordinates();
  for (const auto& [ma, ca] : a.terms()) {
    auto it = b.terms().find(ma);
    if (it == b.terms().end()) continue;
    int g = 1;
    for (std::size_t k = 0; k < cs.size(); ++k)
      if (ma[ctx->differential_of(cs[k])]) g *= metric[k];
    s += ca * it->second * Scalar(static_cast<long>(g));
  }
  return s;
}

/// The volume form dx_1 ^ ... ^ dx_n in coordinate order.
inline DifferentialForm volume_form(const Context& ctx) {
  SuperPoly v = SuperPoly::constant(ctx, Scalar(1));
  for (auto c : ctx->coordinates()) v = v * SuperPoly::generator(ctx, ctx->differential_of(c));
  return v;
}

/// Dimensions of de Rham cohomology H^0..H^max_degree of the polynomial
/// forms on a superdomain. d preserves the total weight (coordinates and
/// differentials each count 1), so the complex splits into finite
/// weight-homogeneous pieces; all pieces of weight up to
/// max_poly_degree + max_degree are included.
inline std::vector<std::size_t> de_rham(const Context& domain, std::size_t max_degree, std::size_t max_poly_degree) {
  const auto& cs = domain->coordinates();
  std::vector<std::size_t> slots;  // coordinates then differentials
  for (auto c : cs) slots.push_back(c);
  for (auto c : cs) slots.push_back(domain->differential_of(c));
  const std::size_t nc = cs.size();
  const std::size_t wmax = max_poly_degree + max_degree;

  std::vector<std::size_t> h(max_degree + 1, 0);
  for (std::size_t w = 0; w <= wmax; ++w) {
    // basis[k] = monomials of weight w and form degree k
    std::vector<std::vector<Monomial>> basis(max_degree + 2);
    Monomial cur(domain->size(), 0);
    auto rec = [&](auto&& self, std::size_t slot, std::size_t left, std::size_t fdeg) -> void {
      if (slot == slots.size()) {
        if (left == 0 && fdeg <= max_degree + 1) basis[fdeg].push_back(cur);
        return;
      }
      const std::size_t g = slots[slot];
      const std::size_t cap = domain->is_odd(g) ? std::min<std::size_t>(1, left) : left;
      for (std::size_t e = 0; e <= cap; ++e) {
        cur[g] = static_cast<std::uint16_t>(e);
        self(self, slot + 1, left - e, fdeg + (slot >= nc ? e : 0));
      }
      cur[g] = 0;
    };
    rec(rec, 0, w, 0);

    std::vector<std::size_t> ranks(max_degree + 2, 0);
    for (std::size_t k = 0; k <= max_degree; ++k) {
      if (basis[k].empty() || basis[k + 1].empty()) continue;
      std::map<Monomial, std::size_t> target;
      for (std::size_t t = 0; t < basis[k + 1].size(); ++t) target.emplace(basis[k + 1][t], t);
      std::vector<linalg::ScalarRow> rows;
      for (const auto& m : basis[k]) {
        auto img = exterior_d(SuperPoly::monomial(domain, m));
        linalg::ScalarRow row;
        for (const auto& [mm, c] : img.terms()) row.emplace_back(target.at(mm), c);
        std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
        rows.push_back(std::move(row));
      }
      ranks[k] = linalg::rank(rows);
    }
    for (std::size_t k = 0; k <= max_degree; ++k) {
      std::size_t kernel = basis[k].size() - ranks[k];
      std::size_t image = k == 0 ? 0 : ranks[k - 1];
      h[k] += kernel - image;
    }
  }
  return h;
}

}  // namespace supereds
