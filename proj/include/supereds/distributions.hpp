#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "supereds/forms.hpp"
#include "supereds/linalg.hpp"
#include "supereds/vector_field.hpp"

namespace supereds {

struct PfaffSystem {
  Context domain;
  std::vector<DifferentialForm> forms;
};

struct DistributionBasis {
  Context domain;
  std::vector<VectorField> fields;
};

namespace detail {

inline bool is_constant_nonzero(const SuperPoly& p) { return !p.is_zero() && p.is_constant(); }

}  // namespace detail

/// Fields spanning {X : i_X(w) = 0 for all w}. Each form gives a row of
/// coefficients i_{d/dxi_c}(w); rows are eliminated against the first column
/// holding a nonzero constant, and every free column f yields
/// X_f = d/dxi_f - sum_r A[r][f] d/dxi_{pivot r}.
inline DistributionBasis annihilator(const PfaffSystem& P) {
  const Context& c = P.domain;
  if (!c || !c->has_differentials()) throw PreconditionError("Pfaff system needs a domain with differentials");
  const auto& cs = c->coordinates();
  const std::size_t n = cs.size();
  std::vector<std::vector<SuperPoly>> rows;
  for (const auto& w : P.forms) {
    if (w.is_zero()) continue;
    if (!same_context(w.context(), c)) throw ContextMismatch("Pfaff form from another domain");
    if (form_degree(w) != 1u) throw PreconditionError("Pfaff forms must have degree 1");
    w.parity_bit();
    std::vector<SuperPoly> row;
    for (auto k : cs) row.push_back(w.partial(c->differential_of(k)));
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::vector<std::vector<SuperPoly>> kept;
  for (auto& row : rows) {
    // Clear columns of earlier pivots: row <- row - kept_r * row[piv_r].
    for (std::size_t r = 0; r < kept.size(); ++r) {
      SuperPoly lam = row[pivots[r]];
      if (lam.is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (!kept[r][k].is_zero()) row[k] -= kept[r][k] * lam;
    }
    bool zero = true;
    for (const auto& e : row) zero = zero && e.is_zero();
    if (zero) continue;
    std::optional<std::size_t> piv;
    for (std::size_t k = 0; k < n && !piv; ++k)
      if (detail::is_constant_nonzero(row[k])) piv = k;
    if (!piv) throw PreconditionError("no constant pivot: Pfaff system is not generic at this chart");
    Scalar inv = Scalar(1) / row[*piv].constant_term();
    for (auto& e : row) e *= inv;
    for (std::size_t r = 0; r < kept.size(); ++r) {
      SuperPoly lam = kept[r][*piv];
      if (lam.is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (!row[k].is_zero()) kept[r][k] -= row[k] * lam;
    }
    kept.push_back(std::move(row));
    pivots.push_back(*piv);
  }
  std::set<std::size_t> piv_set(pivots.begin(), pivots.end());
  DistributionBasis D{c, {}};
  for (std::size_t f = 0; f < n; ++f) {
    if (piv_set.count(f)) continue;
    VectorField X(c);
    X.set_component(f, SuperPoly::constant(c, Scalar(1)));
    for (std::size_t r = 0; r < kept.size(); ++r)
      if (!kept[r][f].is_zero()) X.set_component(pivots[r], -kept[r][f]);
    D.fields.push_back(std::move(X));
  }
  return D;
}

/// Pivot-normalized copy of a basis: every field has a 1 in its own pivot
/// column and 0 in the others. Empty when some field has no constant pivot.
struct NormalizedBasis {
  std::vector<VectorField> fields;
  std::vector<std::size_t> pivots;
};

inline std::optional<NormalizedBasis> normalize_basis(const DistributionBasis& D) {
  NormalizedBasis N;
  for (VectorField X : D.fields) {
    for (std::size_t r = 0; r < N.fields.size(); ++r) {
      SuperPoly lam = X[N.pivots[r]];
      if (!lam.is_zero()) X -= lam * N.fields[r];
    }
    if (X.is_zero()) continue;
    std::optional<std::size_t> piv;
    for (std::size_t k = 0; k < X.dim() && !piv; ++k)
      if (detail::is_constant_nonzero(X[k])) piv = k;
    if (!piv) return std::nullopt;
    X = (Scalar(1) / X[*piv].constant_term()) * X;
    for (std::size_t r = 0; r < N.fields.size(); ++r) {
      SuperPoly lam = N.fields[r][*piv];
      if (!lam.is_zero()) N.fields[r] -= lam * X;
    }
    N.fields.push_back(std::move(X));
    N.pivots.push_back(*piv);
  }
  return N;
}

/// Y minus its projection on the normalized basis; zero iff Y lies in the
/// function-ring span.
inline VectorField span_residual(const NormalizedBasis& N, const VectorField& Y) {
  VectorField R = Y;
  for (std::size_t r = 0; r < N.fields.size(); ++r) {
    SuperPoly lam = Y[N.pivots[r]];
    if (!lam.is_zero()) R -= lam * N.fields[r];
  }
  return R;
}

namespace detail {

/// Affine truncation: the degree <= 1 part in the coordinates.
inline SuperPoly affine_part(const SuperPoly& p) {
  SuperPoly r(p.context());
  for (const auto& [m, c] : p.terms()) {
    unsigned d = 0;
    for (auto e : m) d += e;
    if (d <= 1) r.add_term(m, c);
  }
  return r;
}

/// Span test at the origin plus first-order jet: is Y = sum f_i X_i
/// solvable modulo terms of degree >= 2 with f_i affine?
inline bool jet_span(const std::vector<VectorField>& basis, const VectorField& Y) {
  if (basis.empty()) return Y.is_zero();
  const Context& c = Y.context();
  const auto& cs = c->coordinates();
  std::vector<SuperPoly> mults{SuperPoly::constant(c, Scalar(1))};
  for (auto k : cs) mults.push_back(SuperPoly::generator(c, k));
  std::map<std::pair<std::size_t, Monomial>, std::size_t> key;
  auto flatten = [&](const VectorField& X) {
    std::map<std::size_t, Scalar> acc;
    for (std::size_t k = 0; k < X.dim(); ++k) {
      SuperPoly a = affine_part(X[k]);
      for (const auto& [m, v] : a.terms()) acc[key.emplace(std::make_pair(k, m), key.size()).first->second] += v;
    }
    linalg::ScalarRow row;
    for (auto& [i, v] : acc)
      if (!v.is_zero()) row.emplace_back(i, v);
    return row;
  };
  std::vector<linalg::ScalarRow> cols;
  for (const auto& X : basis)
    for (const auto& m : mults) cols.push_back(flatten(m * X));
  return linalg::solve_columns(cols, flatten(Y)).has_value();
}

}  // namespace detail

struct FrobeniusVerdict {
  bool integrable = true;
  std::size_t first = 0, second = 0;
  VectorField bracket;
  VectorField residual;
  /// true when decided by pivot reduction, false for the jet fallback
  bool exact = true;
};

inline FrobeniusVerdict frobenius_test(const DistributionBasis& D) {
  FrobeniusVerdict v;
  auto N = normalize_basis(D);
  v.exact = N.has_value();
  for (std::size_t a = 0; a < D.fields.size(); ++a)
    for (std::size_t b = a; b < D.fields.size(); ++b) {
      const auto& X = D.fields[a];
      const auto& Y = D.fields[b];
      if (a == b && X.parity_bit() == 0) continue;
      VectorField B = bracket(X, Y);
      bool inside;
      VectorField R;
      if (N) {
        R = span_residual(*N, B);
        inside = R.is_zero();
      } else {
        inside = detail::jet_span(D.fields, B);
        R = B;
      }
      if (!inside) {
        v.integrable = false;
        v.first = a;
        v.second = b;
        v.bracket = B;
        v.residual = R;
        return v;
      }
    }
  return v;
}

/// Rank of a list of fields evaluated at the origin.
inline std::size_t rank_at_origin(const std::vector<VectorField>& fields) {
  std::vector<linalg::ScalarRow> rows;
  for (const auto& X : fields) {
    linalg::ScalarRow r;
    for (std::size_t k = 0; k < X.dim(); ++k) {
      Scalar c = X[k].constant_term();
      if (!c.is_zero()) r.emplace_back(k, c);
    }
    if (!r.empty()) rows.push_back(std::move(r));
  }
  return linalg::rank(rows);
}

/// Ranks at the origin of D_1 = D, D_{j+1} = D_j + [D_1, D_j], stopping
/// before the first repeated value or after depth_bound levels.
inline std::vector<std::size_t> growth_vector(const DistributionBasis& D, std::size_t depth_bound) {
  std::vector<std::size_t> out;
  std::vector<VectorField> all, level = D.fields;
  std::set<std::string> seen;
  for (const auto& X : D.fields)
    if (seen.insert(X.str()).second) all.push_back(X);
  for (std::size_t depth = 1; depth <= depth_bound; ++depth) {
    std::size_t r = rank_at_origin(all);
    if (!out.empty() && out.back() == r) break;
    out.push_back(r);
    std::vector<VectorField> next;
    for (const auto& X : D.fields)
      for (const auto& Y : level) {
        VectorField B = bracket(X, Y);
        if (B.is_zero()) continue;
        if (seen.insert(B.str()).second) {
          all.push_back(B);
          next.push_back(B);
        }
      }
    if (next.empty()) break;
    level = std::move(next);
  }
  return out;
}

}  // namespace supereds
