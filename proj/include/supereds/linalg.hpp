#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "supereds/scalar.hpp"

namespace supereds::linalg {

/// Sparse row: (column, value) pairs, strictly increasing columns, no zeros.
template <typename T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

using IntRow = SparseRow<mpz_class>;
using ScalarRow = SparseRow<Scalar>;

namespace detail {

inline void make_primitive(IntRow& r) {
  if (r.empty()) return;
  mpz_class g = abs(r.front().second);
  for (std::size_t k = 1; k < r.size() && g != 1; ++k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[k].second.get_mpz_t());
  if (sgn(r.front().second) < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

/// a*x - b*y, merged by column.
inline IntRow combine(const mpz_class& a, const IntRow& x, const mpz_class& b, const IntRow& y) {
  IntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  mpz_class t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      t = a * x[i].second - b * y[j].second;
      if (sgn(t) != 0) out.emplace_back(x[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

inline ScalarRow axpy(const ScalarRow& x, const Scalar& s, const ScalarRow& y) {
  // x - s*y
  ScalarRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -(s * y[j].second));
      ++j;
    } else {
      Scalar t = x[i].second - s * y[j].second;
      if (!t.is_zero()) out.emplace_back(x[i].first, std::move(t));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Rank of an integer matrix given by rows, by fraction-free elimination:
/// rows are combined as a*r - b*p with content removal after each step, so
/// no rational arithmetic is ever performed.
inline std::size_t rank_fraction_free(std::vector<IntRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const IntRow& a, const IntRow& b) { return a.size() < b.size(); });
  std::unordered_map<std::size_t, IntRow> pivots;
  pivots.reserve(rows.size());
  mpz_class g, a, b;
  for (auto& r : rows) {
    detail::make_primitive(r);
    while (!r.empty()) {
      auto it = pivots.find(r.front().first);
      if (it == pivots.end()) {
        pivots.emplace(r.front().first, std::move(r));
        break;
      }
      const IntRow& p = it->second;
      mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), r.front().second.get_mpz_t());
      mpz_divexact(a.get_mpz_t(), p.front().second.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), r.front().second.get_mpz_t(), g.get_mpz_t());
      r = detail::combine(a, r, b, p);
      detail::make_primitive(r);
    }
  }
  return pivots.size();
}

/// Clears denominators of a real rational row. Returns nullopt when some
/// entry has a nonzero imaginary part.
inline std::optional<IntRow> to_integer_row(const ScalarRow& row) {
  mpz_class l = 1;
  for (const auto& [c, v] : row) {
    if (!v.is_real()) return std::nullopt;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.re().get_den_mpz_t());
  }
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    mpz_class t = l / v.re().get_den();
    out.emplace_back(c, t * v.re().get_num());
  }
  return out;
}

/// Reduced row echelon form over Q(i), Gauss-Jordan with the first
/// available column as pivot (so pivots follow column order).
struct Echelon {
  std::vector<ScalarRow> rows;        // normalized, pivot entry 1, sorted by pivot column
  std::vector<std::size_t> pivots;    // pivot column of each row
  std::size_t ncols = 0;
};

inline Echelon rref(std::vector<ScalarRow> input, std::size_t ncols) {
  // Forward elimination keyed by leading column, then back substitution.
  std::map<std::size_t, ScalarRow> piv;
  for (auto& r : input) {
    while (!r.empty()) {
      auto it = piv.find(r.front().first);
      if (it == piv.end()) {
        Scalar inv = Scalar(1) / r.front().second;
        for (auto& [c, v] : r) v *= inv;
        piv.emplace(r.front().first, std::move(r));
        break;
      }
      Scalar f = r.front().second;
      r = detail::axpy(r, f, it->second);
    }
  }
  Echelon e;
  e.ncols = ncols;
  // Back substitution, highest pivot first.
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    ScalarRow& r = it->second;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = 1; k < r.size(); ++k) {
        auto p = piv.find(r[k].first);
        if (p != piv.end() && p->first != it->first) {
          Scalar f = r[k].second;
          r = detail::axpy(r, f, p->second);
          changed = true;
          break;
        }
      }
    }
  }
  for (auto& [c, r] : piv) {
    e.pivots.push_back(c);
    e.rows.push_back(std::move(r));
  }
  return e;
}

/// Rank over Q(i); real matrices take the fraction-free integer path.
inline std::size_t rank(const std::vector<ScalarRow>& rows) {
  std::vector<IntRow> ints;
  ints.reserve(rows.size());
  for (const auto& r : rows) {
    auto ir = to_integer_row(r);
    if (!ir) return rref(rows, 0).rows.size();
    ints.push_back(std::move(*ir));
  }
  return rank_fraction_free(std::move(ints));
}

/// Basis of {x : A x = 0}. One vector per free column, in increasing
/// column order, with a 1 in that column.
inline std::vector<std::vector<Scalar>> nullspace(const std::vector<ScalarRow>& rows, std::size_t ncols) {
  Echelon e = rref(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(ncols);
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      for (const auto& [c, val] : e.rows[r])
        if (c == f) v[e.pivots[r]] = -val;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves sum_j x_j * columns[j] = target. Columns and target are sparse
/// vectors indexed by row. Returns nullopt when the system is inconsistent;
/// free variables are set to zero.
inline std::optional<std::vector<Scalar>> solve_columns(const std::vector<ScalarRow>& columns,
                                                        const ScalarRow& target) {
  // Transpose into equation rows: one row per coordinate, unknowns + rhs.
  std::map<std::size_t, ScalarRow> eq;
  const std::size_t n = columns.size();
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [r, v] : columns[j]) eq[r].emplace_back(j, v);
  for (const auto& [r, v] : target) eq[r].emplace_back(n, v);
  std::vector<ScalarRow> rows;
  for (auto& [r, row] : eq) rows.push_back(std::move(row));
  Echelon e = rref(std::move(rows), n + 1);
  std::vector<Scalar> x(n);
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    if (e.pivots[k] == n) return std::nullopt;
    for (const auto& [c, v] : e.rows[k])
      if (c == n) x[e.pivots[k]] = v;
  }
  return x;
}

}  // namespace supereds::linalg
