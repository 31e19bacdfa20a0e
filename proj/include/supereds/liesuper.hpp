#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "supereds/linalg.hpp"
#include "supereds/vector_field.hpp"

namespace supereds {

/// Sparse vector over the basis of an algebra: (index, coefficient), sorted.
using BasisVector = std::vector<std::pair<std::size_t, Scalar>>;

/// [e_i, e_j] = sum_k c_ij^k e_k with the full table stored.
class LieSuperAlgebra {
 public:
  LieSuperAlgebra() = default;
  explicit LieSuperAlgebra(std::vector<int> parities, std::vector<std::string> names = {})
      : parity_(std::move(parities)), names_(std::move(names)), table_(parity_.size() * parity_.size()) {
    for (auto& p : parity_)
      if (p != 0 && p != 1) throw ParityError("basis parity must be 0 or 1");
    if (names_.empty())
      for (std::size_t i = 0; i < parity_.size(); ++i) names_.push_back("e" + std::to_string(i));
    if (names_.size() != parity_.size()) throw PreconditionError("one name per basis element");
  }

  std::size_t dim() const noexcept { return parity_.size(); }
  int parity(std::size_t i) const { return parity_.at(i); }
  const std::vector<int>& parities() const noexcept { return parity_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t even_dim() const {
    std::size_t n = 0;
    for (auto p : parity_) n += p == 0;
    return n;
  }

  const BasisVector& bracket(std::size_t i, std::size_t j) const { return table_.at(i * dim() + j); }
  Scalar coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    for (const auto& [l, v] : bracket(i, j))
      if (l == k) return v;
    return Scalar();
  }

  /// Sets [e_i, e_j] and, by super antisymmetry, [e_j, e_i].
  void set_bracket(std::size_t i, std::size_t j, BasisVector v) {
    normalize(v);
    table_.at(i * dim() + j) = v;
    if (i == j) return;
    const bool sym = parity_[i] && parity_[j];
    for (auto& [k, c] : v)
      if (!sym) c = -c;
    table_.at(j * dim() + i) = std::move(v);
  }
  /// Sets [e_i, e_j] only; used to build deliberately broken tables.
  void set_raw(std::size_t i, std::size_t j, BasisVector v) {
    normalize(v);
    table_.at(i * dim() + j) = std::move(v);
  }

  /// Integer weight vectors (one per basis element) of a grading.
  const std::vector<std::vector<long>>& weights() const noexcept { return weights_; }
  void set_weights(std::vector<std::vector<long>> w) {
    if (!w.empty() && w.size() != dim()) throw PreconditionError("one weight vector per basis element");
    for (const auto& x : w)
      if (x.size() != w.front().size()) throw PreconditionError("weight vectors must have equal length");
    weights_ = std::move(w);
  }
  /// Basis indices of declared toral elements, one per weight coordinate.
  const std::vector<std::size_t>& torus() const noexcept { return torus_; }
  void set_torus(std::vector<std::size_t> t) { torus_ = std::move(t); }

  friend bool operator==(const LieSuperAlgebra& a, const LieSuperAlgebra& b) {
    return a.parity_ == b.parity_ && a.table_ == b.table_;
  }

  static void normalize(BasisVector& v) {
    std::map<std::size_t, Scalar> acc;
    for (auto& [k, c] : v) acc[k] += c;
    v.clear();
    for (auto& [k, c] : acc)
      if (!c.is_zero()) v.emplace_back(k, c);
  }

 private:
  std::vector<int> parity_;
  std::vector<std::string> names_;
  std::vector<BasisVector> table_;
  std::vector<std::vector<long>> weights_;
  std::vector<std::size_t> torus_;
};

struct AlgebraVerdict {
  bool ok = true;
  std::string violation;
};

/// Super antisymmetry, parity consistency, then super Jacobi
/// [a,[b,c]] = [[a,b],c] + (-1)^{p_a p_b} [b,[a,c]] over all triples.
inline AlgebraVerdict verify_superalgebra(const LieSuperAlgebra& L) {
  const std::size_t n = L.dim();
  auto fail = [](std::string s) { return AlgebraVerdict{false, std::move(s)}; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Scalar a = L.coefficient(i, j, k), b = L.coefficient(j, i, k);
        Scalar want = (L.parity(i) && L.parity(j)) ? b : -b;
        if (!(a == want))
          return fail("antisymmetry fails for c(" + std::to_string(i) + "," + std::to_string(j) + ")^" +
                      std::to_string(k));
        if (!a.is_zero() && L.parity(k) != (L.parity(i) ^ L.parity(j)))
          return fail("parity fails for c(" + std::to_string(i) + "," + std::to_string(j) + ")^" +
                      std::to_string(k));
      }
  auto apply = [&](std::size_t i, const BasisVector& v, bool left) {
    // [e_i, v] when left, [v, e_i] otherwise
    BasisVector out;
    for (const auto& [k, c] : v)
      for (const auto& [l, d] : left ? L.bracket(i, k) : L.bracket(k, i)) out.emplace_back(l, c * d);
    LieSuperAlgebra::normalize(out);
    return out;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        BasisVector lhs = apply(a, L.bracket(b, c), true);
        BasisVector rhs = apply(c, L.bracket(a, b), false);
        BasisVector t = apply(b, L.bracket(a, c), true);
        const bool neg = L.parity(a) && L.parity(b);
        for (auto& [k, v] : t) rhs.emplace_back(k, neg ? -v : v);
        LieSuperAlgebra::normalize(rhs);
        if (lhs != rhs)
          return fail("Jacobi fails for (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                      ")");
      }
  return {};
}

/// Checks that each declared toral element acts diagonally with the
/// declared weights: [t_a, e_j] = w_j[a] e_j.
inline bool torus_diagonalizes(const LieSuperAlgebra& L) {
  if (L.torus().empty() || L.weights().empty()) return false;
  if (L.weights().front().size() != L.torus().size()) return false;
  for (std::size_t a = 0; a < L.torus().size(); ++a) {
    std::size_t t = L.torus()[a];
    if (t >= L.dim() || L.parity(t) != 0) return false;
    for (std::size_t j = 0; j < L.dim(); ++j) {
      BasisVector want;
      if (L.weights()[j][a] != 0) want.emplace_back(j, Scalar(L.weights()[j][a]));
      if (L.bracket(t, j) != want) return false;
    }
  }
  return true;
}

/// True when the weights define a grading: c_ij^k != 0 implies w_k = w_i + w_j.
inline bool weights_grade(const LieSuperAlgebra& L) {
  const auto& w = L.weights();
  if (w.empty()) return false;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j)
      for (const auto& [k, c] : L.bracket(i, j))
        for (std::size_t a = 0; a < w[k].size(); ++a)
          if (w[k][a] != w[i][a] + w[j][a]) return false;
  return true;
}

namespace detail {

/// Sparse coordinates of a field in the (component, monomial) basis.
struct FieldFlattener {
  std::map<std::pair<std::size_t, Monomial>, std::size_t> key;
  linalg::ScalarRow operator()(const VectorField& X) {
    std::map<std::size_t, Scalar> acc;
    for (std::size_t k = 0; k < X.dim(); ++k)
      for (const auto& [m, c] : X[k].terms()) acc[key.emplace(std::make_pair(k, m), key.size()).first->second] += c;
    linalg::ScalarRow r;
    for (auto& [i, v] : acc)
      if (!v.is_zero()) r.emplace_back(i, v);
    return r;
  }
};

}  // namespace detail

/// Structure constants of the constant-coefficient span of `fields`.
/// Throws when a bracket leaves the span; the message names the pair.
inline LieSuperAlgebra extract_structure(const std::vector<VectorField>& fields,
                                         std::vector<std::string> names = {}) {
  std::vector<int> par;
  for (const auto& X : fields) par.push_back(X.parity_bit());
  LieSuperAlgebra L(par, std::move(names));
  detail::FieldFlattener flat;
  std::vector<linalg::ScalarRow> cols;
  for (const auto& X : fields) cols.push_back(flat(X));
  if (linalg::rank(cols) != fields.size()) throw PreconditionError("fields are linearly dependent over constants");
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i; j < fields.size(); ++j) {
      if (i == j && par[i] == 0) continue;
      VectorField B = bracket(fields[i], fields[j]);
      auto x = linalg::solve_columns(cols, flat(B));
      if (!x)
        throw PreconditionError("bracket [" + L.names()[i] + ", " + L.names()[j] + "] = " + B.str() +
                                " leaves the span");
      BasisVector v;
      for (std::size_t k = 0; k < x->size(); ++k)
        if (!(*x)[k].is_zero()) v.emplace_back(k, (*x)[k]);
      L.set_bracket(i, j, std::move(v));
    }
  return L;
}

/// Square supermatrix; format[r] is the parity of row/column r.
class SuperMatrix {
 public:
  SuperMatrix() = default;
  explicit SuperMatrix(std::vector<int> format)
      : format_(std::move(format)), a_(format_.size() * format_.size()) {}

  std::size_t size() const noexcept { return format_.size(); }
  const std::vector<int>& format() const noexcept { return format_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return a_.at(r * size() + c); }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return a_.at(r * size() + c); }

  /// The unit E_rc times s.
  static SuperMatrix unit(std::vector<int> format, std::size_t r, std::size_t c, const Scalar& s = Scalar(1)) {
    SuperMatrix m(std::move(format));
    m(r, c) = s;
    return m;
  }

  /// Part of parity p: entries with format(r) + format(c) = p mod 2.
  SuperMatrix part(int p) const {
    SuperMatrix m(format_);
    for (std::size_t r = 0; r < size(); ++r)
      for (std::size_t c = 0; c < size(); ++c)
        if (((format_[r] + format_[c]) & 1) == p) m(r, c) = (*this)(r, c);
    return m;
  }
  Parity parity() const {
    bool e = !part(0).is_zero(), o = !part(1).is_zero();
    if (e && o) return Parity::mixed;
    return o ? Parity::odd : Parity::even;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend SuperMatrix operator*(const SuperMatrix& A, const SuperMatrix& B) {
    A.check(B);
    SuperMatrix C(A.format_);
    const std::size_t n = A.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (A(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!B(k, j).is_zero()) C(i, j) += A(i, k) * B(k, j);
      }
    return C;
  }
  friend SuperMatrix operator+(SuperMatrix A, const SuperMatrix& B) {
    A.check(B);
    for (std::size_t i = 0; i < A.a_.size(); ++i) A.a_[i] += B.a_[i];
    return A;
  }
  friend SuperMatrix operator-(SuperMatrix A, const SuperMatrix& B) {
    A.check(B);
    for (std::size_t i = 0; i < A.a_.size(); ++i) A.a_[i] -= B.a_[i];
    return A;
  }
  friend SuperMatrix operator*(const Scalar& s, SuperMatrix A) {
    for (auto& x : A.a_) x *= s;
    return A;
  }
  friend bool operator==(const SuperMatrix& A, const SuperMatrix& B) {
    return A.format_ == B.format_ && A.a_ == B.a_;
  }

  const std::vector<Scalar>& entries() const noexcept { return a_; }

 private:
  void check(const SuperMatrix& B) const {
    if (format_ != B.format_) throw PreconditionError("supermatrix formats differ");
  }
  std::vector<int> format_;
  std::vector<Scalar> a_;
};

/// AB - (-1)^{p(A)p(B)} BA, summed over the parity-homogeneous parts.
inline SuperMatrix supermatrix_bracket(const SuperMatrix& A, const SuperMatrix& B) {
  if (A.format() != B.format()) throw PreconditionError("supermatrix formats differ");
  SuperMatrix R(A.format());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      SuperMatrix Aa = A.part(a), Bb = B.part(b);
      R = (a && b) ? R + (Aa * Bb + Bb * Aa) : R + (Aa * Bb - Bb * Aa);
    }
  return R;
}

/// Structure constants of the span of parity-homogeneous supermatrices.
inline LieSuperAlgebra structure_from_matrices(const std::vector<SuperMatrix>& mats,
                                               std::vector<std::string> names = {}) {
  std::vector<int> par;
  for (const auto& M : mats) {
    if (M.parity() == Parity::mixed) throw ParityError("supermatrix is not parity-homogeneous");
    par.push_back(bit(M.parity()));
  }
  auto flat = [](const SuperMatrix& M) {
    linalg::ScalarRow r;
    for (std::size_t i = 0; i < M.entries().size(); ++i)
      if (!M.entries()[i].is_zero()) r.emplace_back(i, M.entries()[i]);
    return r;
  };
  LieSuperAlgebra L(par, std::move(names));
  std::vector<linalg::ScalarRow> cols;
  for (const auto& M : mats) cols.push_back(flat(M));
  if (linalg::rank(cols) != mats.size()) throw PreconditionError("supermatrices are linearly dependent");
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i; j < mats.size(); ++j) {
      if (i == j && par[i] == 0) continue;
      auto x = linalg::solve_columns(cols, flat(supermatrix_bracket(mats[i], mats[j])));
      if (!x) throw PreconditionError("supermatrix bracket leaves the span");
      BasisVector v;
      for (std::size_t k = 0; k < x->size(); ++k)
        if (!(*x)[k].is_zero()) v.emplace_back(k, (*x)[k]);
      L.set_bracket(i, j, std::move(v));
    }
  return L;
}

namespace io {

using json = nlohmann::ordered_json;

/// {dim, parities, names?, weights?, torus?, brackets: [[i, j, [[k, "c"], ...]], ...]}
/// with only i < j stored, plus i == j for odd elements.
inline json to_json(const LieSuperAlgebra& L) {
  json j;
  j["dim"] = L.dim();
  j["parities"] = L.parities();
  j["names"] = L.names();
  if (!L.weights().empty()) j["weights"] = L.weights();
  if (!L.torus().empty()) j["torus"] = L.torus();
  json br = json::array();
  for (std::size_t a = 0; a < L.dim(); ++a)
    for (std::size_t b = a; b < L.dim(); ++b) {
      if (a == b && !L.parity(a)) continue;
      const auto& v = L.bracket(a, b);
      if (v.empty()) continue;
      json terms = json::array();
      for (const auto& [k, c] : v) terms.push_back(json::array({k, c.str()}));
      br.push_back(json::array({a, b, terms}));
    }
  j["brackets"] = br;
  return j;
}

inline LieSuperAlgebra algebra_from_json(const json& j) {
  const std::size_t n = j.at("dim").get<std::size_t>();
  auto par = j.at("parities").get<std::vector<int>>();
  if (par.size() != n) throw PreconditionError("parities must have length dim");
  std::vector<std::string> names;
  if (j.contains("names")) names = j["names"].get<std::vector<std::string>>();
  LieSuperAlgebra L(par, names);
  for (const auto& e : j.at("brackets")) {
    if (!e.is_array() || e.size() != 3) throw PreconditionError("bracket entry must be [i, j, terms]");
    std::size_t a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
    if (a >= n || b >= n) throw PreconditionError("bracket index out of range");
    if (a > b) throw PreconditionError("only i <= j bracket entries may be stored");
    if (a == b && !par[a]) throw PreconditionError("[e_i, e_i] may be stored only for odd e_i");
    BasisVector v;
    for (const auto& t : e[2]) {
      std::size_t k = t.at(0).get<std::size_t>();
      if (k >= n) throw PreconditionError("bracket result index out of range");
      v.emplace_back(k, t.at(1).is_string() ? Scalar::parse(t.at(1).get<std::string>()) : Scalar(t.at(1).get<long>()));
    }
    L.set_bracket(a, b, std::move(v));
  }
  if (j.contains("weights")) {
    std::vector<std::vector<long>> w;
    for (const auto& x : j["weights"]) w.push_back(x.is_array() ? x.get<std::vector<long>>() : std::vector<long>{x.get<long>()});
    L.set_weights(std::move(w));
  }
  if (j.contains("torus")) L.set_torus(j["torus"].get<std::vector<std::size_t>>());
  return L;
}

}  // namespace io

}  // namespace supereds
