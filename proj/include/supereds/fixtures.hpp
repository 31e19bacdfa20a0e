#pragma once

#include <string>
#include <vector>

#include "supereds/distributions.hpp"
#include "supereds/dsl.hpp"
#include "supereds/liesuper.hpp"

namespace supereds::fixtures {

inline BasisVector bv(std::initializer_list<std::pair<std::size_t, long>> t) {
  BasisVector v;
  for (auto [k, c] : t) v.emplace_back(k, Scalar(c));
  return v;
}

/// Basis (f, h, e): [f,h] = 2f, [f,e] = -h, [h,e] = 2e; torus h.
inline LieSuperAlgebra sl2() {
  LieSuperAlgebra L({0, 0, 0}, {"f", "h", "e"});
  L.set_bracket(0, 1, bv({{0, 2}}));
  L.set_bracket(0, 2, bv({{1, -1}}));
  L.set_bracket(1, 2, bv({{2, 2}}));
  L.set_weights({{-2}, {0}, {2}});
  L.set_torus({1});
  return L;
}

/// Basis (e11, e12, e21, e22) with the matrix commutator; torus e11, e22.
inline LieSuperAlgebra gl2() {
  LieSuperAlgebra L({0, 0, 0, 0}, {"e11", "e12", "e21", "e22"});
  L.set_bracket(0, 1, bv({{1, 1}}));
  L.set_bracket(0, 2, bv({{2, -1}}));
  L.set_bracket(1, 2, bv({{0, 1}, {3, -1}}));
  L.set_bracket(1, 3, bv({{1, 1}}));
  L.set_bracket(2, 3, bv({{2, -1}}));
  L.set_weights({{0, 0}, {1, -1}, {-1, 1}, {0, 0}});
  L.set_torus({0, 3});
  return L;
}

/// [x, y] = z, graded by (1,0), (0,1), (1,1).
inline LieSuperAlgebra heis3() {
  LieSuperAlgebra L({0, 0, 0}, {"x", "y", "z"});
  L.set_bracket(0, 1, bv({{2, 1}}));
  L.set_weights({{1, 0}, {0, 1}, {1, 1}});
  return L;
}

inline LieSuperAlgebra abelian(std::size_t n) {
  LieSuperAlgebra L(std::vector<int>(n, 0));
  L.set_weights(std::vector<std::vector<long>>(n, std::vector<long>{0}));
  return L;
}

/// Strictly upper triangular k x k matrices, basis E_ij (i < j) in
/// lexicographic order, graded by eps_i - eps_j.
inline LieSuperAlgebra nilpotent(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      idx.push_back({i, j});
      names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  LieSuperAlgebra L(std::vector<int>(idx.size(), 0), names);
  auto find = [&](std::size_t i, std::size_t j) {
    for (std::size_t t = 0; t < idx.size(); ++t)
      if (idx[t] == std::make_pair(i, j)) return t;
    return idx.size();
  };
  std::vector<std::vector<long>> w;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    std::vector<long> v(k, 0);
    v[idx[a].first] += 1;
    v[idx[a].second] -= 1;
    w.push_back(v);
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      // [E_ij, E_kl] = d_jk E_il - d_li E_kj
      auto [i, j] = idx[a];
      auto [p, q] = idx[b];
      BasisVector v2;
      if (j == p) v2.emplace_back(find(i, q), Scalar(1));
      if (q == i) v2.emplace_back(find(p, j), Scalar(-1));
      if (!v2.empty()) L.set_bracket(a, b, v2);
    }
  }
  L.set_weights(w);
  return L;
}

/// osp(1|2): even (h, e, f), odd (x, y); torus h.
inline LieSuperAlgebra osp12() {
  LieSuperAlgebra L({0, 0, 0, 1, 1}, {"h", "e", "f", "x", "y"});
  L.set_bracket(0, 1, bv({{1, 2}}));
  L.set_bracket(0, 2, bv({{2, -2}}));
  L.set_bracket(1, 2, bv({{0, 1}}));
  L.set_bracket(0, 3, bv({{3, 1}}));
  L.set_bracket(0, 4, bv({{4, -1}}));
  L.set_bracket(1, 4, bv({{3, -1}}));
  L.set_bracket(2, 3, bv({{4, -1}}));
  L.set_bracket(3, 3, bv({{1, 2}}));
  L.set_bracket(4, 4, bv({{2, -2}}));
  L.set_bracket(3, 4, bv({{0, 1}}));
  L.set_weights({{0}, {2}, {-2}, {1}, {-1}});
  L.set_torus({0});
  return L;
}

/// Minkowski superspace with coordinates x00, x01, x10, x11 (even) and
/// psi0, psi1, psib0, psib1 (odd).
inline Context minkowski_superspace() {
  return make_plain_context({{"x00"}, {"x01"}, {"x10"}, {"x11"},
                             {"psi0", Parity::odd}, {"psi1", Parity::odd},
                             {"psib0", Parity::odd}, {"psib1", Parity::odd}});
}

inline const std::vector<std::string>& susy_names() {
  static const std::vector<std::string> n{"Q0", "Q1", "Qb0", "Qb1", "T00", "T01", "T10", "T11"};
  return n;
}

/// Q_a = d/dpsi^a + psib^b d/dx_ab, Qb_b = d/dpsib^b + psi^a d/dx_ab,
/// T_ab = d/dx_ab.
inline std::vector<VectorField> susy_fields(const Context& c) {
  auto x = [](int a, int b) { return "x" + std::to_string(a) + std::to_string(b); };
  std::vector<VectorField> out;
  for (int a = 0; a < 2; ++a) {
    VectorField Q = VectorField::partial(c, "psi" + std::to_string(a));
    for (int b = 0; b < 2; ++b) Q.set(x(a, b), SuperPoly::generator(c, "psib" + std::to_string(b)));
    out.push_back(Q);
  }
  for (int b = 0; b < 2; ++b) {
    VectorField Q = VectorField::partial(c, "psib" + std::to_string(b));
    for (int a = 0; a < 2; ++a) Q.set(x(a, b), SuperPoly::generator(c, "psi" + std::to_string(a)));
    out.push_back(Q);
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.push_back(VectorField::partial(c, x(a, b)));
  return out;
}

/// Format (2|1|2): rows 0,1 even, row 2 odd, rows 3,4 even.
inline std::vector<int> susy_format() { return {0, 0, 1, 0, 0}; }

/// Q_a -> E_{2,a}, Qb_b -> E_{3+b,2}, T_ab -> 1/2 E_{3+b,a}.
inline std::vector<SuperMatrix> susy_matrices() {
  auto f = susy_format();
  std::vector<SuperMatrix> out;
  for (std::size_t a = 0; a < 2; ++a) out.push_back(SuperMatrix::unit(f, 2, a));
  for (std::size_t b = 0; b < 2; ++b) out.push_back(SuperMatrix::unit(f, 3 + b, 2));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) out.push_back(SuperMatrix::unit(f, 3 + b, a, Scalar::ratio(1, 2)));
  return out;
}

/// The Q/Qb/T algebra extended by the diagonal torus element
/// H = diag(1, -1, 0, -1, 1) of the A-block (A = diag(1,-1), -conj(A)^T
/// in the lower block).
inline LieSuperAlgebra susy_with_torus() {
  auto mats = susy_matrices();
  SuperMatrix H(susy_format());
  H(0, 0) = Scalar(1);
  H(1, 1) = Scalar(-1);
  H(3, 3) = Scalar(-1);
  H(4, 4) = Scalar(1);
  mats.push_back(H);
  auto names = susy_names();
  names.push_back("H");
  LieSuperAlgebra L = structure_from_matrices(mats, names);
  L.set_weights({{-1}, {1}, {-1}, {1}, {-2}, {0}, {0}, {2}, {0}});
  L.set_torus({8});
  return L;
}

/// dt - sum p_i dq_i on (t, p_1..p_n, q_1..q_n).
inline PfaffSystem contact(std::size_t n) {
  std::vector<CoordinateSpec> cs{{"t"}};
  for (std::size_t i = 1; i <= n; ++i) cs.push_back({"p" + std::to_string(i)});
  for (std::size_t i = 1; i <= n; ++i) cs.push_back({"q" + std::to_string(i)});
  auto c = make_domain(cs);
  std::string a = "dt";
  for (std::size_t i = 1; i <= n; ++i) a += " - p" + std::to_string(i) + "*dq" + std::to_string(i);
  return {c, {dsl::parse_expression(c, a)}};
}

/// dtau - sum pi_i dq_i with tau, pi_i odd and q_i even.
inline PfaffSystem odd_contact(std::size_t n) {
  std::vector<CoordinateSpec> cs{{"tau", Parity::odd}};
  for (std::size_t i = 1; i <= n; ++i) cs.push_back({"pi" + std::to_string(i), Parity::odd});
  for (std::size_t i = 1; i <= n; ++i) cs.push_back({"q" + std::to_string(i)});
  auto c = make_domain(cs);
  std::string a = "dtau";
  for (std::size_t i = 1; i <= n; ++i) a += " - pi" + std::to_string(i) + "*dq" + std::to_string(i);
  return {c, {dsl::parse_expression(c, a)}};
}

}  // namespace supereds::fixtures
