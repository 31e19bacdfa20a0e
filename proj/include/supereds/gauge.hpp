#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "supereds/dsl.hpp"
#include "supereds/forms.hpp"

namespace supereds {

using FormMatrix = std::vector<std::vector<DifferentialForm>>;
using FormColumn = std::vector<DifferentialForm>;

/// nabla = d + alpha on the free module with an even frame e_1..e_r;
/// alpha(e_j) = sum_i alpha_ij e_i.
struct Connection {
  Context domain;
  std::size_t rank = 0;
  FormMatrix alpha;

  static Connection flat(const Context& c, std::size_t r) {
    return {c, r, FormMatrix(r, FormColumn(r, SuperPoly(c)))};
  }
  void validate() const {
    if (alpha.size() != rank) throw PreconditionError("connection matrix has the wrong size");
    for (const auto& row : alpha) {
      if (row.size() != rank) throw PreconditionError("connection matrix has the wrong size");
      for (const auto& a : row) {
        if (a.is_zero()) continue;
        if (!same_context(a.context(), domain)) throw ContextMismatch("connection entry from another domain");
        if (form_degree(a) != 1u) throw PreconditionError("connection entries must be 1-forms");
        if (a.parity() != Parity::odd) throw ParityError("connection entries must be odd");
      }
    }
  }
};

/// (nabla s)_i = d s_i + sum_j alpha_ij s_j, which is
/// ds (x) v + (-1)^{p(s)} s (x) alpha(v) for odd alpha.
inline FormColumn apply_connection(const Connection& C, const FormColumn& s, std::size_t degree) {
  if (s.size() != C.rank) throw PreconditionError("section has the wrong length");
  for (const auto& x : s)
    if (!x.is_zero() && form_degree(x) != degree) throw PreconditionError("section entry has the wrong form degree");
  FormColumn out(C.rank, SuperPoly(C.domain));
  for (std::size_t i = 0; i < C.rank; ++i) {
    out[i] = exterior_d(s[i]);
    for (std::size_t j = 0; j < C.rank; ++j)
      if (!C.alpha[i][j].is_zero() && !s[j].is_zero()) out[i] += C.alpha[i][j] * s[j];
  }
  return out;
}

inline FormMatrix matmul(const FormMatrix& A, const FormMatrix& B) {
  const std::size_t r = A.size();
  FormMatrix C(r, FormColumn(B.empty() ? 0 : B[0].size()));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < C[i].size(); ++j)
      for (std::size_t k = 0; k < B.size(); ++k)
        if (!A[i][k].is_zero() && !B[k][j].is_zero()) C[i][j] += A[i][k] * B[k][j];
  return C;
}

/// F = d(alpha) + alpha alpha.
inline FormMatrix curvature(const Connection& C) {
  FormMatrix F = matmul(C.alpha, C.alpha);
  for (std::size_t i = 0; i < C.rank; ++i)
    for (std::size_t j = 0; j < C.rank; ++j) {
      F[i][j] += exterior_d(C.alpha[i][j]);
      if (F[i][j].is_zero()) F[i][j] = SuperPoly(C.domain);
    }
  return F;
}

/// Columns nabla(nabla(e_j)) of the frame.
inline FormMatrix curvature_by_double_application(const Connection& C) {
  FormMatrix F(C.rank, FormColumn(C.rank, SuperPoly(C.domain)));
  for (std::size_t j = 0; j < C.rank; ++j) {
    FormColumn e(C.rank, SuperPoly(C.domain));
    e[j] = SuperPoly::constant(C.domain, Scalar(1));
    auto once = apply_connection(C, e, 0);
    auto twice = apply_connection(C, once, 1);
    for (std::size_t i = 0; i < C.rank; ++i) F[i][j] = twice[i];
  }
  return F;
}

/// Induced connection on End(V) = V* (x) V: nabla X = dX + alpha X - (-1)^{p(X)} X alpha,
/// with X flattened row-major, index (i, j) -> i r + j.
inline Connection end_connection(const Connection& C) {
  const std::size_t r = C.rank;
  Connection E = Connection::flat(C.domain, r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        E.alpha[i * r + j][k * r + j] += C.alpha[i][k];
        E.alpha[i * r + j][i * r + k] -= C.alpha[k][j];
      }
  return E;
}

inline FormColumn flatten(const FormMatrix& M) {
  FormColumn out;
  for (const auto& row : M)
    for (const auto& x : row) out.push_back(x);
  return out;
}

/// alpha_1 (x) 1 + 1 (x) alpha_2 on V1 (x) V2, index (i, j) -> i r2 + j.
/// The frames are even, so no twisting sign appears.
inline Connection tensor_connection(const Connection& A, const Connection& B) {
  if (!same_context(A.domain, B.domain)) throw ContextMismatch("connections live on different domains");
  const std::size_t r1 = A.rank, r2 = B.rank;
  Connection T = Connection::flat(A.domain, r1 * r2);
  for (std::size_t i = 0; i < r1; ++i)
    for (std::size_t j = 0; j < r2; ++j) {
      for (std::size_t k = 0; k < r1; ++k) T.alpha[i * r2 + j][k * r2 + j] += A.alpha[i][k];
      for (std::size_t l = 0; l < r2; ++l) T.alpha[i * r2 + j][i * r2 + l] += B.alpha[j][l];
    }
  return T;
}

using ScalarMatrix = std::vector<std::vector<Scalar>>;

inline ScalarMatrix scalar_matmul(const ScalarMatrix& A, const ScalarMatrix& B) {
  ScalarMatrix C(A.size(), std::vector<Scalar>(B[0].size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t k = 0; k < B.size(); ++k)
      for (std::size_t j = 0; j < B[0].size(); ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}

/// Dirac matrices gamma^0..gamma^3 with metric eta.
struct GammaSet {
  std::array<ScalarMatrix, 4> gamma;
  std::array<int, 4> eta{1, -1, -1, -1};

  /// Weyl (chiral) basis: gamma^0 = [[0, 1], [1, 0]],
  /// gamma^k = [[0, sigma^k], [-sigma^k, 0]].
  static GammaSet weyl() {
    const Scalar I = Scalar::imaginary_unit();
    std::array<ScalarMatrix, 4> pauli;
    pauli[0] = {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}};
    pauli[1] = {{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}};
    pauli[2] = {{Scalar(0), -I}, {I, Scalar(0)}};
    pauli[3] = {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(-1)}};
    GammaSet g;
    for (int mu = 0; mu < 4; ++mu) {
      ScalarMatrix m(4, std::vector<Scalar>(4));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          m[a][2 + b] = pauli[mu][a][b];
          m[2 + a][b] = mu == 0 ? pauli[mu][a][b] : -pauli[mu][a][b];
        }
      g.gamma[mu] = m;
    }
    return g;
  }

  /// gamma^mu gamma^nu + gamma^nu gamma^mu == 2 eta^{mu nu} 1, exactly.
  bool clifford_holds() const {
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        auto a = scalar_matmul(gamma[mu], gamma[nu]);
        auto b = scalar_matmul(gamma[nu], gamma[mu]);
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) {
            Scalar want = (mu == nu && i == j) ? Scalar(2 * eta[mu]) : Scalar(0);
            if (!(a[i][j] + b[i][j] == want)) return false;
          }
      }
    return true;
  }

  /// sigma_{mu nu} = (i/2) [gamma^mu, gamma^nu].
  ScalarMatrix sigma(int mu, int nu) const {
    auto a = scalar_matmul(gamma[mu], gamma[nu]);
    auto b = scalar_matmul(gamma[nu], gamma[mu]);
    const Scalar h = Scalar(mpq_class(0), mpq_class(1, 2));
    ScalarMatrix s(4, std::vector<Scalar>(4));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) s[i][j] = h * (a[i][j] - b[i][j]);
    return s;
  }
};

/// Minkowski domain x0..x3 over Q(i) with odd constant spinor parameters
/// eps0..eps3 and epsb0..epsb3.
inline Context minkowski_domain() {
  std::vector<CoordinateSpec> params;
  for (int a = 0; a < 4; ++a) params.push_back({"eps" + std::to_string(a), Parity::odd});
  for (int a = 0; a < 4; ++a) params.push_back({"epsb" + std::to_string(a), Parity::odd});
  return make_domain({{"x0"}, {"x1"}, {"x2"}, {"x3"}}, params, true);
}

/// Vector potential A_mu and Dirac spinors psi, psibar (4 components each).
struct FieldConfiguration {
  Context domain;
  std::array<SuperPoly, 4> A;
  std::array<SuperPoly, 4> psi;
  std::array<SuperPoly, 4> psibar;

  static FieldConfiguration zero(const Context& c) {
    FieldConfiguration f;
    f.domain = c;
    for (int k = 0; k < 4; ++k) f.A[k] = f.psi[k] = f.psibar[k] = SuperPoly(c);
    return f;
  }
  SuperPoly dx(int mu) const { return SuperPoly::generator(domain, "dx" + std::to_string(mu)); }
  SuperPoly partial(const SuperPoly& f, int mu) const { return f.partial("x" + std::to_string(mu)); }
  /// alpha = sum_mu A_mu dx_mu as a rank 1 connection.
  Connection connection() const {
    Connection C = Connection::flat(domain, 1);
    for (int mu = 0; mu < 4; ++mu) C.alpha[0][0] += A[mu] * dx(mu);
    return C;
  }
};

namespace detail {

inline SuperPoly sc(const Context& c, const Scalar& s) { return SuperPoly::constant(c, s); }

}  // namespace detail

struct MaxwellResidual {
  DifferentialForm residual;            // d(*F) - *J, a 3-form
  DifferentialForm current;             // J = sum_mu (psibar gamma^mu psi) dx_mu
  std::vector<std::vector<SuperPoly>> bilinear;  // psi (x) psibar
};

inline MaxwellResidual maxwell_residual(const FieldConfiguration& cfg, const GammaSet& g) {
  const Context& c = cfg.domain;
  const std::vector<int> eta(g.eta.begin(), g.eta.end());
  FormMatrix F = curvature(cfg.connection());
  DifferentialForm lhs = exterior_d(hodge_star(F[0][0], eta));
  MaxwellResidual r;
  r.current = SuperPoly(c);
  for (int mu = 0; mu < 4; ++mu) {
    SuperPoly j(c);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (!g.gamma[mu][a][b].is_zero()) j += cfg.psibar[a] * detail::sc(c, g.gamma[mu][a][b]) * cfg.psi[b];
    r.current += j * cfg.dx(mu);
  }
  r.residual = lhs - hodge_star(r.current, eta);
  r.bilinear.assign(4, std::vector<SuperPoly>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) r.bilinear[a][b] = cfg.psi[a] * cfg.psibar[b];
  return r;
}

/// sum_mu gamma^mu (i d_mu + e A_mu) psi - m psi.
inline std::array<SuperPoly, 4> dirac_residual(const FieldConfiguration& cfg, const GammaSet& g, const Scalar& e,
                                               const Scalar& m) {
  const Context& c = cfg.domain;
  const Scalar I = Scalar::imaginary_unit();
  std::array<SuperPoly, 4> out;
  for (int a = 0; a < 4; ++a) {
    SuperPoly r = -(detail::sc(c, m) * cfg.psi[a]);
    for (int mu = 0; mu < 4; ++mu)
      for (int b = 0; b < 4; ++b) {
        if (g.gamma[mu][a][b].is_zero()) continue;
        SuperPoly D = detail::sc(c, I) * cfg.partial(cfg.psi[b], mu) + detail::sc(c, e) * cfg.A[mu] * cfg.psi[b];
        r += detail::sc(c, g.gamma[mu][a][b]) * D;
      }
    out[a] = r;
  }
  return out;
}

struct SusyVariation {
  std::array<SuperPoly, 4> dpsi;
  std::array<SuperPoly, 4> dpsibar;
  std::array<SuperPoly, 4> dA;
  /// sum_{mu,nu} sigma_{mu nu} F^{mu nu}
  std::vector<std::vector<SuperPoly>> sigmaF;
};

/// F^{mu nu} = (d_mu A_nu - d_nu A_mu)/2 so that F = sum_{mu,nu} F^{mu nu} dx_mu dx_nu;
/// dpsi = (sigma.F) eps, dpsibar = -epsb (sigma.F),
/// dA_mu = i (epsb gamma^mu psi - psibar gamma^mu eps).
inline SusyVariation susy_variation(const FieldConfiguration& cfg, const GammaSet& g) {
  const Context& c = cfg.domain;
  std::array<SuperPoly, 4> eps, epsb;
  for (int a = 0; a < 4; ++a) {
    eps[a] = SuperPoly::generator(c, "eps" + std::to_string(a));
    epsb[a] = SuperPoly::generator(c, "epsb" + std::to_string(a));
  }
  SusyVariation v;
  v.sigmaF.assign(4, std::vector<SuperPoly>(4, SuperPoly(c)));
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      if (mu == nu) continue;
      SuperPoly Fmn = detail::sc(c, Scalar::ratio(1, 2)) * (cfg.partial(cfg.A[nu], mu) - cfg.partial(cfg.A[mu], nu));
      if (Fmn.is_zero()) continue;
      auto s = g.sigma(mu, nu);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          if (!s[a][b].is_zero()) v.sigmaF[a][b] += detail::sc(c, s[a][b]) * Fmn;
    }
  const Scalar I = Scalar::imaginary_unit();
  for (int a = 0; a < 4; ++a) {
    SuperPoly dp(c), dpb(c);
    for (int b = 0; b < 4; ++b) {
      dp += v.sigmaF[a][b] * eps[b];
      dpb -= epsb[b] * v.sigmaF[b][a];
    }
    v.dpsi[a] = dp;
    v.dpsibar[a] = dpb;
  }
  for (int mu = 0; mu < 4; ++mu) {
    SuperPoly x(c);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const Scalar& gm = g.gamma[mu][a][b];
        if (gm.is_zero()) continue;
        x += epsb[a] * detail::sc(c, gm) * cfg.psi[b];
        x -= cfg.psibar[a] * detail::sc(c, gm) * eps[b];
      }
    v.dA[mu] = detail::sc(c, I) * x;
  }
  return v;
}

/// Connection from a script with `rank` and `alpha i j = ...` statements.
inline Connection connection_from_session(dsl::Session& s) {
  if (!s.rank()) throw PreconditionError("script declares no rank");
  Connection C = Connection::flat(s.context(), *s.rank());
  for (const auto& [ij, a] : s.alpha()) {
    if (ij.first >= C.rank || ij.second >= C.rank) throw PreconditionError("alpha index exceeds the rank");
    C.alpha[ij.first][ij.second] = a;
  }
  C.validate();
  return C;
}

namespace io {

/// {"A": [4 expr], "psi": [4 expr], "psibar": [4 expr], "charge": s, "mass": s}
/// with expressions in x0..x3 (and eps/epsb), missing entries meaning zero.
struct PhysicsInput {
  FieldConfiguration cfg;
  Scalar charge{1};
  Scalar mass{0};
};

inline PhysicsInput physics_from_json(const nlohmann::ordered_json& j) {
  PhysicsInput in;
  in.cfg = FieldConfiguration::zero(minkowski_domain());
  auto load = [&](const char* key, std::array<SuperPoly, 4>& dst) {
    if (!j.contains(key)) return;
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 4) throw PreconditionError(std::string("'") + key + "' must have 4 entries");
    for (std::size_t k = 0; k < 4; ++k) {
      dst[k] = dsl::parse_expression(in.cfg.domain, a[k].is_string() ? a[k].get<std::string>() : a[k].dump());
      if (dst[k].parity() == Parity::mixed) throw ParityError(std::string("'") + key + "' entry has mixed parity");
    }
  };
  load("A", in.cfg.A);
  load("psi", in.cfg.psi);
  load("psibar", in.cfg.psibar);
  auto scalar = [&](const char* key, Scalar& dst) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    dst = Scalar::parse(v.is_string() ? v.get<std::string>() : v.dump());
  };
  scalar("charge", in.charge);
  scalar("mass", in.mass);
  return in;
}

}  // namespace io

}  // namespace supereds
