#include <catch_amalgamated.hpp>

#include <random>

#include "supereds/gauge.hpp"
#include "test_util.hpp"

using namespace supereds;

namespace {

std::vector<std::size_t> coordinate_indices(const Context& c) { return c->coordinates(); }

/// Random odd 1-form sum_k f_k dxi_k with coordinate-only coefficients.
DifferentialForm random_one_form(std::mt19937& rng, const Context& c, std::size_t deg = 2) {
  DifferentialForm w(c);
  for (auto k : c->coordinates()) {
    auto d = c->differential_of(k);
    int p = (c->is_odd(d) ? 1 : 0) ^ 1;
    w += testing::random_poly(rng, c, p, deg, 2, coordinate_indices(c)) * SuperPoly::generator(c, d);
  }
  return w;
}

Connection random_connection(std::mt19937& rng, const Context& c, std::size_t r) {
  Connection C = Connection::flat(c, r);
  for (auto& row : C.alpha)
    for (auto& a : row) a = random_one_form(rng, c);
  C.validate();
  return C;
}

bool all_zero(const FormColumn& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Context even_domain() { return make_domain({{"x"}, {"y"}, {"z"}}); }
Context super_domain() { return make_domain({{"x"}, {"y"}, {"th", Parity::odd}}); }

FormMatrix d_matrix(const FormMatrix& M) {
  FormMatrix out = M;
  for (auto& row : out)
    for (auto& x : row) x = exterior_d(x);
  return out;
}

/// g = U L with U unipotent upper and L unipotent lower triangular, so
/// g^{-1} = L^{-1} U^{-1} is again polynomial.
std::pair<FormMatrix, FormMatrix> random_gauge(std::mt19937& rng, const Context& c) {
  auto f = [&] { return testing::random_poly(rng, c, 0, 2, 2, c->coordinates()); };
  SuperPoly one = SuperPoly::constant(c, Scalar(1)), zero(c);
  SuperPoly a = f(), b = f(), e = f(), p = f(), q = f(), s = f();
  FormMatrix U{{one, a, b}, {zero, one, e}, {zero, zero, one}};
  FormMatrix Ui{{one, -a, a * e - b}, {zero, one, -e}, {zero, zero, one}};
  FormMatrix L{{one, zero, zero}, {p, one, zero}, {q, s, one}};
  FormMatrix Li{{one, zero, zero}, {-p, one, zero}, {s * p - q, -s, one}};
  return {matmul(U, L), matmul(Li, Ui)};
}

bool same(const FormMatrix& A, const FormMatrix& B) {
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A[i].size(); ++j)
      if (!(A[i][j] - B[i][j]).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("rank one connection and curvature", "[gauge]") {
  auto c = make_domain({{"x"}, {"y"}});
  auto x = SuperPoly::generator(c, "x"), y = SuperPoly::generator(c, "y");
  auto dx = SuperPoly::generator(c, "dx"), dy = SuperPoly::generator(c, "dy");
  Connection C = Connection::flat(c, 1);
  C.alpha[0][0] = x * y * dx;
  auto F = curvature(C);
  CHECK(F[0][0] == x * dy * dx);
  auto s = apply_connection(C, {x}, 0);
  CHECK(s[0] == dx + x * x * y * dx);
  CHECK(same(F, curvature_by_double_application(C)));
}

TEST_CASE("connection validation", "[gauge]") {
  auto c = even_domain();
  Connection C = Connection::flat(c, 2);
  C.alpha[0][1] = SuperPoly::generator(c, "x");
  CHECK_THROWS_AS(C.validate(), PreconditionError);
  C.alpha[0][1] = SuperPoly::generator(c, "dx") * SuperPoly::generator(c, "dy");
  CHECK_THROWS_AS(C.validate(), PreconditionError);
  C.alpha.pop_back();
  CHECK_THROWS_AS(C.validate(), PreconditionError);
  Connection ok = Connection::flat(c, 2);
  CHECK_THROWS_AS(apply_connection(ok, {SuperPoly(c)}, 0), PreconditionError);
  CHECK_THROWS_AS(apply_connection(ok, {SuperPoly::generator(c, "dx"), SuperPoly(c)}, 0), PreconditionError);
}

TEST_CASE("curvature equals nabla squared on the frame", "[gauge][property]") {
  std::mt19937 rng(101);
  for (int t = 0; t < 100; ++t) {
    auto c = t % 2 ? super_domain() : even_domain();
    auto C = random_connection(rng, c, 2 + t % 2);
    REQUIRE(same(curvature(C), curvature_by_double_application(C)));
  }
}

TEST_CASE("Leibniz rule for connections", "[gauge][property]") {
  std::mt19937 rng(202);
  for (int t = 0; t < 200; ++t) {
    auto c = t % 2 ? super_domain() : even_domain();
    auto C = random_connection(rng, c, 2);
    std::size_t deg = t % 3 == 0 ? 1 : 0;
    FormColumn s;
    for (int i = 0; i < 2; ++i)
      s.push_back(deg ? random_one_form(rng, c) : testing::random_poly(rng, c, 0, 2, 3, c->coordinates()));
    int pf = static_cast<int>(rng() % 2);
    if (c->coordinates().size() == 2 || !c->is_odd(c->coordinates()[2])) pf = 0;
    auto f = testing::random_poly(rng, c, pf, 2, 3, c->coordinates());
    FormColumn fs;
    for (auto& x : s) fs.push_back(f * x);
    auto lhs = apply_connection(C, fs, deg);
    auto ns = apply_connection(C, s, deg);
    auto df = exterior_d(f);
    for (std::size_t i = 0; i < 2; ++i) {
      auto rhs = df * s[i] + (pf ? -(f * ns[i]) : f * ns[i]);
      REQUIRE(lhs[i] == rhs);
    }
  }
}

TEST_CASE("Bianchi identity through the End connection", "[gauge][property]") {
  std::mt19937 rng(303);
  for (int t = 0; t < 200; ++t) {
    auto c = t % 2 ? super_domain() : even_domain();
    auto C = random_connection(rng, c, 2);
    auto F = curvature(C);
    auto E = end_connection(C);
    REQUIRE(all_zero(apply_connection(E, flatten(F), 2)));
    // dF + alpha F - F alpha, spelled out
    auto aF = matmul(C.alpha, F), Fa = matmul(F, C.alpha);
    auto dF = d_matrix(F);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) REQUIRE((dF[i][j] + aF[i][j] - Fa[i][j]).is_zero());
  }
}

TEST_CASE("End connection curvature is the commutator with F", "[gauge]") {
  std::mt19937 rng(404);
  for (int t = 0; t < 20; ++t) {
    auto c = even_domain();
    auto C = random_connection(rng, c, 2);
    FormMatrix X(2, FormColumn(2));
    for (auto& row : X)
      for (auto& x : row) x = testing::random_poly(rng, c, 0, 1, 2, c->coordinates());
    auto E = end_connection(C);
    auto twice = apply_connection(E, apply_connection(E, flatten(X), 0), 1);
    auto F = curvature(C);
    auto FX = matmul(F, X), XF = matmul(X, F);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) REQUIRE(twice[2 * i + j] == FX[i][j] - XF[i][j]);
  }
}

TEST_CASE("pure gauge connections are flat", "[gauge][property]") {
  std::mt19937 rng(505);
  for (int t = 0; t < 200; ++t) {
    auto c = even_domain();
    auto [g, gi] = random_gauge(rng, c);
    REQUIRE(same(matmul(g, gi), matmul(gi, g)));
    Connection C = Connection::flat(c, 3);
    C.alpha = matmul(gi, d_matrix(g));
    for (auto& row : C.alpha)
      for (auto& a : row)
        if (a.is_zero()) a = SuperPoly(c);
    C.validate();
    auto F = curvature(C);
    for (const auto& row : F)
      for (const auto& x : row) REQUIRE(x.is_zero());
  }
}

TEST_CASE("gauge covariance of curvature", "[gauge][property]") {
  std::mt19937 rng(606);
  for (int t = 0; t < 200; ++t) {
    auto c = even_domain();
    if (t % 4 == 0) {
      auto C = random_connection(rng, c, 3);
      auto [g, gi] = random_gauge(rng, c);
      Connection D = C;
      auto ga = matmul(matmul(gi, C.alpha), g), gdg = matmul(gi, d_matrix(g));
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) D.alpha[i][j] = ga[i][j] + gdg[i][j];
      REQUIRE(same(curvature(D), matmul(matmul(gi, curvature(C)), g)));
    } else {
      // abelian: alpha -> alpha + d chi leaves F unchanged
      auto C = random_connection(rng, c, 1);
      auto chi = testing::random_poly(rng, c, 0, 3, 4, c->coordinates());
      Connection D = C;
      D.alpha[0][0] += exterior_d(chi);
      REQUIRE(curvature(D)[0][0] == curvature(C)[0][0]);
    }
  }
}

TEST_CASE("tensor product connection", "[gauge]") {
  std::mt19937 rng(707);
  for (int t = 0; t < 20; ++t) {
    auto c = t % 2 ? super_domain() : even_domain();
    auto A = random_connection(rng, c, 2), B = random_connection(rng, c, 2);
    auto T = tensor_connection(A, B);
    auto FA = curvature(A), FB = curvature(B), FT = curvature(T);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t l = 0; l < 2; ++l) {
            DifferentialForm want(c);
            if (j == l) want += FA[i][k];
            if (i == k) want += FB[j][l];
            REQUIRE(FT[2 * i + j][2 * k + l] == want);
          }
  }
}

TEST_CASE("connection from a script", "[gauge][dsl]") {
  auto s = dsl::Session::from_text("even x y\nrank 2\nalpha 1 2 = x*dy\nalpha 2 1 = dx\n");
  auto C = connection_from_session(s);
  auto F = curvature(C);
  const auto& c = C.domain;
  auto x = SuperPoly::generator(c, "x"), dx = SuperPoly::generator(c, "dx"), dy = SuperPoly::generator(c, "dy");
  CHECK(F[0][0] == x * dy * dx);
  CHECK(F[0][1] == dx * dy);
  CHECK(F[1][1] == dx * x * dy);
  auto bad = dsl::Session::from_text("even x\nrank 1\nalpha 1 1 = x\n");
  CHECK_THROWS_AS(connection_from_session(bad), PreconditionError);
}

namespace {

using M4 = std::vector<std::vector<Scalar>>;

/// Weyl representation written out entry by entry.
std::array<M4, 4> literal_gammas() {
  const Scalar O(0), I1(1), N(-1), i = Scalar::imaginary_unit(), ni = -Scalar::imaginary_unit();
  return {M4{{O, O, I1, O}, {O, O, O, I1}, {I1, O, O, O}, {O, I1, O, O}},
          M4{{O, O, O, I1}, {O, O, I1, O}, {O, N, O, O}, {N, O, O, O}},
          M4{{O, O, O, ni}, {O, O, i, O}, {O, i, O, O}, {ni, O, O, O}},
          M4{{O, O, I1, O}, {O, O, O, N}, {N, O, O, O}, {O, I1, O, O}}};
}

M4 mul(const M4& a, const M4& b) {
  M4 c(4, std::vector<Scalar>(4));
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k)
      for (int s = 0; s < 4; ++s) c[r][s] += a[r][k] * b[k][s];
  return c;
}

}  // namespace

TEST_CASE("Weyl gammas satisfy the Clifford relations", "[gauge][dirac]") {
  auto g = GammaSet::weyl();
  CHECK(g.clifford_holds());
  auto lit = literal_gammas();
  for (int mu = 0; mu < 4; ++mu) CHECK(g.gamma[mu] == lit[mu]);
  auto bad = g;
  bad.gamma[2][0][3] = -bad.gamma[2][0][3];
  CHECK_FALSE(bad.clifford_holds());
  auto wrong_eta = g;
  wrong_eta.eta = {-1, 1, 1, 1};
  CHECK_FALSE(wrong_eta.clifford_holds());
}

TEST_CASE("Maxwell residual against the component form", "[gauge][maxwell]") {
  auto g = GammaSet::weyl();
  std::mt19937 rng(808);
  auto c = minkowski_domain();
  std::vector<std::size_t> xs = c->coordinates();
  const int eta[4] = {1, -1, -1, -1};
  std::array<int, 4> sign{0, 0, 0, 0};
  int vanished = 0;
  for (int t = 0; t < 200; ++t) {
    auto cfg = FieldConfiguration::zero(c);
    for (int mu = 0; mu < 4; ++mu) cfg.A[mu] = testing::random_poly(rng, c, 0, t % 3 == 0 ? 1 : 2, 2, xs);
    auto r = maxwell_residual(cfg, g);
    // div_nu = sum_mu eta^{mu mu} d_mu (d_mu A_nu - d_nu A_mu)
    for (int nu = 0; nu < 4; ++nu) {
      SuperPoly div(c);
      for (int mu = 0; mu < 4; ++mu)
        div += Scalar(eta[mu]) * cfg.partial(cfg.partial(cfg.A[nu], mu) - cfg.partial(cfg.A[mu], nu), mu);
      auto wedge = r.residual * cfg.dx(nu);
      auto vol = cfg.dx(0) * cfg.dx(1) * cfg.dx(2) * cfg.dx(3);
      if (div.is_zero()) {
        REQUIRE(wedge.is_zero());
        continue;
      }
      int found = 0;
      for (int s : {1, -1})
        if (wedge == Scalar(s) * div * vol) found = s;
      REQUIRE(found != 0);
      if (sign[nu] == 0) sign[nu] = found;
      REQUIRE(sign[nu] == found);
    }
    if (r.residual.is_zero()) ++vanished;
  }
  CHECK(vanished > 0);
}

TEST_CASE("Maxwell current from constant spinors", "[gauge][maxwell]") {
  auto g = GammaSet::weyl();
  auto lit = literal_gammas();
  auto c = minkowski_domain();
  auto cfg = FieldConfiguration::zero(c);
  const Scalar i = Scalar::imaginary_unit();
  std::array<Scalar, 4> psi{Scalar(1), i, Scalar(2), Scalar(0)}, psib{Scalar(0), Scalar(3), -i, Scalar(1)};
  for (int a = 0; a < 4; ++a) {
    cfg.psi[a] = SuperPoly::constant(c, psi[a]);
    cfg.psibar[a] = SuperPoly::constant(c, psib[a]);
  }
  auto r = maxwell_residual(cfg, g);
  DifferentialForm J(c);
  for (int mu = 0; mu < 4; ++mu) {
    Scalar j;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) j += psib[a] * lit[mu][a][b] * psi[b];
    J += j * cfg.dx(mu);
  }
  CHECK(r.current == J);
  CHECK(r.residual == -hodge_star(J, {1, -1, -1, -1}));
  CHECK(r.bilinear[1][2] == SuperPoly::constant(c, psi[1] * psib[2]));
}

TEST_CASE("Dirac residual against matrix arithmetic", "[gauge][dirac]") {
  auto g = GammaSet::weyl();
  auto lit = literal_gammas();
  auto c = minkowski_domain();
  std::mt19937 rng(909);
  std::uniform_int_distribution<int> v(-3, 3);
  const Scalar i = Scalar::imaginary_unit();
  for (int t = 0; t < 50; ++t) {
    // psi = u + w x_k, constant A
    int k = t % 4;
    std::array<Scalar, 4> u, w, A;
    for (int a = 0; a < 4; ++a) {
      u[a] = Scalar(mpq_class(v(rng)), mpq_class(v(rng)));
      w[a] = Scalar(v(rng));
      A[a] = Scalar(v(rng));
    }
    Scalar e = Scalar::ratio(v(rng), 2), m(v(rng));
    auto cfg = FieldConfiguration::zero(c);
    auto xk = SuperPoly::generator(c, "x" + std::to_string(k));
    for (int a = 0; a < 4; ++a) {
      cfg.psi[a] = SuperPoly::constant(c, u[a]) + w[a] * xk;
      cfg.A[a] = SuperPoly::constant(c, A[a]);
    }
    auto r = dirac_residual(cfg, g, e, m);
    M4 slashA(4, std::vector<Scalar>(4));
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) slashA[a][b] += A[mu] * lit[mu][a][b];
    for (int a = 0; a < 4; ++a) {
      Scalar c0, c1;
      for (int b = 0; b < 4; ++b) {
        c0 += i * lit[k][a][b] * w[b] + e * slashA[a][b] * u[b];
        c1 += e * slashA[a][b] * w[b];
      }
      c0 -= m * u[a];
      c1 -= m * w[a];
      REQUIRE(r[a] == SuperPoly::constant(c, c0) + c1 * xk);
    }
  }
}

TEST_CASE("SUSY variations against matrix arithmetic", "[gauge][susy]") {
  auto g = GammaSet::weyl();
  auto lit = literal_gammas();
  auto c = minkowski_domain();
  std::mt19937 rng(1010);
  std::uniform_int_distribution<int> v(-2, 2);
  const Scalar i = Scalar::imaginary_unit(), half = Scalar::ratio(1, 2);
  for (int t = 0; t < 30; ++t) {
    // A_nu = sum_mu a[nu][mu] x_mu, constant spinors
    Scalar a[4][4];
    std::array<Scalar, 4> psi, psib;
    auto cfg = FieldConfiguration::zero(c);
    for (int nu = 0; nu < 4; ++nu) {
      for (int mu = 0; mu < 4; ++mu) {
        a[nu][mu] = Scalar(v(rng));
        cfg.A[nu] += a[nu][mu] * SuperPoly::generator(c, "x" + std::to_string(mu));
      }
      psi[nu] = Scalar(mpq_class(v(rng)), mpq_class(v(rng)));
      psib[nu] = Scalar(v(rng));
      cfg.psi[nu] = SuperPoly::constant(c, psi[nu]);
      cfg.psibar[nu] = SuperPoly::constant(c, psib[nu]);
    }
    M4 S(4, std::vector<Scalar>(4));
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        Scalar F = half * (a[nu][mu] - a[mu][nu]);
        auto p = mul(lit[mu], lit[nu]), q = mul(lit[nu], lit[mu]);
        for (int r = 0; r < 4; ++r)
          for (int s = 0; s < 4; ++s) S[r][s] += half * i * (p[r][s] - q[r][s]) * F;
      }
    auto var = susy_variation(cfg, g);
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s) {
        auto e = "eps" + std::to_string(s), eb = "epsb" + std::to_string(r);
        REQUIRE(var.dpsi[r].partial(e) == SuperPoly::constant(c, S[r][s]));
        REQUIRE(var.dpsibar[s].partial(eb) == SuperPoly::constant(c, -S[r][s]));
      }
    for (int mu = 0; mu < 4; ++mu)
      for (int r = 0; r < 4; ++r) {
        Scalar gp, pg;
        for (int s = 0; s < 4; ++s) {
          gp += lit[mu][r][s] * psi[s];
          pg += psib[s] * lit[mu][s][r];
        }
        REQUIRE(var.dA[mu].partial("epsb" + std::to_string(r)) == SuperPoly::constant(c, i * gp));
        REQUIRE(var.dA[mu].partial("eps" + std::to_string(r)) == SuperPoly::constant(c, -i * pg));
      }
  }
}

TEST_CASE("pure gauge potential has no fermion variation", "[gauge][susy]") {
  auto c = minkowski_domain();
  auto cfg = FieldConfiguration::zero(c);
  auto chi = SuperPoly::generator(c, "x0") * SuperPoly::generator(c, "x2") + SuperPoly::generator(c, "x3").pow(2);
  for (int mu = 0; mu < 4; ++mu) cfg.A[mu] = cfg.partial(chi, mu);
  auto var = susy_variation(cfg, GammaSet::weyl());
  for (int a = 0; a < 4; ++a) {
    CHECK(var.dpsi[a].is_zero());
    CHECK(var.dpsibar[a].is_zero());
  }
  CHECK(maxwell_residual(cfg, GammaSet::weyl()).residual.is_zero());
}

TEST_CASE("physics configuration from JSON", "[gauge][json]") {
  auto j = nlohmann::ordered_json::parse(R"({"A": ["x1", 0, 0, "-x0"], "psi": ["1", "i", 0, 0],
                                           "psibar": [0, 0, "1", "-i"], "charge": "1/2", "mass": 3})");
  auto in = io::physics_from_json(j);
  CHECK(in.charge == Scalar::ratio(1, 2));
  CHECK(in.mass == Scalar(3));
  CHECK(in.cfg.psi[1] == SuperPoly::constant(in.cfg.domain, Scalar::imaginary_unit()));
  CHECK(in.cfg.A[3] == -SuperPoly::generator(in.cfg.domain, "x0"));
  CHECK_THROWS_AS(io::physics_from_json(nlohmann::ordered_json::parse(R"({"A": ["x1"]})")), PreconditionError);
  CHECK_THROWS_AS(io::physics_from_json(nlohmann::ordered_json::parse(R"({"A": ["q", 0, 0, 0]})")), ParseError);
}
