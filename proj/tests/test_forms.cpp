#include <catch_amalgamated.hpp>

#include <random>

#include "supereds/dsl.hpp"
#include "supereds/forms.hpp"
#include "test_util.hpp"

using namespace supereds;

namespace {

Context jet1() { return make_domain({{"x"}, {"u"}, {"p1"}}); }
Context contact2() { return make_domain({{"t"}, {"p1"}, {"p2"}, {"q1"}, {"q2"}}); }
Context superdom() { return make_domain({{"x"}, {"y"}, {"th", Parity::odd}, {"et", Parity::odd}}); }

SuperPoly P(const Context& c, const char* s) { return dsl::parse_expression(c, s); }

std::vector<std::size_t> coords_and_diffs(const Context& c) {
  std::vector<std::size_t> v;
  for (auto k : c->coordinates()) {
    v.push_back(k);
    v.push_back(c->differential_of(k));
  }
  return v;
}

}  // namespace

TEST_CASE("domain construction flips parity of differentials", "[forms]") {
  auto c = superdom();
  CHECK((*c)[c->index("dx")].parity == Parity::odd);
  CHECK((*c)[c->index("dth")].parity == Parity::even);
  CHECK(c->differential_of(c->index("y")) == c->index("dy"));
}

TEST_CASE("exterior differential examples", "[forms]") {
  auto c = jet1();
  CHECK(exterior_d(P(c, "u - p1*x")) == P(c, "du - p1*dx - x*dp1"));
  CHECK(exterior_d(P(c, "du - p1*dx")) == P(c, "-dp1*dx"));
  CHECK(form_degree(P(c, "du - p1*dx")) == 1u);
  CHECK_FALSE(form_degree(P(c, "du + x")).has_value());
}

TEST_CASE("wedge examples", "[forms]") {
  auto c = make_domain({{"x"}, {"u"}, {"th", Parity::odd}});
  CHECK(wedge(P(c, "dx"), P(c, "dx")).is_zero());
  CHECK(wedge(P(c, "dx"), P(c, "du")) == -wedge(P(c, "du"), P(c, "dx")));
  auto dth = P(c, "dth");
  CHECK_FALSE(wedge(dth, dth).is_zero());
  CHECK(wedge(dth, dth) == P(c, "dth^2"));
}

TEST_CASE("interior product examples", "[forms]") {
  auto c = make_domain({{"t"}, {"q1"}, {"q2"}, {"p1"}, {"p2"}});
  auto alpha = P(c, "dt - p1*dq1 - p2*dq2");
  CHECK(interior(VectorField::partial(c, "t"), alpha) == P(c, "1"));
  CHECK(interior(VectorField::partial(c, "q1"), alpha) == P(c, "-p1"));
  CHECK(interior(VectorField::partial(c, "q1"), P(c, "t^2 + q1")).is_zero());
}

TEST_CASE("Lie derivative examples", "[forms]") {
  auto c = jet1();
  CHECK(lie_derivative(VectorField::partial(c, "x"), P(c, "dx")).is_zero());
  VectorField X(c);
  X.set("x", P(c, "x"));
  CHECK(lie_derivative(X, P(c, "dx")) == P(c, "dx"));
  // On functions L_X is X itself.
  CHECK(lie_derivative(X, P(c, "x^2*u")) == P(c, "2*x^2*u"));
}

TEST_CASE("d^2 = 0, graded Leibniz, Cartan identities on random forms", "[forms][property]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> par(0, 1);
  for (auto c : {jet1(), superdom()}) {
    auto gens = coords_and_diffs(c);
    for (int trial = 0; trial < 250; ++trial) {
      int pa = par(rng), pb = par(rng);
      auto a = testing::random_poly(rng, c, pa, 3, 4, gens);
      auto b = testing::random_poly(rng, c, pb, 3, 4, gens);
      REQUIRE(exterior_d(exterior_d(a)).is_zero());
      // d is an odd derivation for the total parity
      auto lhs = exterior_d(a * b);
      auto rhs = exterior_d(a) * b + (pa ? -(a * exterior_d(b)) : a * exterior_d(b));
      REQUIRE(lhs == rhs);

      // vector field of random parity with polynomial coefficients
      int px = par(rng);
      VectorField X(c);
      const auto& cs = c->coordinates();
      for (std::size_t k = 0; k < cs.size(); ++k) {
        int need = px ^ (c->is_odd(cs[k]) ? 1 : 0);
        X.set_component(k, testing::random_poly(rng, c, need, 2, 2, cs));
      }
      auto La = lie_derivative(X, a);
      // L_X is a derivation of parity p(X)
      auto Lab = lie_derivative(X, a * b);
      auto expect = La * b + ((px & pa) ? -(a * lie_derivative(X, b)) : a * lie_derivative(X, b));
      REQUIRE(Lab == expect);
      // L_X d = (-1)^{p(X)} d L_X
      auto Lda = lie_derivative(X, exterior_d(a));
      REQUIRE(Lda == (px ? -exterior_d(La) : exterior_d(La)));
    }
  }
}

TEST_CASE("graded Leibniz with form degree on even domains", "[forms][property]") {
  auto c = jet1();
  auto gens = coords_and_diffs(c);
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto a = testing::random_poly(rng, c, trial % 2, 3, 3, gens);
    auto b = testing::random_poly(rng, c, (trial / 2) % 2, 3, 3, gens);
    auto da = form_degree(a), db = form_degree(b);
    if (!da || !db) continue;
    ++checked;
    auto rhs = exterior_d(a) * b + ((*da % 2) ? -(a * exterior_d(b)) : a * exterior_d(b));
    REQUIRE(exterior_d(a * b) == rhs);
  }
  CHECK(checked > 50);
}

TEST_CASE("Hodge dual examples", "[forms][hodge]") {
  auto c2 = make_domain({{"x1"}, {"x2"}});
  CHECK(hodge_dual(P(c2, "1"), {2, 0}) == P(c2, "dx1*dx2"));
  CHECK(hodge_dual(P(c2, "dx1"), {2, 0}) == P(c2, "dx2"));
  auto c4 = make_domain({{"x0"}, {"x1"}, {"x2"}, {"x3"}});
  auto s = hodge_dual(P(c4, "dx0"), {4, 1});
  CHECK(s == P(c4, "-dx1*dx2*dx3"));
  CHECK(wedge(P(c4, "dx0"), s) == -volume_form(c4));
  CHECK_THROWS_AS(hodge_dual(P(c2, "x1*dx1"), {2, 0}), PreconditionError);
  auto odd = make_domain({{"x1"}, {"th", Parity::odd}});
  CHECK_THROWS_AS(hodge_dual(P(odd, "dx1"), {2, 0}), PreconditionError);
}

TEST_CASE("Hodge: w ^ *v = g(w,v) vol and ** = (-1)^{k(n-k)+s}", "[forms][hodge][property]") {
  for (auto [n, s] : {std::pair<std::size_t, std::size_t>{2, 0}, {3, 0}, {4, 1}, {3, 2}}) {
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
    for (const auto& w : monos) {
      for (const auto& v : monos)
        if (form_degree(w) == form_degree(v))
          REQUIRE(wedge(w, hodge_dual(v, sig)) == metric_pairing(w, v, g) * vol);
      std::size_t k = *form_degree(w);
      int sign = ((k * (n - k) + s) % 2) ? -1 : 1;
      REQUIRE(hodge_dual(hodge_dual(w, sig), sig) == Scalar(sign) * w);
    }
  }
}

TEST_CASE("de Rham cohomology of small superdomains", "[forms][derham]") {
  using V = std::vector<std::size_t>;
  CHECK(de_rham(make_domain({{"x"}}), 4, 4) == V{1, 0, 0, 0, 0});
  CHECK(de_rham(make_domain({{"a", Parity::odd}, {"b", Parity::odd}}), 3, 3) == V{1, 0, 0, 0});
  CHECK(de_rham(make_domain({{"x"}, {"y"}, {"th", Parity::odd}}), 3, 3) == V{1, 0, 0, 0});
  CHECK(de_rham(make_domain({{"x"}, {"y"}}), 2, 4) == V{1, 0, 0});
}
