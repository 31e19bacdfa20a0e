#include <catch_amalgamated.hpp>

#include "supereds/distributions.hpp"
#include "supereds/dsl.hpp"

using namespace supereds;

namespace {

PfaffSystem contact(std::size_t n) {
  std::vector<CoordinateSpec> cs{{"t"}};
  for (std::size_t i = 1; i <= n; ++i) cs.push_back({"p" + std::to_string(i)});
  for (std::size_t i = 1; i <= n; ++i) cs.push_back({"q" + std::to_string(i)});
  auto c = make_domain(cs);
  std::string a = "dt";
  for (std::size_t i = 1; i <= n; ++i) a += " - p" + std::to_string(i) + "*dq" + std::to_string(i);
  return {c, {dsl::parse_expression(c, a)}};
}

PfaffSystem odd_contact(std::size_t n) {
  std::vector<CoordinateSpec> cs{{"tau", Parity::odd}};
  for (std::size_t i = 1; i <= n; ++i) cs.push_back({"pi" + std::to_string(i), Parity::odd});
  for (std::size_t i = 1; i <= n; ++i) cs.push_back({"q" + std::to_string(i)});
  auto c = make_domain(cs);
  std::string a = "dtau";
  for (std::size_t i = 1; i <= n; ++i) a += " - pi" + std::to_string(i) + "*dq" + std::to_string(i);
  return {c, {dsl::parse_expression(c, a)}};
}

SuperPoly P(const Context& c, const char* s) { return dsl::parse_expression(c, s); }

void check_annihilates(const PfaffSystem& S, const DistributionBasis& D) {
  for (const auto& X : D.fields)
    for (const auto& w : S.forms) REQUIRE(interior(X, w).is_zero());
}

}  // namespace

TEST_CASE("annihilator of the contact form", "[distributions]") {
  for (std::size_t n : {1u, 2u, 3u}) {
    auto S = contact(n);
    auto D = annihilator(S);
    REQUIRE(D.fields.size() == 2 * n);
    check_annihilates(S, D);
    for (std::size_t i = 1; i <= n; ++i) {
      auto pi = "p" + std::to_string(i), qi = "q" + std::to_string(i);
      CHECK(D.fields[i - 1] == VectorField::partial(S.domain, pi));
      auto Y = VectorField::partial(S.domain, qi);
      Y.set("t", P(S.domain, pi.c_str()));
      CHECK(D.fields[n + i - 1] == Y);
    }
  }
}

TEST_CASE("annihilator of the odd contact form", "[distributions]") {
  auto S = odd_contact(2);
  auto D = annihilator(S);
  REQUIRE(D.fields.size() == 4);
  check_annihilates(S, D);
  CHECK(D.fields[0] == VectorField::partial(S.domain, "pi1"));
  CHECK(D.fields[0].parity() == Parity::odd);
  // With i_X a left derivation the kernel is d/dq + (-pi) d/dtau.
  auto Y = VectorField::partial(S.domain, "q1");
  Y.set("tau", P(S.domain, "-pi1"));
  CHECK(D.fields[2] == Y);
  CHECK(D.fields[2].parity() == Parity::even);
}

TEST_CASE("trivial and degenerate Pfaff systems", "[distributions]") {
  auto c = make_domain({{"x"}, {"y"}});
  auto D = annihilator({c, {P(c, "dx")}});
  REQUIRE(D.fields.size() == 1);
  CHECK(D.fields[0] == VectorField::partial(c, "y"));
  auto E = annihilator({c, {P(c, "dx"), P(c, "2*dx")}});
  CHECK(E.fields.size() == 1);
  CHECK_THROWS_AS(annihilator({c, {P(c, "x*dx + y*dy")}}), PreconditionError);
  CHECK_THROWS_AS(annihilator({c, {P(c, "dx*dy")}}), PreconditionError);
}

TEST_CASE("Frobenius: contact distributions are not integrable", "[distributions][frobenius]") {
  for (std::size_t n : {1u, 2u}) {
    auto S = contact(n);
    auto v = frobenius_test(annihilator(S));
    REQUIRE_FALSE(v.integrable);
    CHECK(v.exact);
    CHECK(v.first == 0);
    CHECK(v.second == n);
    CHECK(v.bracket == VectorField::partial(S.domain, "t"));
    CHECK(v.residual == VectorField::partial(S.domain, "t"));
    // The witness fails the span test independently: d/dt is not annihilated.
    CHECK_FALSE(interior(v.residual, S.forms[0]).is_zero());
  }
  auto S = odd_contact(1);
  auto v = frobenius_test(annihilator(S));
  REQUIRE_FALSE(v.integrable);
  CHECK(v.bracket == -VectorField::partial(S.domain, "tau"));
  CHECK_FALSE(interior(v.residual, S.forms[0]).is_zero());
}

TEST_CASE("Frobenius: coordinate planes and foliations are integrable", "[distributions][frobenius]") {
  auto c = make_domain({{"x"}, {"y"}, {"z"}});
  DistributionBasis plane{c, {VectorField::partial(c, "x"), VectorField::partial(c, "y")}};
  CHECK(frobenius_test(plane).integrable);
  auto D = annihilator({c, {P(c, "dz - y*dx - x*dy")}});
  CHECK(frobenius_test(D).integrable);
  auto sup = make_domain({{"x"}, {"th", Parity::odd}, {"z"}});
  DistributionBasis odd_plane{sup, {VectorField::partial(sup, "x"), VectorField::partial(sup, "th")}};
  CHECK(frobenius_test(odd_plane).integrable);
}

TEST_CASE("Frobenius jet fallback without constant pivots", "[distributions][frobenius]") {
  auto c = make_domain({{"x"}, {"y"}, {"z"}});
  VectorField X(c), Y(c);
  X.set("x", P(c, "1 + y"));
  Y.set("y", P(c, "x"));
  Y.set("z", P(c, "x"));
  DistributionBasis D{c, {X, Y}};
  auto v = frobenius_test(D);
  CHECK_FALSE(v.exact);
  CHECK_FALSE(v.integrable);
}

TEST_CASE("growth vectors", "[distributions][growth]") {
  for (std::size_t n : {1u, 2u, 3u})
    CHECK(growth_vector(annihilator(contact(n)), 5) == std::vector<std::size_t>{2 * n, 2 * n + 1});
  auto c = make_domain({{"x"}, {"y"}, {"z"}, {"w"}});
  VectorField X2 = VectorField::partial(c, "y");
  X2.set("z", P(c, "x"));
  X2.set("w", P(c, "1/2*x^2"));
  DistributionBasis engel{c, {VectorField::partial(c, "x"), X2}};
  CHECK(growth_vector(engel, 5) == std::vector<std::size_t>{2, 3, 4});
  CHECK(growth_vector(engel, 2) == std::vector<std::size_t>{2, 3});
  DistributionBasis plane{c, {VectorField::partial(c, "x"), VectorField::partial(c, "y")}};
  CHECK(growth_vector(plane, 5) == std::vector<std::size_t>{2});
  CHECK(growth_vector(annihilator(odd_contact(2)), 5) == std::vector<std::size_t>{4, 5});
}
