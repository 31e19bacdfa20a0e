#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "supereds/cohomology.hpp"
#include "supereds/fixtures.hpp"

using namespace supereds;
using V = std::vector<std::size_t>;

namespace {

// Number of permutations of k letters with j inversions (Kostant: these
// are the Betti numbers of the nilradical of sl(k)).
V mahonian(std::size_t k, std::size_t jmax) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  V count(jmax + 1, 0);
  do {
    std::size_t inv = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) inv += perm[a] > perm[b];
    if (inv <= jmax) ++count[inv];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return k > n ? 0 : r;
}

std::vector<std::pair<std::string, LieSuperAlgebra>> all_fixtures() {
  return {{"sl2", fixtures::sl2()},           {"gl2", fixtures::gl2()},
          {"heis3", fixtures::heis3()},       {"abelian3", fixtures::abelian(3)},
          {"n4", fixtures::nilpotent(4)},     {"osp12", fixtures::osp12()},
          {"susy", fixtures::susy_with_torus()}};
}

}  // namespace

TEST_CASE("fixtures are Lie superalgebras", "[liesuper]") {
  for (const auto& [name, L] : all_fixtures()) {
    INFO(name);
    auto v = verify_superalgebra(L);
    CHECK(v.ok);
    if (!L.torus().empty()) CHECK(torus_diagonalizes(L));
    CHECK(weights_grade(L));
  }
}

TEST_CASE("verify_superalgebra reports a perturbed table", "[liesuper]") {
  auto L = fixtures::sl2();
  L.set_bracket(0, 1, fixtures::bv({{0, -2}}));
  auto v = verify_superalgebra(L);
  CHECK_FALSE(v.ok);
  CHECK(v.violation.find("Jacobi") != std::string::npos);
  auto M = fixtures::sl2();
  M.set_raw(0, 1, fixtures::bv({{0, 3}}));
  CHECK(verify_superalgebra(M).violation.find("antisymmetry") != std::string::npos);
  auto P = fixtures::sl2();
  P.set_weights({{-2}, {0}, {3}});
  CHECK_FALSE(torus_diagonalizes(P));
}

TEST_CASE("cochain dimensions match the counting formula", "[cohomology]") {
  for (const auto& [name, L] : all_fixtures())
    for (auto mod : {CEModule::trivial, CEModule::adjoint})
      for (std::size_t i = 0; i <= 3; ++i) {
        ce::Complex C(L, mod);
        REQUIRE(C.basis(i).size() == cochain_dimension(L, mod, i));
      }
}

TEST_CASE("d^2 = 0 on every fixture and module", "[cohomology]") {
  for (const auto& [name, L] : all_fixtures())
    for (auto mod : {CEModule::trivial, CEModule::adjoint}) {
      INFO(name << " " << to_string(mod));
      CHECK(ce_d_squared_zero(L, mod, 3));
    }
}

TEST_CASE("classical cohomology anchors", "[cohomology]") {
  CHECK(ce_cohomology(fixtures::sl2(), CEModule::trivial, 3) == V{1, 0, 0, 1});
  CHECK(ce_cohomology(fixtures::sl2(), CEModule::adjoint, 3) == V{0, 0, 0, 0});
  CHECK(ce_cohomology(fixtures::gl2(), CEModule::trivial, 4) == V{1, 1, 0, 1, 1});
  CHECK(ce_cohomology(fixtures::heis3(), CEModule::trivial, 3) == V{1, 2, 2, 1});
  for (std::size_t n = 1; n <= 6; ++n) {
    V want;
    for (std::size_t i = 0; i <= n; ++i) want.push_back(binom(n, i));
    CHECK(ce_cohomology(fixtures::abelian(n), CEModule::trivial, n) == want);
  }
  // Whitehead: semisimple, so H^1 = H^2 = 0 for the adjoint module too.
  CHECK(ce_cohomology(fixtures::osp12(), CEModule::trivial, 3) == V{1, 0, 0, 1});
}

TEST_CASE("sl(2) weight-zero subcomplex", "[cohomology][weighted]") {
  auto r = ce_cohomology_weighted_report(fixtures::sl2(), CEModule::trivial, 3);
  CHECK(r.toral);
  CHECK(r.blocks == 1);
  CHECK(r.total.cochains == V{1, 1, 1, 1, 0});
  CHECK(r.total.h == V{1, 0, 0, 1});
}

TEST_CASE("weighted equals full on graded fixtures", "[cohomology][weighted]") {
  for (const auto& [name, L] : all_fixtures())
    for (auto mod : {CEModule::trivial, CEModule::adjoint}) {
      INFO(name << " " << to_string(mod));
      CHECK(ce_cohomology_weighted(L, mod, 3) == ce_cohomology(L, mod, 3));
    }
}

TEST_CASE("weighted mode rejects bad gradings", "[cohomology][weighted]") {
  auto L = fixtures::sl2();
  L.set_weights({{-2}, {0}, {1}});
  CHECK_THROWS_AS(ce_cohomology_weighted(L, CEModule::trivial, 2), PreconditionError);
  L.set_torus({});
  CHECK_THROWS_AS(ce_cohomology_weighted(L, CEModule::trivial, 2), PreconditionError);
  CHECK_THROWS_AS(ce_cohomology_weighted(fixtures::heis3().dim() ? LieSuperAlgebra({0}) : L, CEModule::trivial, 1),
                  PreconditionError);
}

TEST_CASE("nilpotent n(k): Betti numbers are Mahonian", "[cohomology][bench]") {
  for (std::size_t k = 4; k <= 6; ++k) {
    INFO("k = " << k);
    CHECK(ce_cohomology_weighted(fixtures::nilpotent(k), CEModule::trivial, 3) == mahonian(k, 3));
  }
  CHECK(mahonian(4, 3) == V{1, 3, 5, 6});
  CHECK(mahonian(7, 3) == V{1, 6, 20, 49});
}

TEST_CASE("benchmark harness", "[cohomology][bench]") {
  CHECK(benchmark_cohomology({}, 3).empty());
  auto rep = benchmark_cohomology({{"sl2", fixtures::sl2()}, {"gl2", fixtures::gl2()}, {"heis3", fixtures::heis3()}}, 3);
  REQUIRE(rep.size() == 3);
  for (const auto& r : rep) {
    CHECK(r.agree);
    CHECK(r.weighted_seconds.has_value());
    CHECK(*r.weighted_cochains <= std::accumulate(r.cochains.begin(), r.cochains.end(), std::size_t{0}));
  }
}
