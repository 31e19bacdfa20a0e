#include <catch_amalgamated.hpp>

#include <random>

#include "supereds/cohomology.hpp"
#include "supereds/fixtures.hpp"

using namespace supereds;

TEST_CASE("extract_structure on the Minkowski superspace fields", "[liesuper]") {
  auto c = fixtures::minkowski_superspace();
  auto L = extract_structure(fixtures::susy_fields(c), fixtures::susy_names());
  REQUIRE(L.dim() == 8);
  CHECK(L.parities() == std::vector<int>{1, 1, 1, 1, 0, 0, 0, 0});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      CHECK(L.bracket(a, 2 + b) == fixtures::bv({{4 + 2 * a + b, 2}}));
      CHECK(L.bracket(2 + b, a) == fixtures::bv({{4 + 2 * a + b, 2}}));
      CHECK(L.bracket(a, b).empty());
      CHECK(L.bracket(2 + a, 2 + b).empty());
    }
  for (std::size_t t = 4; t < 8; ++t)
    for (std::size_t j = 0; j < 8; ++j) CHECK(L.bracket(t, j).empty());
  // odd-odd block symmetric
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(L.bracket(i, j) == L.bracket(j, i));
  CHECK(verify_superalgebra(L).ok);
}

TEST_CASE("extract_structure small examples", "[liesuper]") {
  auto c = make_plain_context({{"x"}, {"y"}});
  VectorField xdx(c);
  xdx.set("x", SuperPoly::generator(c, "x"));
  auto L = extract_structure({VectorField::partial(c, "x"), xdx});
  CHECK(L.bracket(0, 1) == fixtures::bv({{0, 1}}));
  auto A = extract_structure({VectorField::partial(c, "x"), VectorField::partial(c, "y")});
  CHECK(A.bracket(0, 1).empty());
  VectorField x2(c);
  x2.set("x", SuperPoly::generator(c, "x") * SuperPoly::generator(c, "x"));
  CHECK_THROWS_AS(extract_structure({VectorField::partial(c, "x"), x2}), PreconditionError);
}

TEST_CASE("supermatrix brackets", "[liesuper][supermatrix]") {
  auto f = fixtures::susy_format();
  auto Q0 = SuperMatrix::unit(f, 2, 0), Qb1 = SuperMatrix::unit(f, 4, 2);
  CHECK(Q0.parity() == Parity::odd);
  CHECK(supermatrix_bracket(Q0, Qb1) == SuperMatrix::unit(f, 4, 0));
  CHECK(supermatrix_bracket(Q0, Q0).is_zero());
  SuperMatrix A(f), B(f);
  A(0, 1) = Scalar(1);
  B(1, 0) = Scalar(1);
  SuperMatrix C(f);
  C(0, 0) = Scalar(1);
  C(1, 1) = Scalar(-1);
  CHECK(supermatrix_bracket(A, B) == C);
  CHECK_THROWS_AS(supermatrix_bracket(A, SuperMatrix({0, 1})), PreconditionError);
  SuperMatrix mixed = A + Q0;
  CHECK(mixed.parity() == Parity::mixed);
  CHECK_THROWS_AS(structure_from_matrices({mixed}), ParityError);
}

TEST_CASE("field realization and supermatrix realization agree", "[liesuper][supermatrix]") {
  auto from_fields = extract_structure(fixtures::susy_fields(fixtures::minkowski_superspace()), fixtures::susy_names());
  auto from_mats = structure_from_matrices(fixtures::susy_matrices(), fixtures::susy_names());
  CHECK(from_fields == from_mats);
  auto T = fixtures::susy_with_torus();
  CHECK(verify_superalgebra(T).ok);
  CHECK(torus_diagonalizes(T));
}

TEST_CASE("random supermatrices satisfy super Jacobi", "[liesuper][supermatrix][property]") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> val(-2, 2), par(0, 1);
  auto f = fixtures::susy_format();
  auto random = [&](int p) {
    SuperMatrix M(f);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 5; ++c)
        if (((f[r] + f[c]) & 1) == p) M(r, c) = Scalar(val(rng));
    return M;
  };
  for (int t = 0; t < 200; ++t) {
    int pa = par(rng), pb = par(rng);
    auto A = random(pa), B = random(pb), C = random(par(rng));
    auto lhs = supermatrix_bracket(A, supermatrix_bracket(B, C));
    auto rhs = supermatrix_bracket(supermatrix_bracket(A, B), C);
    auto t2 = supermatrix_bracket(B, supermatrix_bracket(A, C));
    rhs = (pa && pb) ? rhs - t2 : rhs + t2;
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("structure constant JSON round trip", "[liesuper][json]") {
  for (auto L : {fixtures::sl2(), fixtures::osp12(), fixtures::susy_with_torus(), fixtures::nilpotent(4)}) {
    auto j = io::to_json(L);
    auto M = io::algebra_from_json(j);
    CHECK(M == L);
    CHECK(M.weights() == L.weights());
    CHECK(M.torus() == L.torus());
  }
  auto j = io::to_json(fixtures::sl2());
  j["brackets"].push_back({2, 0, {{1, "1"}}});
  CHECK_THROWS_AS(io::algebra_from_json(j), PreconditionError);
  auto k = nlohmann::ordered_json::parse(R"({"dim": 2, "parities": [0, 0], "weights": [1, 2],
                                             "brackets": [[0, 1, [[1, "3/2"]]]]})");
  auto L = io::algebra_from_json(k);
  CHECK(L.coefficient(1, 0, 1) == Scalar::ratio(-3, 2));
  CHECK(L.weights() == std::vector<std::vector<long>>{{1}, {2}});
}
