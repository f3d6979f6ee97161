#include <doctest.h>

#include <random>

#include "harmonic_groups/errors.hpp"
#include "harmonic_groups/rational.hpp"
#include "test_support.hpp"

using namespace hg;
using hg::test::q;

TEST_SUITE("rational") {

TEST_CASE("parse and print round trip") {
  CHECK(parse_rational("3") == q(3));
  CHECK(parse_rational("-7/14") == q(-1, 2));
  CHECK(to_string(q(6, 4)) == "3/2");
  CHECK(to_string(q(-4, 2)) == "-2");
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("0.5"), ValidationError);
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
}

TEST_CASE("norms") {
  const RationalVector v{q(-3, 2), q(1), q(0)};
  CHECK(sup_norm(v) == q(3, 2));
  CHECK(squared_norm(v) == q(13, 4));
  CHECK(sup_norm({}) == 0);
}

TEST_CASE("matrix algebra") {
  const auto m = RationalMatrix::from_integers({{2, 1}, {1, 1}});
  const auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(m * *inv == RationalMatrix::identity(2));
  CHECK(m.operator_norm_inf() == 3);
  CHECK(m.transpose()(0, 1) == 1);
  CHECK_FALSE(inverse(RationalMatrix::from_integers({{1, 2}, {2, 4}})).has_value());
  CHECK(rank(RationalMatrix::from_integers({{1, 2}, {2, 4}})) == 1);
  const auto ns = null_space(RationalMatrix::from_integers({{1, 2}, {2, 4}}));
  REQUIRE(ns.size() == 1);
  CHECK(RationalMatrix::from_integers({{1, 2}}) * ns[0] == RationalVector{q(0)});
}

TEST_CASE("zero-sized shapes") {
  const RationalMatrix a(2, 0);
  CHECK(a * RationalVector{} == RationalVector{q(0), q(0)});
  const RationalMatrix b(0, 3);
  CHECK((b * RationalVector{q(1), q(2), q(3)}).empty());
}

TEST_CASE("solve agrees with inverse on random invertible systems") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(-5, 5);
  int tried = 0;
  while (tried < 50) {
    RationalMatrix m(3, 3), b(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = d(rng);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = d(rng);
    const auto inv = inverse(m);
    if (!inv) continue;
    ++tried;
    const auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(*x == *inv * b);
    CHECK(m * *x == b);
  }
}

TEST_CASE("inconsistent system") {
  const auto a = RationalMatrix::from_integers({{1}, {1}});
  const auto b = RationalMatrix::from_integers({{1}, {2}});
  CHECK_FALSE(solve(a, b).has_value());
}

}
