#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rwk/errors.hpp"
#include "rwk/exact_linalg.hpp"

#include "support/builders.hpp"

#include <random>

using namespace rwk;
using testing::ints;
using testing::ivec;
using testing::rat;

TEST_CASE("integers beyond 64 bits stay exact") {
  const BigInt two_100 = pow(BigInt(2), 100);
  CHECK(two_100.to_string() == "1267650600228229401496703205376");
  CHECK_FALSE(two_100.fits_int64());
  CHECK_THROWS_AS(two_100.to_int64(), std::overflow_error);
  CHECK(two_100 * two_100 == pow(BigInt(2), 200));
  CHECK(exact_div(pow(BigInt(6), 40), pow(BigInt(3), 40)) == pow(BigInt(2), 40));
}

TEST_CASE("floor division and modulus round toward negative infinity") {
  CHECK(floor_div(BigInt(7), BigInt(2)) == BigInt(3));
  CHECK(floor_div(BigInt(-7), BigInt(2)) == BigInt(-4));
  CHECK(floor_div(BigInt(7), BigInt(-2)) == BigInt(-4));
  CHECK(mod(BigInt(-7), BigInt(3)) == BigInt(2));
  CHECK(mod(BigInt(7), BigInt(3)) == BigInt(1));
  CHECK(gcd(BigInt(-12), BigInt(18)) == BigInt(6));
  CHECK(lcm(BigInt(4), BigInt(6)) == BigInt(12));
  CHECK(divides(BigInt(3), BigInt(-9)));
  CHECK_FALSE(divides(BigInt(2), BigInt(7)));
}

TEST_CASE("big integer parsing") {
  CHECK(BigInt::parse("-0042") == BigInt(-42));
  CHECK(BigInt::parse("+7") == BigInt(7));
  CHECK_THROWS_AS(BigInt::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(BigInt::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(BigInt::parse("--1"), std::invalid_argument);
}

TEST_CASE("rationals are canonical") {
  const Rational half(BigInt(2), BigInt(4));
  CHECK(half.numerator() == BigInt(1));
  CHECK(half.denominator() == BigInt(2));
  const Rational neg(BigInt(3), BigInt(-6));
  CHECK(neg.numerator() == BigInt(-1));
  CHECK(neg.denominator() == BigInt(2));
  CHECK(Rational::parse("6/-4") == Rational::parse("-3/2"));
  CHECK(Rational::parse("0/5").denominator() == BigInt(1));
  CHECK(Rational::parse("1/2") + Rational::parse("1/2") == Rational(1));
  CHECK((Rational::parse("1/3") * Rational(3)).is_integer());
  CHECK(Rational::parse("-7/2").to_string() == "-7/2");
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/2").to_integer(), std::domain_error);
}

TEST_CASE("clear_denominators examples") {
  const auto a = clear_denominators(rat({{"1/2", "1/2"}}));
  CHECK(a.d == BigInt(2));
  CHECK(a.scaled == ints({{1, 1}}));

  const auto b = clear_denominators(rat({{"1", "0"}, {"0", "1"}, {"1", "1"}}));
  CHECK(b.d == BigInt(1));
  CHECK(b.scaled == ints({{1, 0}, {0, 1}, {1, 1}}));

  const auto c = clear_denominators(rat({{"1/2", "1/3"}}));
  CHECK(c.d == BigInt(6));
  CHECK(c.scaled == ints({{3, 2}}));
}

TEST_CASE("clear_denominators returns the least clearing factor") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    RatMatrix a(2, 3);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 3; ++j)
        a(i, j) = Rational(BigInt(testing::uniform(rng, -9, 9)), BigInt(testing::uniform(rng, 1, 12)));
    const auto cleared = clear_denominators(a);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 3; ++j) REQUIRE(Rational(cleared.scaled(i, j)) == Rational(cleared.d) * a(i, j));
    // No proper divisor d / p clears every entry.
    const long d = cleared.d.to_int64();
    for (long p = 2; p <= d; ++p) {
      if (d % p != 0) continue;
      bool all_integral = true;
      for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) all_integral = all_integral && (Rational(d / p) * a(i, j)).is_integer();
      REQUIRE_FALSE(all_integral);
    }
  }
}

TEST_CASE("smith_normal_form examples") {
  SUBCASE("1 x 1 identity") {
    const auto snf = smith_normal_form(ints({{1}}));
    CHECK(snf.U == ints({{1}}));
    CHECK(snf.S == ints({{1}}));
    CHECK(snf.V == ints({{1}}));
    CHECK(snf.rank == 1);
  }
  SUBCASE("diag(2, 3) becomes diag(1, 6)") {
    const IntMatrix m = ints({{2, 0}, {0, 3}});
    const auto snf = smith_normal_form(m);
    CHECK(snf.S == ints({{1, 0}, {0, 6}}));
    CHECK(satisfies_snf_invariants(m, snf));
    CHECK(oracle::smith_diagonal({{2, 0}, {0, 3}}) == oracle::Vec{1, 6});
  }
  SUBCASE("zero matrix") {
    const IntMatrix m = ints({{0, 0}, {0, 0}});
    const auto snf = smith_normal_form(m);
    CHECK(snf.S == ints({{0, 0}, {0, 0}}));
    CHECK(snf.rank == 0);
    CHECK(satisfies_snf_invariants(m, snf));
  }
}

TEST_CASE("smith_normal_form is deterministic") {
  const IntMatrix m = ints({{4, 6, 2}, {2, -8, 10}, {6, 0, 12}});
  const auto a = smith_normal_form(m);
  const auto b = smith_normal_form(m);
  CHECK(a.U == b.U);
  CHECK(a.S == b.S);
  CHECK(a.V == b.V);
}

TEST_CASE("smith_normal_form invariants and determinant divisors on random matrices") {
  std::mt19937_64 rng(5);
  const std::pair<Eigen::Index, Eigen::Index> shapes[] = {{3, 3}, {2, 4}, {4, 2}, {1, 3}, {3, 1}};
  for (int trial = 0; trial < 150; ++trial) {
    const auto [rows, cols] = shapes[trial % 5];
    const IntMatrix m = testing::random_int_matrix(rng, rows, cols, -6, 6);
    const auto snf = smith_normal_form(m);
    REQUIRE(satisfies_snf_invariants(m, snf));
    REQUIRE(IntMatrix(snf.U * m * snf.V) == snf.S);
    REQUIRE(abs(determinant(snf.U)) == BigInt(1));
    REQUIRE(abs(determinant(snf.V)) == BigInt(1));
    const oracle::Vec diag = oracle::smith_diagonal(testing::to_oracle(m));
    for (std::size_t i = 0; i < diag.size(); ++i)
      REQUIRE(snf.S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) == BigInt(static_cast<long>(diag[i])));
  }
}

TEST_CASE("satisfies_snf_invariants rejects tampered decompositions") {
  const IntMatrix m = ints({{2, 4}, {6, 8}});
  auto snf = smith_normal_form(m);
  REQUIRE(satisfies_snf_invariants(m, snf));
  auto bad_s = snf;
  bad_s.S(0, 1) = BigInt(1);
  CHECK_FALSE(satisfies_snf_invariants(m, bad_s));
  auto bad_u = snf;
  bad_u.U *= BigInt(2);
  CHECK_FALSE(satisfies_snf_invariants(m, bad_u));
  auto bad_chain = snf;
  bad_chain.S(1, 1) = snf.S(1, 1) + BigInt(1);
  CHECK_FALSE(satisfies_snf_invariants(m, bad_chain));
}

TEST_CASE("solve_linear_diophantine examples") {
  const auto x = solve_linear_diophantine(ints({{1, 1}, {1, -1}}), ivec({3, 3}));
  REQUIRE(x);
  CHECK(*x == ivec({3, 0}));
  CHECK(oracle::box_solve({{1, 1}, {1, -1}}, {3, 3}, 5).has_value());

  CHECK_FALSE(solve_linear_diophantine(ints({{2}}), ivec({1})));

  CHECK_FALSE(solve_linear_diophantine(ints({{1, 0}, {0, 1}, {1, 1}}), ivec({1, 1, 1})));
  CHECK_FALSE(oracle::box_solve({{1, 0}, {0, 1}, {1, 1}}, {1, 1, 1}, 10).has_value());
}

TEST_CASE("solve_linear_diophantine rejects mismatched dimensions") {
  CHECK_THROWS_AS(solve_linear_diophantine(ints({{1, 2}}), ivec({1, 2})), ContractViolation);
}

TEST_CASE("solve_linear_diophantine agrees with box search") {
  std::mt19937_64 rng(17);
  int solvable = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const IntMatrix m = testing::random_int_matrix(rng, 2, 3, -4, 4);
    const IntVector b = testing::random_int_matrix(rng, 2, 1, -8, 8).col(0);
    const auto x = solve_linear_diophantine(m, b);
    const auto brute = oracle::box_solve(testing::to_oracle(m), testing::to_oracle(b), 12);
    if (x) {
      ++solvable;
      REQUIRE(IntVector(m * *x) == b);
    }
    if (brute) REQUIRE(x.has_value());
  }
  CHECK(solvable > 0);
}

TEST_CASE("solve_constant_image examples") {
  const auto x = solve_constant_image(rat({{"1", "1"}, {"1", "-1"}}), BigInt(3));
  REQUIRE(x);
  CHECK(*x == ivec({3, 0}));
  CHECK_FALSE(solve_constant_image(rat({{"1", "0"}, {"0", "1"}, {"1", "1"}}), BigInt(1)));
  const auto half = solve_constant_image(rat({{"1/2", "1/2"}}), BigInt(1));
  REQUIRE(half);
  CHECK(*half == ivec({1, 1}));
  CHECK(multiply(rat({{"1/2", "1/2"}}), *half) == constant_vector(1, Rational(1)));
}

TEST_CASE("has_constant_image_property examples") {
  CHECK(has_constant_image_property(rat({{"1", "1"}, {"1", "-1"}})));
  CHECK_FALSE(has_constant_image_property(rat({{"1", "0"}, {"0", "1"}, {"1", "1"}})));
  CHECK(has_constant_image_property(rat({{"1"}})));
  CHECK_FALSE(has_constant_image_property(rat({{"2"}})));
  CHECK_FALSE(has_constant_image_property(rat({{"2/3"}, {"4/6"}})));
  CHECK(has_constant_image_property(rat({{"1/3", "1/3", "1/3"}})));
}

TEST_CASE("constant-image witnesses scale linearly") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    RatMatrix a(3, 2);
    for (Eigen::Index i = 0; i < 3; ++i) {
      a(i, 0) = Rational(1);
      a(i, 1) = Rational(BigInt(testing::uniform(rng, -5, 5)), BigInt(testing::uniform(rng, 1, 4)));
    }
    const auto x1 = solve_constant_image(a, BigInt(1));
    REQUIRE(x1);
    for (long value = -5; value <= 5; ++value) {
      const IntVector scaled = *x1 * BigInt(value);
      REQUIRE(multiply(a, scaled) == constant_vector(3, Rational(value)));
    }
  }
}

TEST_CASE("determinant works over integers and rationals") {
  CHECK(determinant(ints({{1, 2}, {3, 4}})) == BigInt(-2));
  CHECK(determinant(ints({{0, 1}, {1, 0}})) == BigInt(-1));
  CHECK(determinant(ints({{0, 0}, {0, 5}})) == BigInt(0));
  CHECK(determinant(rat({{"1/2", "1/3"}, {"1/4", "1/5"}})) == Rational::parse("1/60"));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix m = testing::random_int_matrix(rng, 4, 4, -7, 7);
    REQUIRE(determinant(m) == BigInt(static_cast<long>(oracle::det(testing::to_oracle(m)))));
  }
}
