#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rwk/block_lemma.hpp"
#include "rwk/errors.hpp"

#include "support/builders.hpp"
#include "support/oracles.hpp"

#include <map>
#include <random>

using namespace rwk;
using testing::seq;

namespace {

// Independent int64 rendition of the refinement: largest residue class,
// smaller residue on ties, truncated to d^(m-i)(d-1)+1, then the first d.
std::vector<std::size_t> reference_block(const oracle::Mat& values, oracle::i64 d) {
  const std::size_t m = values.size();
  auto width = [&](std::size_t e) {
    oracle::i64 p = 1;
    for (std::size_t i = 0; i < e; ++i) p *= d;
    return static_cast<std::size_t>(p * (d - 1) + 1);
  };
  std::vector<std::size_t> h;
  for (std::size_t t = 0; t < values[0].size(); ++t) h.push_back(t);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::vector<std::size_t>> by_residue(static_cast<std::size_t>(d));
    for (auto t : h) by_residue[static_cast<std::size_t>(oracle::floor_mod(values[i][t], d))].push_back(t);
    std::size_t best = 0;
    for (std::size_t r = 1; r < by_residue.size(); ++r)
      if (by_residue[r].size() > by_residue[best].size()) best = r;
    h = by_residue[best];
    h.resize(width(m - i - 1));
  }
  h.resize(static_cast<std::size_t>(d));
  return h;
}

std::vector<IntSeq> to_family(const oracle::Mat& values) {
  std::vector<IntSeq> out;
  for (const auto& row : values) {
    std::vector<BigInt> xs;
    for (auto x : row) xs.emplace_back(x);
    out.emplace_back(std::move(xs));
  }
  return out;
}

// Every residue pattern of m sequences over one window of width k.
void exhaustive(oracle::i64 d, std::size_t m) {
  const auto k = static_cast<std::size_t>(block_width(BigInt(d), m).to_int64());
  const std::size_t cells = k * m;
  std::vector<oracle::i64> digits(cells, 0);
  std::size_t patterns = 0;
  for (;;) {
    oracle::Mat values(m, oracle::Vec(k));
    for (std::size_t c = 0; c < cells; ++c) values[c / k][c % k] = digits[c];
    const auto family = to_family(values);
    const IndexSet got = find_block_in_window(family, BigInt(d), 1);
    REQUIRE(got.size() == static_cast<std::size_t>(d));
    REQUIRE(is_residue_constant(family, BigInt(d), got));
    REQUIRE(oracle::has_residue_constant_subset(values, d));
    const auto expected = reference_block(values, d);
    for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == expected[i] + 1);
    BlockFamily bf{BigInt(d), m, BigInt(static_cast<long>(k)), {got}};
    REQUIRE(verify_blocks(family, BigInt(d), bf));
    ++patterns;
    std::size_t i = 0;
    while (i < cells && digits[i] == d - 1) digits[i++] = 0;
    if (i == cells) break;
    ++digits[i];
  }
  std::size_t total = 1;
  for (std::size_t c = 0; c < cells; ++c) total *= static_cast<std::size_t>(d);
  CHECK(patterns == total);
}

}  // namespace

TEST_CASE("block_width examples") {
  CHECK(block_width(BigInt(2), 1) == BigInt(3));
  CHECK(block_width(BigInt(1), 1) == BigInt(1));
  CHECK(block_width(BigInt(1), 40) == BigInt(1));
  CHECK(block_width(BigInt(3), 2) == BigInt(19));
  CHECK(block_width(BigInt(10), 30) == pow(BigInt(10), 30) * BigInt(9) + BigInt(1));
  CHECK_THROWS_AS(block_width(BigInt(0), 1), ContractViolation);
  CHECK_THROWS_AS(block_width(BigInt(2), 0), ContractViolation);
}

TEST_CASE("find_block_in_window examples") {
  const std::vector<IntSeq> identity{seq([](long t) { return t; }, 10)};
  CHECK(find_block_in_window(identity, BigInt(2), 1) == IndexSet{1, 3});
  CHECK(find_block_in_window(identity, BigInt(1), 7) == IndexSet{7});

  const std::vector<IntSeq> two{seq([](long t) { return t; }, 5), seq([](long t) { return 2 * t; }, 5)};
  CHECK(find_block_in_window(two, BigInt(2), 1) == IndexSet{1, 3});

  CHECK_THROWS_AS(find_block_in_window(identity, BigInt(2), 0), ContractViolation);
  CHECK_THROWS_AS(find_block_in_window(identity, BigInt(0), 1), ContractViolation);
  try {
    (void)find_block_in_window(identity, BigInt(2), 9);
    FAIL("expected PrefixTooShort");
  } catch (const PrefixTooShort& e) {
    CHECK(e.required_length() == 11);
  }
}

TEST_CASE("build_blocks examples") {
  const std::vector<IntSeq> identity{seq([](long t) { return t; }, 6)};
  const BlockFamily bf = build_blocks(identity, BigInt(2), 2);
  CHECK(bf.k == BigInt(3));
  CHECK(bf.m == 1);
  CHECK(bf.blocks == std::vector<IndexSet>{{1, 3}, {4, 6}});
  CHECK(block_sum(identity[0], bf.blocks[1]) == BigInt(10));
  CHECK(verify_blocks(identity, BigInt(2), bf));

  const std::vector<IntSeq> any{seq({5, -3, 8})};
  CHECK(build_blocks(any, BigInt(1), 3).blocks == std::vector<IndexSet>{{1}, {2}, {3}});

  try {
    (void)build_blocks(identity, BigInt(2), 3);
    FAIL("expected PrefixTooShort");
  } catch (const PrefixTooShort& e) {
    CHECK(e.required_length() == 9);
  }
}

TEST_CASE("two seeded random sequences with d = 3") {
  const std::vector<IntSeq> family{make_sequence(gen::SeededUniform{-1000, 1000, 5}, 38),
                                   make_sequence(gen::SeededUniform{-1000, 1000, 6}, 38)};
  const BlockFamily bf = build_blocks(family, BigInt(3), 2);
  CHECK(bf.k == BigInt(19));
  CHECK(verify_blocks(family, BigInt(3), bf));
  CHECK(bf.blocks[0].back() <= 19);
  CHECK(bf.blocks[1].front() >= 20);
}

TEST_CASE("verify_blocks rejects broken families") {
  const std::vector<IntSeq> identity{seq([](long t) { return t; }, 6)};
  const BigInt d(2);
  CHECK_FALSE(verify_blocks(identity, d, BlockFamily{d, 1, BigInt(3), {{1, 2}}}));
  CHECK_FALSE(verify_blocks(identity, d, BlockFamily{d, 1, BigInt(3), {{4}}}));
  CHECK_FALSE(verify_blocks(identity, d, BlockFamily{d, 1, BigInt(3), {{4, 6}}}));
  CHECK_FALSE(verify_blocks(identity, d, BlockFamily{d, 1, BigInt(4), {{1, 3}}}));
  CHECK_FALSE(verify_blocks(identity, d, BlockFamily{d, 1, BigInt(3), {{3, 1}}}));
  CHECK_FALSE(verify_blocks(identity, d, BlockFamily{d, 1, BigInt(3), {{1, 3}, {1, 3}}}));
  CHECK_FALSE(verify_blocks(identity, d, BlockFamily{BigInt(3), 1, BigInt(3), {{1, 3}}}));
  CHECK_FALSE(verify_blocks(identity, d, BlockFamily{d, 2, BigInt(9), {{1, 3}}}));
  CHECK(verify_blocks(identity, d, BlockFamily{d, 1, BigInt(3), {{1, 3}, {4, 6}}}));
}

TEST_CASE("totality over every residue pattern") {
  SUBCASE("d = 2, m = 1") { exhaustive(2, 1); }
  SUBCASE("d = 2, m = 2") { exhaustive(2, 2); }
  SUBCASE("d = 3, m = 1") { exhaustive(3, 1); }
}

TEST_CASE("d = 3, m = 2 over sampled residue patterns") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    oracle::Mat values(2, oracle::Vec(19));
    for (auto& row : values)
      for (auto& x : row) x = testing::uniform(rng, 0, 2);
    const auto family = to_family(values);
    const IndexSet got = find_block_in_window(family, BigInt(3), 1);
    REQUIRE(is_residue_constant(family, BigInt(3), got));
    const auto expected = reference_block(values, 3);
    for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == expected[i] + 1);
  }
}

TEST_CASE("random families satisfy every block invariant") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const long d = testing::uniform(rng, 1, 4);
    const std::size_t m = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
    const std::size_t count = 4;
    const auto k = static_cast<std::size_t>(block_width(BigInt(d), m).to_int64());
    std::vector<IntSeq> family;
    for (std::size_t i = 0; i < m; ++i)
      family.push_back(seq([&](long) { return testing::uniform(rng, -1000, 1000); }, k * count));
    const BlockFamily bf = build_blocks(family, BigInt(d), count);
    REQUIRE(bf.k == block_width(BigInt(d), m));
    REQUIRE(verify_blocks(family, BigInt(d), bf));
    for (std::size_t n = 0; n < count; ++n) {
      REQUIRE(is_residue_constant(family, BigInt(d), bf.blocks[n]));
      REQUIRE(bf.blocks[n].front() >= n * k + 1);
      REQUIRE(bf.blocks[n].back() <= (n + 1) * k);
      if (n + 1 < count) REQUIRE(bf.blocks[n].back() < bf.blocks[n + 1].front());
    }

    // f + d g keeps every residue, so validity and the construction are unchanged.
    std::vector<IntSeq> shifted;
    for (const auto& f : family) {
      std::vector<BigInt> xs;
      for (const auto& x : f.values()) xs.push_back(x + BigInt(d) * BigInt(testing::uniform(rng, -50, 50)));
      shifted.emplace_back(std::move(xs));
    }
    REQUIRE(verify_blocks(shifted, BigInt(d), bf));
    REQUIRE(build_blocks(shifted, BigInt(d), count) == bf);
  }
}

TEST_CASE("build_blocks is deterministic") {
  const std::vector<IntSeq> family{make_sequence(gen::SeededUniform{-50, 50, 3}, 57),
                                   make_sequence(gen::Polynomial{{1, 0, 1}}, 57)};
  CHECK(build_blocks(family, BigInt(3), 3) == build_blocks(family, BigInt(3), 3));
}
