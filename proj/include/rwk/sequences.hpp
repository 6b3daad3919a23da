#pragma once

/**
 * @file sequences.hpp
 * @brief Finite prefixes of integer and integer-vector sequences.
 *
 * Sequences are indexed from 1. Reading past the stored prefix throws
 * PrefixTooShort with the length that would have sufficed.
 */

#include "rwk/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <span>
#include <variant>
#include <vector>

namespace rwk {

/// Sorted, duplicate-free set of 1-based indices.
using IndexSet = std::vector<std::size_t>;

class IntSeq {
 public:
  explicit IntSeq(std::vector<BigInt> values);

  std::size_t length() const { return values_.size(); }
  /// t in 1..length().
  const BigInt& operator()(std::size_t t) const;
  std::span<const BigInt> values() const { return values_; }

  friend bool operator==(const IntSeq&, const IntSeq&) = default;

 private:
  std::vector<BigInt> values_;
};

class VecSeq {
 public:
  explicit VecSeq(std::vector<IntVector> values);

  std::size_t length() const { return values_.size(); }
  Eigen::Index dimension() const { return values_.front().size(); }
  const IntVector& operator()(std::size_t t) const;
  std::span<const IntVector> values() const { return values_; }

  friend bool operator==(const VecSeq& a, const VecSeq& b) { return a.values_ == b.values_; }

 private:
  std::vector<IntVector> values_;
};

/// Nonempty list of vector sequences sharing dimension and prefix length.
class SeqFamily {
 public:
  explicit SeqFamily(std::vector<VecSeq> members);

  std::size_t size() const { return members_.size(); }
  Eigen::Index dimension() const { return members_.front().dimension(); }
  std::size_t length() const { return members_.front().length(); }
  const VecSeq& operator[](std::size_t i) const { return members_[i]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<VecSeq> members_;
};

/// Coordinate i (1-based) of a vector sequence.
IntSeq project(const VecSeq& f, std::size_t i);

/// All m*v coordinate projections, member-major, duplicates kept.
std::vector<IntSeq> projection_family(const SeqFamily& family);

BigInt block_sum(const IntSeq& f, std::span<const std::size_t> indices);
IntVector block_sum(const VecSeq& f, std::span<const std::size_t> indices);

namespace gen {
struct Constant {
  BigInt value;
};
/// start, start + step, start + 2 step, ...
struct Arithmetic {
  BigInt start;
  BigInt step;
};
/// f(t) = sum_i coefficients[i] * t^i
struct Polynomial {
  std::vector<BigInt> coefficients;
};
struct Table {
  std::vector<BigInt> values;
};
/// Uniform integers in [lo, hi] from a 64-bit Mersenne twister.
struct SeededUniform {
  BigInt lo;
  BigInt hi;
  std::uint64_t seed = 0;
};
}  // namespace gen

using Generator = std::variant<gen::Constant, gen::Arithmetic, gen::Polynomial, gen::Table, gen::SeededUniform>;

/// Throws ConfigError for malformed descriptors (empty range, short table,
/// zero length).
IntSeq make_sequence(const Generator& kind, std::size_t length);
/// One generator per coordinate.
VecSeq make_sequence(std::span<const Generator> coordinates, std::size_t length);

enum class GeneratorKind { kConstant, kArithmetic, kPolynomial, kUniform };

/// "constant", "arithmetic", "polynomial" or "uniform"; ConfigError otherwise.
GeneratorKind parse_generator_kind(std::string_view name);

/// Draws a kind uniformly from `kinds`, then its parameters from [lo, hi]:
/// constant value, arithmetic start and step, polynomial coefficients of
/// degree <= 2, or a uniform range [lo, hi] with a fresh 64-bit seed.
Generator sample_generator(std::span<const GeneratorKind> kinds, const BigInt& lo, const BigInt& hi,
                           std::mt19937_64& rng);

}  // namespace rwk
