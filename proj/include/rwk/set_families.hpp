#pragma once

/**
 * @file set_families.hpp
 * @brief Finitely presented subsets of Z and Z^v.
 *
 * Sets are immutable expression trees with shared nodes; copying a set is
 * cheap. Membership is exact and always terminates.
 */

#include "rwk/exact_linalg.hpp"
#include "rwk/sequences.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace rwk {

inline constexpr std::uint64_t kDefaultMaxPoints = 10'000'000;

namespace zset {
struct Congruence;
struct Union;
struct Intersection;
struct Complement;
struct PeriodicIntervals;
struct FiniteSums;
struct Explicit;
struct Shift;
}  // namespace zset

/// A subset of Z.
class ZSet {
 public:
  struct Node;

  explicit ZSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

namespace zset {
/// {x : x = residue mod modulus}; residue stored reduced.
struct Congruence {
  BigInt modulus;
  BigInt residue;
};
struct Union {
  std::vector<ZSet> parts;
};
struct Intersection {
  std::vector<ZSet> parts;
};
struct Complement {
  ZSet inner;
};
/// {x : lo <= x mod period <= hi for some [lo, hi] in intervals}.
struct PeriodicIntervals {
  BigInt period;
  std::vector<std::pair<BigInt, BigInt>> intervals;
};
/// Sums over nonempty H subset {1..L} with |H| <= depth of generator values.
struct FiniteSums {
  IntSeq generator;
  std::size_t depth;
  std::vector<BigInt> sums;  ///< sorted, precomputed
};
struct Explicit {
  std::vector<BigInt> elements;  ///< sorted, unique
};
/// offset + inner
struct Shift {
  BigInt offset;
  ZSet inner;
};
}  // namespace zset

struct ZSet::Node {
  std::variant<zset::Congruence, zset::Union, zset::Intersection, zset::Complement, zset::PeriodicIntervals,
               zset::FiniteSums, zset::Explicit, zset::Shift>
      value;
};

ZSet congruence(const BigInt& modulus, const BigInt& residue);
ZSet all_integers();
ZSet union_of(std::vector<ZSet> parts);
ZSet intersection_of(std::vector<ZSet> parts);
ZSet complement_of(ZSet inner);
ZSet periodic_intervals(const BigInt& period, std::vector<std::pair<BigInt, BigInt>> intervals);
/// Throws BudgetExceeded when more than `max_sums` subsets would be summed.
ZSet finite_sums(IntSeq generator, std::size_t depth, std::uint64_t max_sums = kDefaultMaxPoints);
ZSet explicit_set(std::vector<BigInt> elements);
ZSet shifted(const BigInt& offset, ZSet inner);

bool contains(const ZSet& s, const BigInt& x);

/// Members in [lo, hi], increasing. Throws BudgetExceeded above max_points.
std::vector<BigInt> enumerate_window(const ZSet& s, const BigInt& lo, const BigInt& hi,
                                     std::uint64_t max_points = kDefaultMaxPoints);

/// A positive p with x in S iff x + p in S, when one is evident from the
/// descriptor.
std::optional<BigInt> period(const ZSet& s);

/// For sets evidently finite: an interval [lo, hi] containing every member
/// (lo > hi for the empty set).
std::optional<std::pair<BigInt, BigInt>> bounding_interval(const ZSet& s);

namespace zvset {
struct Product;
struct Preimage;
struct Explicit;
struct Shift;
struct Union;
struct Intersection;
struct Complement;
}  // namespace zvset

/// A subset of Z^v.
class ZvSet {
 public:
  struct Node;

  ZvSet(std::shared_ptr<const Node> node, Eigen::Index dimension);
  const Node& node() const { return *node_; }
  Eigen::Index dimension() const { return dimension_; }

 private:
  std::shared_ptr<const Node> node_;
  Eigen::Index dimension_;
};

namespace zvset {
struct Product {
  std::vector<ZSet> factors;
};
/// {y : A y in B^u}. Non-integral images are not members.
struct Preimage {
  RatMatrix matrix;
  ZSet target;
  ClearedMatrix cleared;
};
struct Explicit {
  std::vector<IntVector> elements;  ///< lexicographically sorted, unique
};
struct Shift {
  IntVector offset;
  ZvSet inner;
};
struct Union {
  std::vector<ZvSet> parts;
};
struct Intersection {
  std::vector<ZvSet> parts;
};
struct Complement {
  ZvSet inner;
};
}  // namespace zvset

struct ZvSet::Node {
  std::variant<zvset::Product, zvset::Preimage, zvset::Explicit, zvset::Shift, zvset::Union, zvset::Intersection,
               zvset::Complement>
      value;
};

ZvSet product_of(std::vector<ZSet> factors);
ZvSet preimage_set(const RatMatrix& a, ZSet b);
ZvSet explicit_vectors(Eigen::Index dimension, std::vector<IntVector> elements);
ZvSet shifted(const IntVector& offset, ZvSet inner);
ZvSet union_of(std::vector<ZvSet> parts);
ZvSet intersection_of(std::vector<ZvSet> parts);
ZvSet complement_of(ZvSet inner);

bool contains(const ZvSet& s, const IntVector& y);

/// Inclusive integer box in Z^v.
struct Box {
  IntVector lo;
  IntVector hi;

  Eigen::Index dimension() const { return lo.size(); }
  /// Point count; throws ContractViolation if some lo_i > hi_i.
  BigInt volume() const;
};

Box cube(Eigen::Index dimension, const BigInt& lo, const BigInt& hi);

/// Visits the box in lexicographic order until `visit` returns false.
/// Returns false iff the visit was cut short.
bool for_each_point(const Box& box, const std::function<bool(const IntVector&)>& visit);

/// Members in the box, lexicographic. Throws BudgetExceeded above max_points.
std::vector<IntVector> enumerate_window(const ZvSet& s, const Box& box, std::uint64_t max_points = kDefaultMaxPoints);

}  // namespace rwk
