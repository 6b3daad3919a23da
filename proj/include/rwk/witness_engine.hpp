#pragma once

/**
 * @file witness_engine.hpp
 * @brief Budgeted searches for (a, H) witnesses of CR-, J- and piecewise
 * syndetic-type membership statements.
 *
 * A witness (a, H) certifies a family F into a set A when
 * a + sum_{t in H} f(t) lies in A for every f in F. Searches scan candidates
 * in a fixed canonical order: |a| ascending, then a ascending, then |H|
 * ascending, then H lexicographically. An exhausted search is a statement
 * about the budget only.
 */

#include "rwk/set_families.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rwk {

struct SearchBudget {
  BigInt a_bound{0};                          ///< scan |a| <= a_bound (max-norm for vectors)
  std::size_t r = 1;                          ///< H subset of {1..r}
  std::uint64_t max_candidates = 200'000'000;  ///< cap on (a, H) pairs examined

  friend bool operator==(const SearchBudget&, const SearchBudget&) = default;
};

template <typename Point>
struct BasicWitness {
  Point a;
  IndexSet H;
};

using Witness = BasicWitness<BigInt>;
using VecWitness = BasicWitness<IntVector>;

inline bool operator==(const Witness& x, const Witness& y) { return x.a == y.a && x.H == y.H; }
inline bool operator==(const VecWitness& x, const VecWitness& y) { return x.a == y.a && x.H == y.H; }

template <typename Point>
struct BasicOutcome {
  std::optional<BasicWitness<Point>> witness;
  SearchBudget budget;
  std::uint64_t examined = 0;     ///< (a, H) pairs tested
  bool candidate_cap_hit = false;

  bool found() const { return witness.has_value(); }
};

using OracleOutcome = BasicOutcome<BigInt>;
using VecOracleOutcome = BasicOutcome<IntVector>;

/// Nonempty subsets of {1..r} in (size, lexicographic) order. Throws
/// BudgetExceeded for r > 24.
std::vector<IndexSet> canonical_index_sets(std::size_t r);

/// k-CR form: H subset of {1..budget.r}. Throws PrefixTooShort when some
/// sequence is shorter than budget.r.
OracleOutcome cr_witness(const ZSet& target, std::span<const IntSeq> family, const SearchBudget& budget);

/// Vector form over Z^v.
VecOracleOutcome cr_witness(const ZvSet& target, const SeqFamily& family, const SearchBudget& budget);

/// Matrix form: column j of the r x k matrix is the j-th sequence, r = rows.
OracleOutcome cr_witness_matrix(const ZSet& target, const IntMatrix& m, const SearchBudget& budget);

/// J-set form: H ranges over subsets of the whole stored prefix, capped at
/// budget.r.
OracleOutcome jset_witness(const ZSet& target, std::span<const IntSeq> family, const SearchBudget& budget);

/// Independent re-check of a witness by direct membership evaluation.
bool certifies(const ZSet& target, std::span<const IntSeq> family, const Witness& w);
bool certifies(const ZvSet& target, const SeqFamily& family, const VecWitness& w);

/// Least |x| <= x_bound (smaller x on ties) with
/// x + f in union_{t in G} (-t + A) for every f in pattern.
std::optional<BigInt> ps_check(const ZSet& target, std::span<const BigInt> g, std::span<const BigInt> pattern,
                               const BigInt& x_bound);

struct EstimateOptions {
  BigInt a_bound{0};
  std::uint64_t exhaustive_cap = 100'000;  ///< enumerate all matrices below this count
  std::uint64_t samples = 2'000;           ///< random matrices per r otherwise
  std::uint64_t seed = 0;
};

struct REstimate {
  std::optional<std::size_t> r;        ///< least r found to work
  bool exhaustive = true;              ///< false when some r was only sampled
  std::uint64_t matrices_checked = 0;
  std::optional<IntMatrix> counterexample;  ///< last witness-free matrix seen
};

/// Least r <= r_max such that every r x k matrix over the alphabet admits a
/// witness with |a| <= a_bound. Sampled levels report absence of a
/// counterexample, not proof. Throws BudgetExceeded if a level is too large
/// to enumerate and sampling is disabled.
REstimate estimate_r(const ZSet& target, std::size_t k, std::span<const BigInt> alphabet, std::size_t r_max,
                     const EstimateOptions& options);

}  // namespace rwk
