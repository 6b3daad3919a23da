#pragma once

/**
 * @file preimage_transform.hpp
 * @brief Turns witnesses for B in Z into witnesses for
 * C = {y in Z^v : A y in B^u}.
 *
 * Given a family F of m sequences in Z^v:
 *   1. d = lcm of the denominators of A;
 *   2. build divisibility blocks K_n over all m*v coordinate projections,
 *      window width k = d^(mv) (d - 1) + 1;
 *   3. g_{f,i}(n) = sum_j a_ij sum_{t in K_n} f_j(t), integral because
 *      d | sum_{t in K_n} f_j(t) and d a_ij is an integer;
 *   4. ask the oracle for (a, G) certifying the g family into B;
 *   5. solve A x = (a, ..., a) over Z;
 *   6. K = union of K_n over n in G; x + sum_{t in K} f(t) lies in C
 *      for every f in F.
 */

#include "rwk/block_lemma.hpp"
#include "rwk/errors.hpp"
#include "rwk/witness_engine.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rwk {

/// The g functions, deduplicated. index[f][i] names the distinct function
/// playing the role of g_{f, i+1}.
struct GFunctions {
  std::vector<IntSeq> distinct;
  std::vector<std::vector<std::size_t>> index;
  std::size_t raw_count = 0;  ///< m * u before deduplication

  const IntSeq& at(std::size_t member, std::size_t row) const { return distinct.at(index.at(member).at(row)); }
};

/// Throws InvariantBreach if some g value is not an integer (only possible
/// when the blocks were not built for this matrix and family).
GFunctions build_g_functions(const RatMatrix& a, const SeqFamily& family, const BlockFamily& blocks);

struct TransformTrace {
  RatMatrix matrix;
  BigInt d;
  std::size_t m = 0, u = 0, v = 0;
  BigInt k;
  std::size_t block_count = 0;  ///< N; doubles as the oracle's r
  BlockFamily blocks;
  GFunctions g;
  Witness oracle_witness;
  IntVector x;
  IndexSet K;
  std::vector<IntVector> outputs;
  bool verified = false;
};

/// Raised when the oracle finds no witness; carries the g family so the
/// caller can retry with a larger budget or more blocks.
class OracleExhausted : public Error {
 public:
  OracleExhausted(GFunctions g, OracleOutcome outcome)
      : Error("witness oracle exhausted its budget after " + std::to_string(outcome.examined) + " candidates"),
        g_(std::move(g)),
        outcome_(std::move(outcome)) {}

  const GFunctions& g_functions() const { return g_; }
  const OracleOutcome& outcome() const { return outcome_; }

 private:
  GFunctions g_;
  OracleOutcome outcome_;
};

/// Produces a witness for a finite family inside B using index sets within
/// {1..r}.
using WitnessOracle = std::function<OracleOutcome(std::span<const IntSeq> family, std::size_t r)>;

/// The budgeted canonical search of cr_witness, with r supplied per call.
WitnessOracle search_oracle(ZSet target, SearchBudget budget);

TransformTrace transform_witness(const RatMatrix& a, const ZSet& b, const SeqFamily& family, std::size_t block_count,
                                 const WitnessOracle& oracle);

TransformTrace transform_witness(const RatMatrix& a, const ZSet& b, const SeqFamily& family, std::size_t block_count,
                                 const SearchBudget& budget);

/// Recomputes both sides of
///   entry i of A (x + sum_{t in K} f(t))  ==  a + sum_{n in G} g_{f,i}(n)
/// independently from the trace's raw data, and checks membership in B,
/// the block invariants, A x = a, and K within {1..N k}.
bool verify_transform(const TransformTrace& trace, const ZSet& b, const SeqFamily& family);

enum class InstanceStatus { kVerified, kExhausted, kFailed };

std::string to_string(InstanceStatus status);

struct TransformInstance {
  std::size_t m = 0;
  std::size_t ordinal = 0;  ///< position among the families generated for m
  InstanceStatus status = InstanceStatus::kFailed;
  std::optional<TransformTrace> trace;
  std::string message;
};

struct TransformReport {
  std::vector<TransformInstance> instances;
  std::size_t verified = 0, exhausted = 0, failed = 0;

  bool vacuous() const { return instances.empty(); }
};

/// Families of exactly m members to try for a given m; may be empty.
using FamilyGenerator = std::function<std::vector<SeqFamily>(std::size_t m)>;

/// Runs transform_witness for every m in 1..m_max over the generated
/// families, in generation order.
TransformReport transform_cr_full(const RatMatrix& a, const ZSet& b, const FamilyGenerator& families,
                                  std::size_t m_max, std::size_t block_count, const SearchBudget& budget);

}  // namespace rwk
