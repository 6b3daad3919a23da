#include "rwk/preimage_transform.hpp"

#include <algorithm>

namespace rwk {

namespace {

void check_shapes(const RatMatrix& a, const SeqFamily& family) {
  if (a.rows() < 1 || a.cols() < 1) throw ContractViolation("matrix must have at least one row and column");
  if (family.dimension() != a.cols())
    throw ContractViolation("family dimension " + std::to_string(family.dimension()) + " does not match " +
                            std::to_string(a.cols()) + " matrix columns");
}

}  // namespace

GFunctions build_g_functions(const RatMatrix& a, const SeqFamily& family, const BlockFamily& blocks) {
  check_shapes(a, family);
  const std::size_t u = static_cast<std::size_t>(a.rows());
  GFunctions out;
  out.raw_count = family.size() * u;
  out.index.assign(family.size(), std::vector<std::size_t>(u, 0));

  for (std::size_t f = 0; f < family.size(); ++f) {
    // Block sums of every coordinate, shared by all rows.
    std::vector<IntVector> sums;
    sums.reserve(blocks.blocks.size());
    for (const auto& block : blocks.blocks) sums.push_back(block_sum(family[f], block));

    for (std::size_t i = 0; i < u; ++i) {
      std::vector<BigInt> values;
      values.reserve(sums.size());
      for (std::size_t n = 0; n < sums.size(); ++n) {
        Rational g(0);
        for (Eigen::Index j = 0; j < a.cols(); ++j)
          g += a(static_cast<Eigen::Index>(i), j) * Rational(sums[n](j));
        if (!g.is_integer())
          throw InvariantBreach("g value " + g.to_string() + " at block " + std::to_string(n + 1) +
                                " is not an integer");
        values.push_back(g.to_integer());
      }
      IntSeq seq(std::move(values));
      auto it = std::find(out.distinct.begin(), out.distinct.end(), seq);
      if (it == out.distinct.end()) {
        out.distinct.push_back(std::move(seq));
        it = out.distinct.end() - 1;
      }
      out.index[f][i] = static_cast<std::size_t>(it - out.distinct.begin());
    }
  }
  return out;
}

WitnessOracle search_oracle(ZSet target, SearchBudget budget) {
  return [target = std::move(target), budget](std::span<const IntSeq> family, std::size_t r) {
    SearchBudget b = budget;
    b.r = r;
    return cr_witness(target, family, b);
  };
}

TransformTrace transform_witness(const RatMatrix& a, const ZSet& b, const SeqFamily& family, std::size_t block_count,
                                 const WitnessOracle& oracle) {
  check_shapes(a, family);
  if (block_count < 1) throw ContractViolation("block count must be >= 1");

  TransformTrace trace;
  trace.matrix = a;
  trace.m = family.size();
  trace.u = static_cast<std::size_t>(a.rows());
  trace.v = static_cast<std::size_t>(a.cols());
  trace.block_count = block_count;

  // Check the hypothesis before any search.
  if (!has_constant_image_property(a))
    throw ConstantImageUnsolvable("no integral x with A x = (1, ..., 1) for A = " + to_string(a));

  const ClearedMatrix cleared = clear_denominators(a);
  trace.d = cleared.d;

  const std::vector<IntSeq> projections = projection_family(family);
  trace.blocks = build_blocks(projections, trace.d, block_count);
  trace.k = trace.blocks.k;

  trace.g = build_g_functions(a, family, trace.blocks);

  OracleOutcome outcome = oracle(trace.g.distinct, block_count);
  if (!outcome.found()) throw OracleExhausted(std::move(trace.g), std::move(outcome));
  trace.oracle_witness = *outcome.witness;

  auto x = solve_constant_image(a, trace.oracle_witness.a);
  if (!x) throw InvariantBreach("constant image solvable at 1 but not at " + trace.oracle_witness.a.to_string());
  trace.x = std::move(*x);

  for (std::size_t n : trace.oracle_witness.H) {
    const IndexSet& block = trace.blocks.blocks.at(n - 1);
    trace.K.insert(trace.K.end(), block.begin(), block.end());
  }

  const ZvSet preimage = preimage_set(a, b);
  trace.verified = true;
  for (const auto& f : family) {
    trace.outputs.push_back(IntVector(trace.x + block_sum(f, trace.K)));
    trace.verified = trace.verified && contains(preimage, trace.outputs.back());
  }
  return trace;
}

TransformTrace transform_witness(const RatMatrix& a, const ZSet& b, const SeqFamily& family, std::size_t block_count,
                                 const SearchBudget& budget) {
  return transform_witness(a, b, family, block_count, search_oracle(b, budget));
}

namespace {

bool check_trace(const TransformTrace& trace, const ZSet& b, const SeqFamily& family) {
  const RatMatrix& a = trace.matrix;
  if (a.rows() < 1 || a.cols() < 1) return false;
  if (trace.u != static_cast<std::size_t>(a.rows()) || trace.v != static_cast<std::size_t>(a.cols())) return false;
  if (family.size() != trace.m || family.dimension() != a.cols()) return false;
  if (trace.d != clear_denominators(a).d) return false;
  if (trace.k != block_width(trace.d, trace.m * trace.v)) return false;
  if (trace.blocks.blocks.size() != trace.block_count) return false;

  // Blocks must satisfy the lemma for the projections of this family.
  const std::vector<IntSeq> projections = projection_family(family);
  if (projections.front().length() < trace.block_count * static_cast<std::size_t>(trace.k.to_int64())) return false;
  if (!verify_blocks(projections, trace.d, trace.blocks)) return false;

  const Witness& w = trace.oracle_witness;
  if (w.H.empty() || !std::is_sorted(w.H.begin(), w.H.end()) ||
      std::adjacent_find(w.H.begin(), w.H.end()) != w.H.end() || w.H.front() < 1 ||
      w.H.back() > trace.block_count)
    return false;

  if (multiply(a, trace.x) != constant_vector(a.rows(), Rational(w.a))) return false;

  IndexSet expected_k;
  for (std::size_t n : w.H) expected_k.insert(expected_k.end(), trace.blocks.blocks[n - 1].begin(),
                                              trace.blocks.blocks[n - 1].end());
  if (trace.K != expected_k) return false;
  const BigInt bound = BigInt(trace.block_count) * trace.k;  // r d^(mv)(d-1) + r
  if (!trace.K.empty() && (trace.K.front() < 1 || BigInt(trace.K.back()) > bound)) return false;

  if (trace.outputs.size() != family.size()) return false;
  for (std::size_t f = 0; f < family.size(); ++f) {
    const IntVector y = trace.x + block_sum(family[f], trace.K);
    if (y != trace.outputs[f]) return false;
    const RatVector lhs = multiply(a, y);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      // Right-hand side from the definition of g, block by block.
      Rational rhs(w.a);
      for (std::size_t n : w.H) {
        const IntVector inner = block_sum(family[f], trace.blocks.blocks[n - 1]);
        for (Eigen::Index j = 0; j < a.cols(); ++j) rhs += a(i, j) * Rational(inner(j));
      }
      if (lhs(i) != rhs || !lhs(i).is_integer()) return false;
      if (!contains(b, lhs(i).to_integer())) return false;
      // The recorded g functions must agree with the recomputation.
      if (f < trace.g.index.size() && static_cast<std::size_t>(i) < trace.g.index[f].size()) {
        Rational via_g(w.a);
        const IntSeq& g = trace.g.at(f, static_cast<std::size_t>(i));
        for (std::size_t n : w.H) via_g += Rational(g(n));
        if (via_g != rhs) return false;
      } else {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

bool verify_transform(const TransformTrace& trace, const ZSet& b, const SeqFamily& family) {
  // Malformed traces (indices past the prefix, huge widths) are rejections.
  try {
    return check_trace(trace, b, family);
  } catch (const std::exception&) {
    return false;
  }
}

std::string to_string(InstanceStatus status) {
  switch (status) {
    case InstanceStatus::kVerified:
      return "verified";
    case InstanceStatus::kExhausted:
      return "exhausted";
    case InstanceStatus::kFailed:
      return "failed";
  }
  return "failed";
}

TransformReport transform_cr_full(const RatMatrix& a, const ZSet& b, const FamilyGenerator& families,
                                  std::size_t m_max, std::size_t block_count, const SearchBudget& budget) {
  TransformReport report;
  const WitnessOracle oracle = search_oracle(b, budget);
  for (std::size_t m = 1; m <= m_max; ++m) {
    const std::vector<SeqFamily> generated = families(m);
    for (std::size_t ordinal = 0; ordinal < generated.size(); ++ordinal) {
      TransformInstance inst{m, ordinal, InstanceStatus::kFailed, std::nullopt, {}};
      try {
        TransformTrace trace = transform_witness(a, b, generated[ordinal], block_count, oracle);
        const bool ok = trace.verified && verify_transform(trace, b, generated[ordinal]);
        inst.status = ok ? InstanceStatus::kVerified : InstanceStatus::kFailed;
        if (!ok) inst.message = "trace failed verification";
        inst.trace = std::move(trace);
      } catch (const OracleExhausted& e) {
        inst.status = InstanceStatus::kExhausted;
        inst.message = e.what();
      } catch (const Error& e) {
        inst.status = InstanceStatus::kFailed;
        inst.message = e.what();
      }
      switch (inst.status) {
        case InstanceStatus::kVerified:
          ++report.verified;
          break;
        case InstanceStatus::kExhausted:
          ++report.exhausted;
          break;
        case InstanceStatus::kFailed:
          ++report.failed;
          break;
      }
      report.instances.push_back(std::move(inst));
    }
  }
  return report;
}

}  // namespace rwk
