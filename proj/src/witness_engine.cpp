#include "rwk/witness_engine.hpp"

#include "rwk/errors.hpp"

#include <algorithm>
#include <random>

namespace rwk {

namespace {

constexpr std::size_t kMaxIndexRange = 20;

void combinations(std::size_t r, std::size_t size, std::vector<IndexSet>& out) {
  IndexSet current(size);
  for (std::size_t i = 0; i < size; ++i) current[i] = i + 1;
  for (;;) {
    out.push_back(current);
    std::size_t i = size;
    while (i > 0 && current[i - 1] == r - size + i) --i;
    if (i == 0) return;
    ++current[i - 1];
    for (std::size_t j = i; j < size; ++j) current[j] = current[j - 1] + 1;
  }
}

BigInt max_norm(const IntVector& a) {
  BigInt out(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) out = std::max(out, abs(a(i)));
  return out;
}

// Canonical scan order of a: 0, -1, 1, -2, 2, ...
BigInt nth_candidate(std::uint64_t n) {
  if (n == 0) return BigInt(0);
  const BigInt magnitude(static_cast<unsigned long>((n + 1) / 2));
  return (n % 2 == 1) ? -magnitude : magnitude;
}

// Largest |a| worth scanning: the budget, cut down by evident periodicity or
// finiteness of the target. Returns nullopt when no a can work.
std::optional<BigInt> scan_limit(const ZSet& target, const BigInt& a_bound, const BigInt& min_sum,
                                 const BigInt& max_sum, std::optional<std::pair<BigInt, BigInt>>& a_range) {
  BigInt limit = a_bound;
  if (auto p = period(target)) limit = std::min(limit, *p);
  if (auto hull = bounding_interval(target)) {
    if (hull->first > hull->second) return std::nullopt;
    a_range = std::pair{hull->first - max_sum, hull->second - min_sum};
    if (a_range->first > a_range->second) return std::nullopt;
    limit = std::min(limit, std::max(abs(a_range->first), abs(a_range->second)));
  }
  return limit;
}

OracleOutcome scalar_search(const ZSet& target, std::span<const IntSeq> family, std::size_t r,
                            const SearchBudget& budget) {
  OracleOutcome outcome{std::nullopt, budget, 0, false};
  outcome.budget.r = r;
  if (family.empty()) throw ContractViolation("witness search needs a nonempty family");
  if (budget.a_bound.sign() < 0) throw ContractViolation("a_bound must be nonnegative");
  if (r < 1) throw ContractViolation("index range r must be >= 1");
  for (const auto& f : family)
    if (f.length() < r) throw PrefixTooShort(r);

  const std::vector<IndexSet> hsets = canonical_index_sets(r);
  std::vector<std::vector<BigInt>> sums(family.size());
  BigInt min_sum = family.front()(1), max_sum = family.front()(1);
  for (std::size_t i = 0; i < family.size(); ++i) {
    sums[i].reserve(hsets.size());
    for (const auto& h : hsets) {
      sums[i].push_back(block_sum(family[i], h));
      min_sum = std::min(min_sum, sums[i].back());
      max_sum = std::max(max_sum, sums[i].back());
    }
  }

  std::optional<std::pair<BigInt, BigInt>> a_range;
  const auto limit = scan_limit(target, budget.a_bound, min_sum, max_sum, a_range);
  if (!limit) return outcome;

  for (std::uint64_t n = 0;; ++n) {
    const BigInt a = nth_candidate(n);
    if (abs(a) > *limit) break;
    if (a_range && (a < a_range->first || a > a_range->second)) continue;
    for (std::size_t h = 0; h < hsets.size(); ++h) {
      if (outcome.examined >= budget.max_candidates) {
        outcome.candidate_cap_hit = true;
        return outcome;
      }
      ++outcome.examined;
      bool ok = true;
      for (std::size_t i = 0; i < family.size() && ok; ++i) ok = contains(target, a + sums[i][h]);
      if (ok) {
        outcome.witness = Witness{a, hsets[h]};
        return outcome;
      }
    }
  }
  return outcome;
}

}  // namespace

std::vector<IndexSet> canonical_index_sets(std::size_t r) {
  if (r > kMaxIndexRange)
    throw BudgetExceeded("index range r = " + std::to_string(r) + " exceeds " + std::to_string(kMaxIndexRange));
  std::vector<IndexSet> out;
  out.reserve((std::size_t{1} << r) - 1);
  for (std::size_t size = 1; size <= r; ++size) combinations(r, size, out);
  return out;
}

OracleOutcome cr_witness(const ZSet& target, std::span<const IntSeq> family, const SearchBudget& budget) {
  return scalar_search(target, family, budget.r, budget);
}

OracleOutcome cr_witness_matrix(const ZSet& target, const IntMatrix& m, const SearchBudget& budget) {
  if (m.rows() < 1 || m.cols() < 1) throw ContractViolation("witness matrix must be at least 1 x 1");
  std::vector<IntSeq> columns;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    std::vector<BigInt> col(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index t = 0; t < m.rows(); ++t) col[static_cast<std::size_t>(t)] = m(t, j);
    columns.emplace_back(std::move(col));
  }
  return scalar_search(target, columns, static_cast<std::size_t>(m.rows()), budget);
}

OracleOutcome jset_witness(const ZSet& target, std::span<const IntSeq> family, const SearchBudget& budget) {
  if (family.empty()) throw ContractViolation("witness search needs a nonempty family");
  std::size_t horizon = family.front().length();
  for (const auto& f : family) horizon = std::min(horizon, f.length());
  return scalar_search(target, family, std::min(horizon, budget.r), budget);
}

VecOracleOutcome cr_witness(const ZvSet& target, const SeqFamily& family, const SearchBudget& budget) {
  VecOracleOutcome outcome{std::nullopt, budget, 0, false};
  if (family.dimension() != target.dimension()) throw ContractViolation("family and set differ in dimension");
  if (budget.a_bound.sign() < 0) throw ContractViolation("a_bound must be nonnegative");
  if (budget.r < 1) throw ContractViolation("index range r must be >= 1");
  if (family.length() < budget.r) throw PrefixTooShort(budget.r);

  const std::vector<IndexSet> hsets = canonical_index_sets(budget.r);
  std::vector<std::vector<IntVector>> sums(family.size());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (const auto& h : hsets) sums[i].push_back(block_sum(family[i], h));

  const Eigen::Index v = family.dimension();
  for (BigInt radius(0); radius <= budget.a_bound; radius += BigInt(1)) {
    bool stop = false;
    for_each_point(cube(v, -radius, radius), [&](const IntVector& a) {
      if (max_norm(a) != radius) return true;  // inner shells already scanned
      for (std::size_t h = 0; h < hsets.size(); ++h) {
        if (outcome.examined >= budget.max_candidates) {
          outcome.candidate_cap_hit = true;
          stop = true;
          return false;
        }
        ++outcome.examined;
        bool ok = true;
        for (std::size_t i = 0; i < family.size() && ok; ++i) ok = contains(target, IntVector(a + sums[i][h]));
        if (ok) {
          outcome.witness = VecWitness{a, hsets[h]};
          stop = true;
          return false;
        }
      }
      return true;
    });
    if (stop) break;
  }
  return outcome;
}

bool certifies(const ZSet& target, std::span<const IntSeq> family, const Witness& w) {
  if (w.H.empty() || w.H.front() < 1) return false;
  if (!std::is_sorted(w.H.begin(), w.H.end()) || std::adjacent_find(w.H.begin(), w.H.end()) != w.H.end())
    return false;
  for (const auto& f : family) {
    if (f.length() < w.H.back()) return false;
    BigInt value = w.a;
    for (std::size_t t : w.H) value += f(t);
    if (!contains(target, value)) return false;
  }
  return true;
}

bool certifies(const ZvSet& target, const SeqFamily& family, const VecWitness& w) {
  if (w.H.empty() || w.H.front() < 1) return false;
  if (!std::is_sorted(w.H.begin(), w.H.end()) || std::adjacent_find(w.H.begin(), w.H.end()) != w.H.end())
    return false;
  if (family.length() < w.H.back()) return false;
  for (const auto& f : family) {
    IntVector value = w.a;
    for (std::size_t t : w.H) value += f(t);
    if (!contains(target, value)) return false;
  }
  return true;
}

std::optional<BigInt> ps_check(const ZSet& target, std::span<const BigInt> g, std::span<const BigInt> pattern,
                               const BigInt& x_bound) {
  if (g.empty() || pattern.empty()) throw ContractViolation("ps_check needs nonempty G and test pattern");
  BigInt limit = x_bound;
  if (auto p = period(target)) limit = std::min(limit, *p);
  for (std::uint64_t n = 0;; ++n) {
    const BigInt x = nth_candidate(n);
    if (abs(x) > limit) return std::nullopt;
    const bool covered = std::all_of(pattern.begin(), pattern.end(), [&](const BigInt& f) {
      return std::any_of(g.begin(), g.end(), [&](const BigInt& t) { return contains(target, t + f + x); });
    });
    if (covered) return x;
  }
}

REstimate estimate_r(const ZSet& target, std::size_t k, std::span<const BigInt> alphabet, std::size_t r_max,
                     const EstimateOptions& options) {
  if (k < 1) throw ContractViolation("estimate_r needs k >= 1");
  if (alphabet.empty()) throw ContractViolation("estimate_r needs a nonempty alphabet");
  REstimate result;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);

  for (std::size_t r = 1; r <= r_max; ++r) {
    const SearchBudget budget{options.a_bound, r, SearchBudget{}.max_candidates};
    const std::size_t cells = r * k;
    const BigInt count = pow(BigInt(alphabet.size()), cells);
    const bool exhaustive = count <= BigInt(static_cast<unsigned long>(options.exhaustive_cap));
    if (!exhaustive && options.samples == 0)
      throw BudgetExceeded("r = " + std::to_string(r) + " needs " + count.to_string() +
                           " matrices and sampling is disabled");
    result.exhaustive = result.exhaustive && exhaustive;

    IntMatrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
    std::vector<std::size_t> digits(cells, 0);
    const auto fill = [&] {
      for (std::size_t c = 0; c < cells; ++c)
        m(static_cast<Eigen::Index>(c / k), static_cast<Eigen::Index>(c % k)) = alphabet[digits[c]];
    };
    const auto advance = [&] {
      if (!exhaustive) {
        for (auto& dgt : digits) dgt = pick(rng);
        return;
      }
      for (std::size_t c = cells; c-- > 0;) {
        if (++digits[c] < alphabet.size()) return;
        digits[c] = 0;
      }
    };

    const std::uint64_t total = exhaustive ? static_cast<std::uint64_t>(count.to_int64()) : options.samples;
    bool all_found = true;
    if (!exhaustive) advance();
    for (std::uint64_t i = 0; i < total; ++i) {
      fill();
      ++result.matrices_checked;
      if (!cr_witness_matrix(target, m, budget).found()) {
        result.counterexample = m;
        all_found = false;
        break;
      }
      advance();
    }
    if (all_found) {
      result.r = r;
      return result;
    }
  }
  return result;
}

}  // namespace rwk
