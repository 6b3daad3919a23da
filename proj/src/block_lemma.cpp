#include "rwk/block_lemma.hpp"

#include "rwk/errors.hpp"

#include <algorithm>
#include <map>

namespace rwk {

namespace {

std::size_t to_size(const BigInt& x, const char* what) {
  if (x.sign() < 0 || !x.fits_int64()) throw ContractViolation(std::string(what) + " too large to materialize");
  return static_cast<std::size_t>(x.to_int64());
}

void check_modulus(const BigInt& d) {
  if (d < BigInt(1)) throw ContractViolation("block modulus d must be >= 1");
}

}  // namespace

BigInt block_width(const BigInt& d, std::size_t m) {
  check_modulus(d);
  if (m < 1) throw ContractViolation("block width needs at least one sequence");
  return pow(d, m) * (d - BigInt(1)) + BigInt(1);
}

IndexSet find_block_in_window(std::span<const IntSeq> family, const BigInt& d, std::size_t lo) {
  const std::size_t m = family.size();
  const std::size_t k = to_size(block_width(d, m), "window width");
  if (lo < 1) throw ContractViolation("windows start at index >= 1");
  const std::size_t hi = lo + k - 1;
  for (const auto& f : family)
    if (f.length() < hi) throw PrefixTooShort(hi);
  if (d == BigInt(1)) return {lo};

  IndexSet current(k);
  for (std::size_t t = 0; t < k; ++t) current[t] = lo + t;

  for (std::size_t i = 1; i <= m; ++i) {
    std::map<BigInt, IndexSet> classes;
    for (std::size_t t : current) classes[mod(family[i - 1](t), d)].push_back(t);
    // std::map iterates residues in increasing order, so strict > keeps the smaller one on ties.
    const IndexSet* winner = nullptr;
    for (const auto& [residue, members] : classes)
      if (winner == nullptr || members.size() > winner->size()) winner = &members;
    const std::size_t keep = to_size(pow(d, m - i) * (d - BigInt(1)) + BigInt(1), "class size");
    if (winner->size() < keep) throw InvariantBreach("pigeonhole class smaller than guaranteed");
    current.assign(winner->begin(), winner->begin() + static_cast<std::ptrdiff_t>(keep));
  }
  const std::size_t size = to_size(d, "d");
  current.resize(size);
  return current;
}

BlockFamily build_blocks(std::span<const IntSeq> family, const BigInt& d, std::size_t count) {
  const BigInt k = block_width(d, family.size());
  const std::size_t width = to_size(k, "window width");
  const std::size_t required = width * count;
  for (const auto& f : family)
    if (f.length() < required) throw PrefixTooShort(required);
  BlockFamily out{d, family.size(), k, {}};
  out.blocks.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) out.blocks.push_back(find_block_in_window(family, d, (n - 1) * width + 1));
  return out;
}

bool is_residue_constant(std::span<const IntSeq> family, const BigInt& d, std::span<const std::size_t> indices) {
  if (indices.empty()) return true;
  for (const auto& f : family) {
    const BigInt r = mod(f(indices.front()), d);
    for (std::size_t t : indices)
      if (mod(f(t), d) != r) return false;
  }
  return true;
}

bool verify_blocks(std::span<const IntSeq> family, const BigInt& d, const BlockFamily& bf) {
  if (d < BigInt(1) || bf.d != d || bf.m != family.size() || family.empty()) return false;
  if (bf.k != block_width(d, bf.m)) return false;
  if (!bf.k.fits_int64()) return false;
  const BigInt k = bf.k;
  std::size_t previous_max = 0;
  for (std::size_t n = 1; n <= bf.blocks.size(); ++n) {
    const IndexSet& block = bf.blocks[n - 1];
    if (BigInt(block.size()) != d) return false;
    if (!std::is_sorted(block.begin(), block.end()) ||
        std::adjacent_find(block.begin(), block.end()) != block.end())
      return false;
    const BigInt window_lo = BigInt(n - 1) * k + BigInt(1);
    const BigInt window_hi = BigInt(n) * k;
    if (BigInt(block.front()) < window_lo || BigInt(block.back()) > window_hi) return false;
    if (n > 1 && block.front() <= previous_max) return false;
    previous_max = block.back();
    for (const auto& f : family)
      if (!divides(d, block_sum(f, block))) return false;
  }
  return true;
}

}  // namespace rwk
