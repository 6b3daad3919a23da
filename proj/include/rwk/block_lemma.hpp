#pragma once

/**
 * @file block_lemma.hpp
 * @brief Divisibility blocks by iterated pigeonhole refinement.
 *
 * For m sequences and modulus d, every window of width k = d^m (d - 1) + 1
 * contains d indices on which each sequence is constant mod d, so each
 * sequence sums to a multiple of d there. Window n is {(n-1)k + 1, ..., nk}.
 */

#include "rwk/sequences.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rwk {

struct BlockFamily {
  BigInt d;
  std::size_t m = 0;  ///< number of sequences the width was computed for
  BigInt k;           ///< window width d^m (d - 1) + 1
  std::vector<IndexSet> blocks;

  friend bool operator==(const BlockFamily&, const BlockFamily&) = default;
};

/// d^m (d - 1) + 1, exactly.
BigInt block_width(const BigInt& d, std::size_t m);

/// Finds d indices in {lo, ..., lo + k - 1}, k = block_width(d, family.size()).
///
/// H_0 is the window. For i = 1..m, H_i is the largest residue class of
/// family[i-1] mod d inside H_{i-1} (smaller residue wins ties), truncated
/// to its first d^(m-i) (d - 1) + 1 elements. The result is the first d
/// elements of H_m.
IndexSet find_block_in_window(std::span<const IntSeq> family, const BigInt& d, std::size_t lo);

/// Blocks K_1..K_count, block n taken from window n.
BlockFamily build_blocks(std::span<const IntSeq> family, const BigInt& d, std::size_t count);

bool verify_blocks(std::span<const IntSeq> family, const BigInt& d, const BlockFamily& blocks);

/// Every sequence takes a single residue class mod d on `indices`.
bool is_residue_constant(std::span<const IntSeq> family, const BigInt& d, std::span<const std::size_t> indices);

}  // namespace rwk
