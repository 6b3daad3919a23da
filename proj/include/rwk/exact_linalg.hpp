#pragma once

/**
 * @file exact_linalg.hpp
 * @brief Denominator clearing, Smith normal form and integer solvers.
 *
 * Everything here is exact. Solvability of M x = b over the integers is
 * decided from the Smith form U M V = S: with c = U b, a solution exists iff
 * s_i | c_i for i < rank and c_i = 0 for i >= rank.
 */

#include "rwk/matrix.hpp"

#include <cstddef>
#include <optional>

namespace rwk {

struct ClearedMatrix {
  BigInt d;          ///< least positive integer with d * A integral
  IntMatrix scaled;  ///< d * A
};

ClearedMatrix clear_denominators(const RatMatrix& a);

struct SnfDecomposition {
  IntMatrix U;  ///< u x u, unimodular
  IntMatrix S;  ///< u x v, diagonal with s_1 | s_2 | ...
  IntMatrix V;  ///< v x v, unimodular
  std::size_t rank = 0;
};

/// Deterministic Smith normal form with transforms: U * m * V == S.
SnfDecomposition smith_normal_form(const IntMatrix& m);

/// Checks every Smith-form invariant exactly (product identity, unimodularity
/// via determinants, diagonal shape, nonnegative divisibility chain).
bool satisfies_snf_invariants(const IntMatrix& m, const SnfDecomposition& snf);

/// Integer solution of m x = b, or nullopt when none exists. The particular
/// solution is size-reduced against the kernel basis read off V, so the
/// result is deterministic and small. Throws ContractViolation when
/// b.size() != m.rows().
std::optional<IntVector> solve_linear_diophantine(const IntMatrix& m, const IntVector& b);

/// Integral x with A x = (value, ..., value), solved as (dA) x = d*value.
std::optional<IntVector> solve_constant_image(const RatMatrix& a, const BigInt& value);

/// Whether every constant vector is an integral image. By linearity this is
/// solvability at value 1: x_1 with A x_1 = 1 gives A (a x_1) = a for all a.
bool has_constant_image_property(const RatMatrix& a);

RatVector multiply(const RatMatrix& a, const IntVector& x);

}  // namespace rwk
