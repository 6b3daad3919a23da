#pragma once

#include "rwk/scalar.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>

namespace rwk {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<BigInt>;
using RatVector = Vector<Rational>;

/// Converts an integer expression to rationals.
template <typename Derived>
Matrix<Rational> to_rational(const Eigen::MatrixBase<Derived>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

/// All-`value` column vector of length n.
template <typename Scalar>
Vector<Scalar> constant_vector(Eigen::Index n, const Scalar& value) {
  Vector<Scalar> out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = value;
  return out;
}

template <typename Scalar>
Matrix<Scalar> identity(Eigen::Index n) {
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = Scalar(1);
  return out;
}

namespace detail {
inline BigInt exact_quotient(const BigInt& a, const BigInt& b) { return exact_div(a, b); }
inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }
}  // namespace detail

/// Exact determinant by fraction-free (Bareiss) elimination. Every division
/// in the recurrence is exact, so this works over BigInt as well as Rational.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == Scalar(0)) {
      Eigen::Index swap = k + 1;
      while (swap < n && m(swap, k) == Scalar(0)) ++swap;
      if (swap == n) return Scalar(0);
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = detail::exact_quotient(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Lexicographic comparison of equal-length vectors.
template <typename Scalar>
std::strong_ordering lex_compare(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (auto c = a(i) <=> b(i); c != 0) return c;
  }
  return a.size() <=> b.size();
}

struct LexLess {
  template <typename Scalar>
  bool operator()(const Vector<Scalar>& a, const Vector<Scalar>& b) const {
    return lex_compare(a, b) < 0;
  }
};

/// "(1, -2, 3)"
std::string to_string(const IntVector& v);
/// "[[1/2, 1], [0, 3]]"
std::string to_string(const RatMatrix& m);
std::string to_string(const IntMatrix& m);

}  // namespace rwk
