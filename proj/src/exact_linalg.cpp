#include "rwk/exact_linalg.hpp"

#include "rwk/errors.hpp"

#include <sstream>

namespace rwk {

namespace {

void require_nonempty(const IntMatrix& m) {
  if (m.rows() < 1 || m.cols() < 1) throw ContractViolation("matrix must have at least one row and column");
}

// Row/column operations applied simultaneously to S and the matching transform.
struct SnfState {
  IntMatrix S, U, V;

  void swap_rows(Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    S.row(a).swap(S.row(b));
    U.row(a).swap(U.row(b));
  }
  void swap_cols(Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    S.col(a).swap(S.col(b));
    V.col(a).swap(V.col(b));
  }
  // row[target] -= q * row[source]
  void row_axpy(Eigen::Index target, Eigen::Index source, const BigInt& q) {
    for (Eigen::Index j = 0; j < S.cols(); ++j) S(target, j) -= q * S(source, j);
    for (Eigen::Index j = 0; j < U.cols(); ++j) U(target, j) -= q * U(source, j);
  }
  void col_axpy(Eigen::Index target, Eigen::Index source, const BigInt& q) {
    for (Eigen::Index i = 0; i < S.rows(); ++i) S(i, target) -= q * S(i, source);
    for (Eigen::Index i = 0; i < V.rows(); ++i) V(i, target) -= q * V(i, source);
  }
  void negate_row(Eigen::Index r) {
    for (Eigen::Index j = 0; j < S.cols(); ++j) S(r, j) = -S(r, j);
    for (Eigen::Index j = 0; j < U.cols(); ++j) U(r, j) = -U(r, j);
  }
};

// Rounds p/q (q > 0) to the nearest integer, halves toward zero.
BigInt round_half_toward_zero(const BigInt& p, const BigInt& q) {
  const BigInt twice = BigInt(2) * abs(p) - q;
  const BigInt magnitude = twice.sign() <= 0 ? BigInt(0) : -floor_div(-twice, BigInt(2) * q);
  return p.sign() < 0 ? -magnitude : magnitude;
}

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

}  // namespace

ClearedMatrix clear_denominators(const RatMatrix& a) {
  if (a.rows() < 1 || a.cols() < 1) throw ContractViolation("matrix must have at least one row and column");
  BigInt d(1);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) d = lcm(d, a(i, j).denominator());
  IntMatrix scaled(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      scaled(i, j) = a(i, j).numerator() * exact_div(d, a(i, j).denominator());
  return {d, std::move(scaled)};
}

SnfDecomposition smith_normal_form(const IntMatrix& m) {
  require_nonempty(m);
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  SnfState st{m, identity<BigInt>(rows), identity<BigInt>(cols)};
  std::size_t rank = 0;

  for (Eigen::Index t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero magnitude in the trailing block, first in row-major order.
    Eigen::Index pr = -1, pc = -1;
    for (Eigen::Index i = t; i < rows; ++i)
      for (Eigen::Index j = t; j < cols; ++j)
        if (!st.S(i, j).is_zero() && (pr < 0 || abs(st.S(i, j)) < abs(st.S(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    st.swap_rows(t, pr);
    st.swap_cols(t, pc);

    for (;;) {
      for (Eigen::Index i = t + 1; i < rows; ++i)
        if (!st.S(i, t).is_zero()) st.row_axpy(i, t, floor_div(st.S(i, t), st.S(t, t)));
      for (Eigen::Index j = t + 1; j < cols; ++j)
        if (!st.S(t, j).is_zero()) st.col_axpy(j, t, floor_div(st.S(t, j), st.S(t, t)));

      // Remainders are smaller than the pivot; promote the smallest and repeat.
      Eigen::Index best_r = -1, best_c = -1;
      for (Eigen::Index i = t + 1; i < rows; ++i)
        if (!st.S(i, t).is_zero() && (best_r < 0 || abs(st.S(i, t)) < abs(st.S(best_r, best_c)))) {
          best_r = i;
          best_c = t;
        }
      for (Eigen::Index j = t + 1; j < cols; ++j)
        if (!st.S(t, j).is_zero() && (best_r < 0 || abs(st.S(t, j)) < abs(st.S(best_r, best_c)))) {
          best_r = t;
          best_c = j;
        }
      if (best_r >= 0) {
        st.swap_rows(t, best_r);
        st.swap_cols(t, best_c);
        continue;
      }

      // Row and column are clear; enforce the divisibility chain.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (!divides(st.S(t, t), st.S(i, j))) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      st.row_axpy(t, bad, BigInt(-1));
    }
    if (st.S(t, t).sign() < 0) st.negate_row(t);
    ++rank;
  }
  return {std::move(st.U), std::move(st.S), std::move(st.V), rank};
}

bool satisfies_snf_invariants(const IntMatrix& m, const SnfDecomposition& snf) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (snf.U.rows() != rows || snf.U.cols() != rows) return false;
  if (snf.V.rows() != cols || snf.V.cols() != cols) return false;
  if (snf.S.rows() != rows || snf.S.cols() != cols) return false;
  if (IntMatrix(snf.U * m * snf.V) != snf.S) return false;
  if (abs(determinant(snf.U)) != BigInt(1) || abs(determinant(snf.V)) != BigInt(1)) return false;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (i != j && !snf.S(i, j).is_zero()) return false;
  const Eigen::Index diag = std::min(rows, cols);
  for (Eigen::Index i = 0; i < diag; ++i) {
    if (snf.S(i, i).sign() < 0) return false;
    if (i + 1 < diag && !divides(snf.S(i, i), snf.S(i + 1, i + 1))) return false;
    if ((static_cast<std::size_t>(i) < snf.rank) == snf.S(i, i).is_zero()) return false;
  }
  return true;
}

std::optional<IntVector> solve_linear_diophantine(const IntMatrix& m, const IntVector& b) {
  require_nonempty(m);
  if (b.size() != m.rows()) {
    std::ostringstream os;
    os << "right-hand side has length " << b.size() << ", expected " << m.rows();
    throw ContractViolation(os.str());
  }
  const SnfDecomposition snf = smith_normal_form(m);
  const IntVector c = snf.U * b;
  IntVector y = IntVector::Zero(m.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (static_cast<std::size_t>(i) < snf.rank) {
      if (!divides(snf.S(i, i), c(i))) return std::nullopt;
      y(i) = exact_div(c(i), snf.S(i, i));
    } else if (!c(i).is_zero()) {
      return std::nullopt;
    }
  }
  IntVector x = snf.V * y;

  // Size reduction against the kernel lattice spanned by V's trailing columns.
  // Each accepted step strictly lowers |x|^2, so the loop terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index j = static_cast<Eigen::Index>(snf.rank); j < m.cols(); ++j) {
      const IntVector k = snf.V.col(j);
      const BigInt q = round_half_toward_zero(dot(x, k), dot(k, k));
      if (!q.is_zero()) {
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) -= q * k(i);
        changed = true;
      }
    }
  }
  if (IntVector(m * x) != b) throw InvariantBreach("Smith-form solution failed re-verification");
  return x;
}

std::optional<IntVector> solve_constant_image(const RatMatrix& a, const BigInt& value) {
  const ClearedMatrix cleared = clear_denominators(a);
  return solve_linear_diophantine(cleared.scaled, constant_vector(a.rows(), cleared.d * value));
}

bool has_constant_image_property(const RatMatrix& a) { return solve_constant_image(a, BigInt(1)).has_value(); }

RatVector multiply(const RatMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw ContractViolation("dimension mismatch in matrix-vector product");
  RatVector out(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Rational s(0);
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(i, j) * Rational(x(j));
    out(i) = s;
  }
  return out;
}

std::string to_string(const IntVector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v(i).to_string();
  }
  return out + ")";
}

namespace {
template <typename Scalar>
std::string matrix_string(const Matrix<Scalar>& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += m(i, j).to_string();
    }
    out += "]";
  }
  return out + "]";
}
}  // namespace

std::string to_string(const RatMatrix& m) { return matrix_string(m); }
std::string to_string(const IntMatrix& m) { return matrix_string(m); }

}  // namespace rwk
