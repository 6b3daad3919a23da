#pragma once

/**
 * @file scalar.hpp
 * @brief Exact scalar types: arbitrary-precision integers and rationals.
 *
 * Thin value wrappers over GMP so they can be used as Eigen scalars without
 * leaking gmpxx expression templates into Eigen's own expression machinery.
 * Rationals are always canonical: coprime numerator and denominator, with
 * the sign carried by the numerator.
 */

#include <gmpxx.h>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rwk {

class BigInt {
 public:
  BigInt() = default;
  BigInt(int v) : v_(v) {}                       // NOLINT: implicit on purpose
  BigInt(long v) : v_(v) {}                      // NOLINT
  BigInt(long long v) : v_(static_cast<long>(v)) {}  // NOLINT (LP64)
  BigInt(unsigned long v) : v_(v) {}             // NOLINT
  BigInt(unsigned int v) : v_(v) {}              // NOLINT
  explicit BigInt(mpz_class v) : v_(std::move(v)) {}

  /// Parses a base-10 integer with optional leading sign. Throws
  /// std::invalid_argument on malformed input.
  static BigInt parse(std::string_view text);

  const mpz_class& gmp() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool fits_int64() const;
  std::int64_t to_int64() const;  // throws std::overflow_error
  std::string to_string() const { return v_.get_str(); }

  BigInt operator-() const { return BigInt(mpz_class(-v_)); }
  BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
  BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
  BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }

  friend BigInt operator+(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ + b.v_)); }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ - b.v_)); }
  friend BigInt operator*(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ * b.v_)); }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

 private:
  mpz_class v_;
};

std::ostream& operator<<(std::ostream& os, const BigInt& x);

BigInt abs(const BigInt& x);
/// Quotient rounded toward negative infinity. Throws on zero divisor.
BigInt floor_div(const BigInt& a, const BigInt& b);
/// Least nonnegative residue of a modulo |m|. Throws on zero modulus.
BigInt mod(const BigInt& a, const BigInt& m);
/// Exact quotient; the caller guarantees b | a.
BigInt exact_div(const BigInt& a, const BigInt& b);
bool divides(const BigInt& d, const BigInt& a);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
BigInt pow(const BigInt& base, unsigned long exponent);

class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}                  // NOLINT
  Rational(long v) : v_(v) {}                 // NOLINT
  Rational(const BigInt& v) : v_(v.gmp()) {}  // NOLINT
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts "p/q" or "p"; the result is canonical. Throws
  /// std::invalid_argument on malformed input or zero denominator.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return BigInt(mpz_class(v_.get_num())); }
  BigInt denominator() const { return BigInt(mpz_class(v_.get_den())); }
  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  /// Throws std::domain_error when the value is not integral.
  BigInt to_integer() const;
  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

Rational abs(const Rational& x);

}  // namespace rwk

template <>
struct std::hash<rwk::BigInt> {
  std::size_t operator()(const rwk::BigInt& x) const noexcept;
};

namespace Eigen {

template <>
struct NumTraits<rwk::BigInt> : GenericNumTraits<rwk::BigInt> {
  using Real = rwk::BigInt;
  using NonInteger = rwk::Rational;
  using Nested = rwk::BigInt;
  using Literal = rwk::BigInt;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  // Exact types: stream output needs no precision hint.
  static constexpr int digits10() { return 0; }
  static constexpr int max_digits10() { return 0; }
};

template <>
struct NumTraits<rwk::Rational> : GenericNumTraits<rwk::Rational> {
  using Real = rwk::Rational;
  using NonInteger = rwk::Rational;
  using Nested = rwk::Rational;
  using Literal = rwk::Rational;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64
  };
  // Exact types: stream output needs no precision hint.
  static constexpr int digits10() { return 0; }
  static constexpr int max_digits10() { return 0; }
};

}  // namespace Eigen
