#include "rwk/scalar.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rwk {

namespace {

bool is_decimal_integer(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

BigInt BigInt::parse(std::string_view text) {
  if (!is_decimal_integer(text)) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  if (text[0] == '+') text.remove_prefix(1);
  return BigInt(mpz_class(std::string(text), 10));
}

bool BigInt::fits_int64() const {
  static const mpz_class lo(std::to_string(std::numeric_limits<std::int64_t>::min()), 10);
  static const mpz_class hi(std::to_string(std::numeric_limits<std::int64_t>::max()), 10);
  return v_ >= lo && v_ <= hi;
}

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("integer does not fit in 64 bits: " + to_string());
  return static_cast<std::int64_t>(mpz_get_si(v_.get_mpz_t()));
}

std::ostream& operator<<(std::ostream& os, const BigInt& x) { return os << x.to_string(); }

BigInt abs(const BigInt& x) { return BigInt(mpz_class(::abs(x.gmp()))); }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.gmp().get_mpz_t(), b.gmp().get_mpz_t());
  return BigInt(std::move(q));
}

BigInt mod(const BigInt& a, const BigInt& m) {
  if (m.is_zero()) throw std::domain_error("modulus is zero");
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.gmp().get_mpz_t(), m.gmp().get_mpz_t());
  return BigInt(std::move(r));
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.gmp().get_mpz_t(), b.gmp().get_mpz_t());
  return BigInt(std::move(q));
}

bool divides(const BigInt& d, const BigInt& a) {
  if (d.is_zero()) return a.is_zero();
  return mpz_divisible_p(a.gmp().get_mpz_t(), d.gmp().get_mpz_t()) != 0;
}

BigInt gcd(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(::gcd(a.gmp(), b.gmp()))); }

BigInt lcm(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(::lcm(a.gmp(), b.gmp()))); }

BigInt pow(const BigInt& base, unsigned long exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.gmp().get_mpz_t(), exponent);
  return BigInt(std::move(r));
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  v_ = mpq_class(num.gmp(), den.gmp());
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(BigInt::parse(text));
  const auto den = BigInt::parse(text.substr(slash + 1));
  if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(BigInt::parse(text.substr(0, slash)), den);
}

BigInt Rational::to_integer() const {
  if (!is_integer()) throw std::domain_error("not an integer: " + to_string());
  return numerator();
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational operator/(const Rational& a, const Rational& b) {
  Rational r = a;
  r /= b;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

}  // namespace rwk

std::size_t std::hash<rwk::BigInt>::operator()(const rwk::BigInt& x) const noexcept {
  const mpz_srcptr p = x.gmp().get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_sgn(p)) * 0x9e3779b97f4a7c15ULL;
  const std::size_t limbs = mpz_size(p);
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(p, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}
