#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace lehn {

// Arbitrary-precision rational number, always kept in canonical form
// (coprime numerator/denominator, denominator positive).  Thin value-type
// wrapper over GMP's mpq_class; every constructor canonicalizes.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& v);
  explicit Rational(const mpz_class& n) : value_(n) {}

  // Parses "p", "-p", or "p/q" in base 10.  Throws Error on malformed input
  // or zero denominator.
  static Rational from_string(const std::string& text);

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  // Exact conversion to long; throws Error if the value is not an integer
  // or does not fit.
  long to_long() const;

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  // Canonical GMP text form: "p" for integers, "p/q" otherwise.
  std::string str() const { return value_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws Error on division by zero

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c <=> 0;
  }

 private:
  mpq_class value_;
};

// a^e for integer e of either sign; throws Error on 0 raised to e <= 0.
Rational pow(const Rational& a, long e);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace lehn
