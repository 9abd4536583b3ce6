#include "lehn/rational.hpp"

#include <cctype>
#include <ostream>

#include "lehn/error.hpp"

namespace lehn {

Rational::Rational(long num, long den) {
  if (den == 0) throw Error("rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& v) : value_(v) { value_.canonicalize(); }

Rational Rational::from_string(const std::string& text) {
  auto valid = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid(text)) throw Error("rational: malformed literal '" + text + "'");
    return Rational(mpq_class(mpz_class(text, 10)));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!valid(num) || !valid(den))
    throw Error("rational: malformed literal '" + text + "'");
  mpz_class d(den, 10);
  if (d == 0) throw Error("rational: zero denominator in '" + text + "'");
  mpq_class q(mpz_class(num, 10), d);
  return Rational(q);
}

long Rational::to_long() const {
  if (!is_integer()) throw Error("rational: " + str() + " is not an integer");
  mpz_class n = value_.get_num();
  if (!n.fits_slong_p()) throw Error("rational: " + str() + " overflows long");
  return n.get_si();
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("rational: division by zero");
  value_ /= o.value_;
  return *this;
}

Rational pow(const Rational& a, long e) {
  if (a.is_zero()) {
    if (e > 0) return Rational(0);
    throw Error("rational: 0 raised to non-positive power");
  }
  mpz_class num, den;
  unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), a.numerator().get_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), a.denominator().get_mpz_t(), mag);
  mpq_class q = e < 0 ? mpq_class(den, num) : mpq_class(num, den);
  return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace lehn
