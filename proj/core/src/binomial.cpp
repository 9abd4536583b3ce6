#include "lehn/binomial.hpp"

#include "lehn/error.hpp"

namespace lehn {

Rational binom_general(long top, long bottom) {
  if (bottom < 0) throw Error("binom: negative bottom argument");
  mpz_class num = 1;
  for (long i = 0; i < bottom; ++i) num *= mpz_class(top - i);
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(bottom));
  mpq_class q(num, den);
  return Rational(q);
}

Rational factorial(long n) {
  if (n < 0) throw Error("factorial: negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace lehn
