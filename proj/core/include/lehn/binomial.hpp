#pragma once

#include "lehn/rational.hpp"

namespace lehn {

// Generalized binomial coefficient binom(top, bottom) for integer top of
// either sign and bottom >= 0:
//
//   binom(top, bottom) = top (top-1) ... (top-bottom+1) / bottom!
//
// Always an integer.  Zero exactly when 0 <= top < bottom; never zero for
// negative top.  Throws Error if bottom < 0.
Rational binom_general(long top, long bottom);

// Exact n! as a rational; throws Error if n < 0.
Rational factorial(long n);

}  // namespace lehn
