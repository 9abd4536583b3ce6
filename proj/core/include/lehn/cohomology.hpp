#pragma once

#include <vector>

#include "lehn/rational.hpp"

namespace lehn {

// Element of the cohomology ring of P^n with rational coefficients,
// represented as a polynomial in the hyperplane class h modulo h^{n+1}.
// Products truncate at h^n.  Immutable value type.
class CohomClass {
 public:
  explicit CohomClass(int dimension);  // the zero class

  // Coefficients of h^0 ... h^k; at most dimension+1 entries, rest zero.
  static CohomClass from_coefficients(int dimension,
                                      std::vector<Rational> coefficients);
  static CohomClass constant(int dimension, const Rational& c);
  // exp(scale * h) truncated at h^dimension, with exact factorials.
  static CohomClass exp_h(int dimension, const Rational& scale);

  int dimension() const { return static_cast<int>(coeff_.size()) - 1; }
  // Coefficient of h^k; throws Error if k < 0 or k > dimension.
  const Rational& coefficient(int k) const;
  const std::vector<Rational>& coefficients() const { return coeff_; }

  // Integral over P^n of the class, i.e. the coefficient of h^n.
  const Rational& integral() const { return coeff_.back(); }

  CohomClass operator-() const;
  CohomClass scaled(const Rational& c) const;
  friend CohomClass operator+(const CohomClass& a, const CohomClass& b);
  friend CohomClass operator-(const CohomClass& a, const CohomClass& b);
  friend CohomClass operator*(const CohomClass& a, const CohomClass& b);
  friend bool operator==(const CohomClass& a, const CohomClass& b);

  std::string str() const;

 private:
  std::vector<Rational> coeff_;  // size dimension + 1
};

// K-theory class on P^n presented by rank and Chern character.  The degree-0
// part of the character always equals the rank.
struct KClassData {
  long rank = 0;
  CohomClass chern_character;

  KClassData(long rank, CohomClass ch);
};

// Direct sum and integer multiple in K-theory (characters are additive).
KClassData k_add(const KClassData& a, const KClassData& b);
KClassData k_scale(long m, const KClassData& k);

// Chern character of the rank-n tautological bundle of O(d) on the Hilbert
// scheme of n points of the projective line, which is P^n itself:
//
//   ch = (d+1) - (d-n+1) exp(-h)
//
// Requires n >= 1.
KClassData ch_tautological(long d, int n);

// Total Chern class from the Chern character via Newton's identities on the
// power sums p_k = k! ch_k; Chern roots are never materialized.
CohomClass ch_to_total_chern(const KClassData& k);

// Multiplicative inverse of a total Chern class; requires constant term 1.
CohomClass segre_class(const CohomClass& c);

// Degree-n Segre number of V^[n] on P^n for V = O^(r-1) + O(d) on P^1,
// assembled through the full character -> Chern -> Segre pipeline.
// Requires r >= 1 and n >= 1.
Rational segre_integral_p1(long d, int r, int n);

}  // namespace lehn
