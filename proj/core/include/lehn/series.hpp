#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "lehn/rational.hpp"

namespace lehn {

// Formal variable tag carried by every series.  Tags are metadata used to
// catch bookkeeping mistakes: multiplying or dividing series in different
// variables throws, composition retags the result with the inner variable.
enum class Var : char {
  w = 'w',
  z = 'z',
  t = 't',
  u = 'u',
  h = 'h',
  other = '?',
};

char var_name(Var v);
std::optional<Var> var_from_name(char c);

// Truncated formal power series sum_{k=0..order} c_k x^k with exact
// rational coefficients.  Immutable value type; all operations return new
// series.  Binary operations on series of different orders are exact through
// the smaller order and truncate the result to it.
class Series {
 public:
  // Zero series of the given truncation order (order >= 0).
  Series(Var var, int order);

  // Polynomial constructor: coefficients c_0, c_1, ... with the rest zero.
  // Requires coefficients.size() <= order + 1.
  static Series from_coefficients(Var var, int order,
                                  std::vector<Rational> coefficients);
  static Series from_coefficients(Var var, int order,
                                  std::initializer_list<long> coefficients);
  static Series constant(Var var, const Rational& c, int order);
  // The series x itself (requires order >= 1).
  static Series identity(Var var, int order);

  Var var() const { return var_; }
  int order() const { return static_cast<int>(coeff_.size()) - 1; }

  // c_n; throws Error if n < 0 or n > order.
  const Rational& coefficient(int n) const;
  const std::vector<Rational>& coefficients() const { return coeff_; }

  bool is_zero() const;
  // Index of the first nonzero coefficient, or nullopt for the zero series.
  std::optional<int> valuation() const;

  // Same coefficients, truncated to new_order <= order.
  Series truncated(int new_order) const;
  // Same coefficients under a different variable tag.
  Series retagged(Var var) const;

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  // Cauchy product; throws Error on variable tag mismatch.
  friend Series operator*(const Series& a, const Series& b);
  // Exact division; throws Error on tag mismatch or zero constant term in b.
  friend Series operator/(const Series& a, const Series& b);

  Series scaled(const Rational& c) const;

  // Equality compares tags and coefficients through the smaller order.
  friend bool operator==(const Series& a, const Series& b);

  // Human-readable form, e.g. "1 - 2*w + 4/3*w^2 + O(w^4)".
  std::string str() const;

 private:
  Var var_;
  std::vector<Rational> coeff_;  // size order + 1
};

// Structured result of comparing two series through the smaller order.
struct SeriesComparison {
  bool equal = false;
  int compared_order = 0;
  std::optional<int> first_mismatch;  // lowest differing index when unequal
};
SeriesComparison compare(const Series& a, const Series& b);

// f^e for integer e.  Zero constant term is allowed for e >= 0 (the
// valuation is tracked exactly); e < 0 requires a nonzero constant term.
Series pow(const Series& f, long e);

// f^e for rational e.  Integer e delegates to the overload above; a genuinely
// fractional e requires constant term exactly 1.
Series pow(const Series& f, const Rational& e);

// Square root with f(0) = 1; shorthand for pow(f, 1/2).
Series sqrt(const Series& f);

// f(g(x)); requires g(0) = 0.  The result carries g's variable tag and the
// smaller of the two truncation orders.
Series compose(const Series& f, const Series& g);

// Compositional inverse of g: the unique h with g(h(x)) = x, which requires
// g(0) = 0 and g'(0) != 0.  Computed by Lagrange inversion.  The result is
// tagged out_var (defaults to g's own tag).
Series revert(const Series& g);
Series revert(const Series& g, Var out_var);

// c_n -> (-1)^n c_n, i.e. f(-x) with the same tag.
Series alternate_signs(const Series& f);

}  // namespace lehn
