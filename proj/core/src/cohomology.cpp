#include "lehn/cohomology.hpp"

#include <sstream>

#include "lehn/binomial.hpp"
#include "lehn/error.hpp"

namespace lehn {

namespace {

void require_dimension(int dimension) {
  if (dimension < 0) throw Error("cohomology: negative dimension");
}

void require_same_dimension(const CohomClass& a, const CohomClass& b) {
  if (a.dimension() != b.dimension())
    throw Error("cohomology: dimension mismatch (" +
                std::to_string(a.dimension()) + " vs " +
                std::to_string(b.dimension()) + ")");
}

}  // namespace

CohomClass::CohomClass(int dimension) {
  require_dimension(dimension);
  coeff_.assign(static_cast<std::size_t>(dimension) + 1, Rational(0));
}

CohomClass CohomClass::from_coefficients(int dimension,
                                         std::vector<Rational> coefficients) {
  require_dimension(dimension);
  if (coefficients.size() > static_cast<std::size_t>(dimension) + 1)
    throw Error("cohomology: more coefficients than the dimension admits");
  CohomClass c(dimension);
  std::move(coefficients.begin(), coefficients.end(), c.coeff_.begin());
  return c;
}

CohomClass CohomClass::constant(int dimension, const Rational& c) {
  CohomClass r(dimension);
  r.coeff_[0] = c;
  return r;
}

CohomClass CohomClass::exp_h(int dimension, const Rational& scale) {
  CohomClass r(dimension);
  Rational term(1);
  r.coeff_[0] = term;
  for (int k = 1; k <= dimension; ++k) {
    term = term * scale / Rational(k);
    r.coeff_[k] = term;
  }
  return r;
}

const Rational& CohomClass::coefficient(int k) const {
  if (k < 0 || k > dimension())
    throw Error("cohomology: degree " + std::to_string(k) +
                " outside dimension " + std::to_string(dimension()));
  return coeff_[static_cast<std::size_t>(k)];
}

CohomClass CohomClass::operator-() const {
  CohomClass r = *this;
  for (auto& c : r.coeff_) c = -c;
  return r;
}

CohomClass CohomClass::scaled(const Rational& c) const {
  CohomClass r = *this;
  for (auto& x : r.coeff_) x *= c;
  return r;
}

CohomClass operator+(const CohomClass& a, const CohomClass& b) {
  require_same_dimension(a, b);
  CohomClass r = a;
  for (std::size_t k = 0; k < r.coeff_.size(); ++k) r.coeff_[k] += b.coeff_[k];
  return r;
}

CohomClass operator-(const CohomClass& a, const CohomClass& b) {
  require_same_dimension(a, b);
  CohomClass r = a;
  for (std::size_t k = 0; k < r.coeff_.size(); ++k) r.coeff_[k] -= b.coeff_[k];
  return r;
}

CohomClass operator*(const CohomClass& a, const CohomClass& b) {
  require_same_dimension(a, b);
  int n = a.dimension();
  CohomClass r(n);
  for (int i = 0; i <= n; ++i) {
    if (a.coeff_[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b.coeff_[j].is_zero()) continue;
      r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
    }
  }
  return r;
}

bool operator==(const CohomClass& a, const CohomClass& b) {
  return a.dimension() == b.dimension() && a.coeff_ == b.coeff_;
}

std::string CohomClass::str() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= dimension(); ++k) {
    const Rational& c = coeff_[k];
    if (c.is_zero()) continue;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (k == 0) {
      os << mag.str();
    } else {
      if (!mag.is_one()) os << mag.str() << "*";
      os << "h";
      if (k > 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  return os.str();
}

KClassData::KClassData(long rank_in, CohomClass ch)
    : rank(rank_in), chern_character(std::move(ch)) {
  if (!(chern_character.coefficient(0) == Rational(rank)))
    throw Error("k-class: degree-0 part of the character (" +
                chern_character.coefficient(0).str() +
                ") does not equal the rank (" + std::to_string(rank) + ")");
}

KClassData k_add(const KClassData& a, const KClassData& b) {
  return KClassData(a.rank + b.rank, a.chern_character + b.chern_character);
}

KClassData k_scale(long m, const KClassData& k) {
  return KClassData(m * k.rank, k.chern_character.scaled(Rational(m)));
}

KClassData ch_tautological(long d, int n) {
  if (n < 1) throw Error("ch_tautological: requires n >= 1");
  CohomClass ch = CohomClass::constant(n, Rational(d + 1)) -
                  CohomClass::exp_h(n, Rational(-1)).scaled(Rational(d - n + 1));
  return KClassData(n, ch);
}

CohomClass ch_to_total_chern(const KClassData& k) {
  int n = k.chern_character.dimension();
  // Power sums from the character: p_m = m! ch_m (scalars, since every
  // degree-m class on P^n is a multiple of h^m).
  std::vector<Rational> p(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int m = 1; m <= n; ++m)
    p[m] = factorial(m) * k.chern_character.coefficient(m);
  // Newton's identities: e_m = (1/m) sum_{i=1..m} (-1)^(i-1) e_{m-i} p_i.
  std::vector<Rational> e(static_cast<std::size_t>(n) + 1, Rational(0));
  e[0] = Rational(1);
  for (int m = 1; m <= n; ++m) {
    Rational acc(0);
    for (int i = 1; i <= m; ++i) {
      Rational term = e[m - i] * p[i];
      acc += (i % 2 == 1) ? term : -term;
    }
    e[m] = acc / Rational(m);
  }
  return CohomClass::from_coefficients(n, std::move(e));
}

CohomClass segre_class(const CohomClass& c) {
  if (!(c.coefficient(0) == Rational(1)))
    throw Error("segre_class: total Chern class must have constant term 1");
  int n = c.dimension();
  std::vector<Rational> sc(static_cast<std::size_t>(n) + 1, Rational(0));
  sc[0] = Rational(1);
  for (int m = 1; m <= n; ++m) {
    Rational acc(0);
    for (int j = 1; j <= m; ++j) acc -= c.coefficient(j) * sc[m - j];
    sc[m] = acc;
  }
  return CohomClass::from_coefficients(n, std::move(sc));
}

Rational segre_integral_p1(long d, int r, int n) {
  if (r < 1) throw Error("segre_integral_p1: requires r >= 1");
  KClassData v = ch_tautological(d, n);
  if (r > 1) v = k_add(v, k_scale(r - 1, ch_tautological(0, n)));
  return segre_class(ch_to_total_chern(v)).integral();
}

}  // namespace lehn
