#include "lehn/series.hpp"

#include <algorithm>
#include <sstream>

#include "lehn/error.hpp"

namespace lehn {

char var_name(Var v) { return static_cast<char>(v); }

std::optional<Var> var_from_name(char c) {
  switch (c) {
    case 'w': return Var::w;
    case 'z': return Var::z;
    case 't': return Var::t;
    case 'u': return Var::u;
    case 'h': return Var::h;
    default: return std::nullopt;
  }
}

namespace {

void require_order(int order) {
  if (order < 0) throw Error("series: negative truncation order");
}

void require_same_var(const Series& a, const Series& b, const char* op) {
  if (a.var() != b.var()) {
    std::string msg = "series: variable tag mismatch in ";
    msg += op;
    msg += " (";
    msg += var_name(a.var());
    msg += " vs ";
    msg += var_name(b.var());
    msg += ")";
    throw Error(msg);
  }
}

int min_order(const Series& a, const Series& b) {
  return std::min(a.order(), b.order());
}

}  // namespace

Series::Series(Var var, int order) : var_(var) {
  require_order(order);
  coeff_.assign(static_cast<std::size_t>(order) + 1, Rational(0));
}

Series Series::from_coefficients(Var var, int order,
                                 std::vector<Rational> coefficients) {
  require_order(order);
  if (coefficients.size() > static_cast<std::size_t>(order) + 1)
    throw Error("series: more coefficients than the truncation order admits");
  Series s(var, order);
  std::move(coefficients.begin(), coefficients.end(), s.coeff_.begin());
  return s;
}

Series Series::from_coefficients(Var var, int order,
                                 std::initializer_list<long> coefficients) {
  std::vector<Rational> c;
  c.reserve(coefficients.size());
  for (long v : coefficients) c.emplace_back(v);
  return from_coefficients(var, order, std::move(c));
}

Series Series::constant(Var var, const Rational& c, int order) {
  Series s(var, order);
  s.coeff_[0] = c;
  return s;
}

Series Series::identity(Var var, int order) {
  if (order < 1) throw Error("series: identity requires order >= 1");
  Series s(var, order);
  s.coeff_[1] = Rational(1);
  return s;
}

const Rational& Series::coefficient(int n) const {
  if (n < 0 || n > order())
    throw Error("series: coefficient index " + std::to_string(n) +
                " outside truncation order " + std::to_string(order()));
  return coeff_[static_cast<std::size_t>(n)];
}

bool Series::is_zero() const {
  return std::all_of(coeff_.begin(), coeff_.end(),
                     [](const Rational& c) { return c.is_zero(); });
}

std::optional<int> Series::valuation() const {
  for (std::size_t k = 0; k < coeff_.size(); ++k)
    if (!coeff_[k].is_zero()) return static_cast<int>(k);
  return std::nullopt;
}

Series Series::truncated(int new_order) const {
  require_order(new_order);
  if (new_order > order())
    throw Error("series: cannot extend truncation order " +
                std::to_string(order()) + " to " + std::to_string(new_order));
  Series s(var_, new_order);
  std::copy_n(coeff_.begin(), new_order + 1, s.coeff_.begin());
  return s;
}

Series Series::retagged(Var var) const {
  Series s = *this;
  s.var_ = var;
  return s;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& c : s.coeff_) c = -c;
  return s;
}

Series operator+(const Series& a, const Series& b) {
  int n = min_order(a, b);
  Series s(a.var_, n);
  for (int k = 0; k <= n; ++k) s.coeff_[k] = a.coeff_[k] + b.coeff_[k];
  return s;
}

Series operator-(const Series& a, const Series& b) {
  int n = min_order(a, b);
  Series s(a.var_, n);
  for (int k = 0; k <= n; ++k) s.coeff_[k] = a.coeff_[k] - b.coeff_[k];
  return s;
}

Series operator*(const Series& a, const Series& b) {
  require_same_var(a, b, "multiplication");
  int n = min_order(a, b);
  Series s(a.var_, n);
  for (int i = 0; i <= n; ++i) {
    if (a.coeff_[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b.coeff_[j].is_zero()) continue;
      s.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
    }
  }
  return s;
}

Series operator/(const Series& a, const Series& b) {
  require_same_var(a, b, "division");
  if (b.coeff_[0].is_zero())
    throw Error("series: division by a series with zero constant term");
  int n = min_order(a, b);
  Series s(a.var_, n);
  for (int k = 0; k <= n; ++k) {
    Rational acc = a.coeff_[k];
    for (int j = 1; j <= k; ++j) acc -= b.coeff_[j] * s.coeff_[k - j];
    s.coeff_[k] = acc / b.coeff_[0];
  }
  return s;
}

Series Series::scaled(const Rational& c) const {
  Series s = *this;
  for (auto& x : s.coeff_) x *= c;
  return s;
}

bool operator==(const Series& a, const Series& b) {
  return a.var() == b.var() && compare(a, b).equal;
}

SeriesComparison compare(const Series& a, const Series& b) {
  SeriesComparison r;
  r.compared_order = min_order(a, b);
  r.equal = true;
  for (int k = 0; k <= r.compared_order; ++k) {
    if (a.coefficient(k) == b.coefficient(k)) continue;
    r.equal = false;
    r.first_mismatch = k;
    break;
  }
  return r;
}

std::string Series::str() const {
  std::ostringstream os;
  char x = var_name(var_);
  bool first = true;
  for (int k = 0; k <= order(); ++k) {
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
      os << x;
      if (k > 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  os << " + O(" << x << "^" << order() + 1 << ")";
  return os.str();
}

namespace {

// Core of both pow overloads: g = f^e with f(0) nonzero, via the first-order
// differential recurrence obtained from f g' = e f' g:
//
//   g_0 = f_0^e,   g_n = (1 / (n f_0)) sum_{k=1..n} ((e+1) k - n) f_k g_{n-k}
//
// g_0 is supplied by the caller, which keeps this applicable to both integer
// exponents (f_0^e rational) and fractional exponents (f_0 = 1).
Series pow_unit(const Series& f, const Rational& e, const Rational& g0) {
  int n = f.order();
  Series g = Series::constant(f.var(), g0, n);
  std::vector<Rational> gc = g.coefficients();
  const std::vector<Rational>& fc = f.coefficients();
  const Rational& f0 = fc[0];
  for (int m = 1; m <= n; ++m) {
    Rational acc(0);
    for (int k = 1; k <= m; ++k) {
      if (fc[k].is_zero()) continue;
      Rational weight = (e + Rational(1)) * Rational(k) - Rational(m);
      acc += weight * fc[k] * gc[m - k];
    }
    gc[m] = acc / (Rational(m) * f0);
  }
  return Series::from_coefficients(f.var(), n, std::move(gc));
}

}  // namespace

Series pow(const Series& f, long e) {
  int n = f.order();
  if (e == 0) return Series::constant(f.var(), Rational(1), n);
  auto val = f.valuation();
  if (!val) {
    if (e > 0) return Series(f.var(), n);
    throw Error("series: negative power of the zero series");
  }
  if (*val == 0) return pow_unit(f, Rational(e), pow(f.coefficient(0), e));
  if (e < 0)
    throw Error("series: negative power of a series with zero constant term");
  // Strip the valuation: f = x^v u with u(0) != 0, so f^e = x^(v e) u^e.
  long shift = static_cast<long>(*val) * e;
  if (shift > n) return Series(f.var(), n);
  int m = n - static_cast<int>(shift);
  std::vector<Rational> uc(f.coefficients().begin() + *val,
                           f.coefficients().begin() + *val + m + 1);
  Series u = Series::from_coefficients(f.var(), m, std::move(uc));
  Series ue = pow_unit(u, Rational(e), pow(u.coefficient(0), e));
  Series out(f.var(), n);
  std::vector<Rational> oc = out.coefficients();
  for (int k = 0; k <= m; ++k) oc[k + shift] = ue.coefficient(k);
  return Series::from_coefficients(f.var(), n, std::move(oc));
}

Series pow(const Series& f, const Rational& e) {
  if (e.is_integer()) return pow(f, e.to_long());
  if (!(f.coefficient(0) == Rational(1)))
    throw Error(
        "series: fractional power requires constant term 1, found " +
        f.coefficient(0).str());
  return pow_unit(f, e, Rational(1));
}

Series sqrt(const Series& f) { return pow(f, Rational(1, 2)); }

Series compose(const Series& f, const Series& g) {
  if (!g.coefficient(0).is_zero())
    throw Error("series: composition requires inner constant term 0, found " +
                g.coefficient(0).str());
  int n = std::min(f.order(), g.order());
  Series gn = g.truncated(n);
  Series acc = Series::constant(g.var(), f.coefficient(n), n);
  for (int k = n - 1; k >= 0; --k) {
    acc = acc * gn;
    acc = acc + Series::constant(g.var(), f.coefficient(k), n);
  }
  return acc;
}

Series revert(const Series& g, Var out_var) {
  int n = g.order();
  if (n < 1) throw Error("series: reversion requires order >= 1");
  if (!g.coefficient(0).is_zero())
    throw Error("series: reversion requires constant term 0, found " +
                g.coefficient(0).str());
  if (g.coefficient(1).is_zero())
    throw Error("series: reversion requires nonzero linear coefficient");
  // Lagrange inversion: h_m = (1/m) [x^(m-1)] (x / g)^m.  The shifted series
  // s = g/x has nonzero constant term, and (x/g)^m = (1/s)^m.
  std::vector<Rational> sc(g.coefficients().begin() + 1,
                           g.coefficients().end());
  Series s = Series::from_coefficients(g.var(), n - 1, std::move(sc));
  Series inv = Series::constant(g.var(), Rational(1), n - 1) / s;
  Series p = Series::constant(g.var(), Rational(1), n - 1);
  std::vector<Rational> hc(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int m = 1; m <= n; ++m) {
    p = p * inv;
    hc[m] = p.coefficient(m - 1) / Rational(m);
  }
  return Series::from_coefficients(out_var, n, std::move(hc));
}

Series revert(const Series& g) { return revert(g, g.var()); }

Series alternate_signs(const Series& f) {
  Series s = f;
  std::vector<Rational> c = s.coefficients();
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return Series::from_coefficients(f.var(), f.order(), std::move(c));
}

}  // namespace lehn
