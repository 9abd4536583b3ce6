#include <utility>

#include "lehn/binomial.hpp"
#include "lehn/dsl.hpp"

namespace lehn::dsl {

namespace {

// Error already annotated with the subexpression it arose in; outer eval
// frames rethrow it untouched so the message names the innermost culprit.
class AnnotatedError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void annotate(const Error& err, const ExprPtr& e) {
  if (dynamic_cast<const AnnotatedError*>(&err) != nullptr) throw;
  throw AnnotatedError(std::string(err.what()) + " in '" + print_expr(e) +
                       "'");
}

long scalar_to_long(const Rational& v, const char* what) {
  if (!v.is_integer()) throw Error(std::string(what) + " must be an integer");
  return v.to_long();
}

bool is_constant_series(const Series& s) {
  for (int k = 1; k <= s.order(); ++k)
    if (!s.coefficient(k).is_zero()) return false;
  return true;
}

}  // namespace

Rational evaluate_scalar(const ExprPtr& e, const Bindings& bindings) {
  if (!e) throw Error("empty expression");
  try {
    switch (e->kind) {
      case ExprKind::Literal:
        return e->literal;
      case ExprKind::Variable:
        throw Error("series variable in scalar context");
      case ExprKind::Parameter: {
        auto it = bindings.find(e->parameter);
        if (it == bindings.end())
          throw Error("unbound parameter '" + e->parameter + "'");
        return Rational(it->second);
      }
      case ExprKind::Negate:
        return -evaluate_scalar(e->child0, bindings);
      case ExprKind::Add:
        return evaluate_scalar(e->child0, bindings) +
               evaluate_scalar(e->child1, bindings);
      case ExprKind::Sub:
        return evaluate_scalar(e->child0, bindings) -
               evaluate_scalar(e->child1, bindings);
      case ExprKind::Mul:
        return evaluate_scalar(e->child0, bindings) *
               evaluate_scalar(e->child1, bindings);
      case ExprKind::Div:
        return evaluate_scalar(e->child0, bindings) /
               evaluate_scalar(e->child1, bindings);
      case ExprKind::Pow: {
        Rational base = evaluate_scalar(e->child0, bindings);
        Rational exp = evaluate_scalar(e->child1, bindings);
        return pow(base, scalar_to_long(exp, "scalar exponent"));
      }
      case ExprKind::Sqrt:
        throw Error("sqrt is not defined in scalar context");
      case ExprKind::Binom: {
        Rational top = evaluate_scalar(e->child0, bindings);
        Rational bottom = evaluate_scalar(e->child1, bindings);
        return binom_general(scalar_to_long(top, "binomial argument"),
                             scalar_to_long(bottom, "binomial argument"));
      }
    }
    throw Error("malformed expression");
  } catch (const Error& err) {
    annotate(err, e);
  }
}

Series evaluate(const ExprPtr& e, const Bindings& bindings, Var variable,
                int order) {
  if (!e) throw Error("empty expression");
  try {
    switch (e->kind) {
      case ExprKind::Literal:
        return Series::constant(variable, e->literal, order);
      case ExprKind::Variable: {
        if (e->variable != variable)
          throw Error(std::string("unexpected series variable '") +
                      var_name(e->variable) + "'");
        if (order == 0) return Series(variable, 0);
        return Series::identity(variable, order);
      }
      case ExprKind::Parameter: {
        auto it = bindings.find(e->parameter);
        if (it == bindings.end())
          throw Error("unbound parameter '" + e->parameter + "'");
        return Series::constant(variable, Rational(it->second), order);
      }
      case ExprKind::Negate:
        return -evaluate(e->child0, bindings, variable, order);
      case ExprKind::Add:
        return evaluate(e->child0, bindings, variable, order) +
               evaluate(e->child1, bindings, variable, order);
      case ExprKind::Sub:
        return evaluate(e->child0, bindings, variable, order) -
               evaluate(e->child1, bindings, variable, order);
      case ExprKind::Mul:
        return evaluate(e->child0, bindings, variable, order) *
               evaluate(e->child1, bindings, variable, order);
      case ExprKind::Div: {
        Series num = evaluate(e->child0, bindings, variable, order);
        Series den = evaluate(e->child1, bindings, variable, order);
        if (is_constant_series(den)) {
          Rational c = den.coefficient(0);
          if (c.is_zero()) throw Error("division by zero");
          return num.scaled(Rational(1) / c);
        }
        return num / den;
      }
      case ExprKind::Pow: {
        Series base = evaluate(e->child0, bindings, variable, order);
        Rational exp = evaluate_scalar(e->child1, bindings);
        if (exp.is_integer()) return pow(base, exp.to_long());
        return pow(base, exp);
      }
      case ExprKind::Sqrt:
        return sqrt(evaluate(e->child0, bindings, variable, order));
      case ExprKind::Binom: {
        Rational top = evaluate_scalar(e->child0, bindings);
        Rational bottom = evaluate_scalar(e->child1, bindings);
        Rational value =
            binom_general(scalar_to_long(top, "binomial argument"),
                          scalar_to_long(bottom, "binomial argument"));
        return Series::constant(variable, value, order);
      }
    }
    throw Error("malformed expression");
  } catch (const Error& err) {
    annotate(err, e);
  }
}

bool constraints_satisfied(const std::vector<Constraint>& constraints,
                           const Bindings& bindings) {
  for (const Constraint& c : constraints) {
    Rational lhs = evaluate_scalar(c.lhs, bindings);
    if (c.kind == ConstraintKind::Equal) {
      if (!(lhs == evaluate_scalar(c.rhs, bindings))) return false;
    } else {
      if (!lhs.is_integer()) return false;
      if (lhs.numerator() % 2 != 0) return false;
    }
  }
  return true;
}

std::vector<Bindings> expand_grid(const CheckSpec& spec) {
  std::vector<Bindings> out;
  if (spec.parameters.empty()) {
    Bindings empty;
    if (constraints_satisfied(spec.constraints, empty))
      out.push_back(std::move(empty));
    return out;
  }
  std::vector<long> cursor;
  cursor.reserve(spec.parameters.size());
  for (const ParamRange& p : spec.parameters) cursor.push_back(p.lo);
  while (true) {
    Bindings b;
    for (std::size_t i = 0; i < spec.parameters.size(); ++i)
      b[spec.parameters[i].name] = cursor[i];
    if (constraints_satisfied(spec.constraints, b)) out.push_back(std::move(b));
    std::size_t i = spec.parameters.size();
    while (i > 0) {
      --i;
      if (cursor[i] < spec.parameters[i].hi) {
        ++cursor[i];
        break;
      }
      cursor[i] = spec.parameters[i].lo;
      if (i == 0) return out;
    }
  }
}

}  // namespace lehn::dsl
