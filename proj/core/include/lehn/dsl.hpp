#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lehn/error.hpp"
#include "lehn/series.hpp"

namespace lehn::dsl {

// Expression tree for the manifest language.  Nodes are immutable and
// shared; child0/child1 hold the operands (child0 alone for unary nodes,
// base/exponent for Pow, top/bottom for Binom).
enum class ExprKind {
  Literal,    // non-negative integer literal
  Variable,   // series variable w, z, t, or u
  Parameter,  // declared grid parameter
  Negate,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Sqrt,
  Binom,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  Rational literal;            // Literal
  Var variable = Var::other;   // Variable
  std::string parameter;       // Parameter
  ExprPtr child0;
  ExprPtr child1;
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Canonical rendering with minimal parentheses; parsing the result yields a
// structurally identical tree.
std::string print_expr(const ExprPtr& e);

struct ParamRange {
  std::string name;
  long lo = 0;
  long hi = 0;
};

enum class ConstraintKind { Equal, Even };

struct Constraint {
  ConstraintKind kind = ConstraintKind::Equal;
  ExprPtr lhs;
  ExprPtr rhs;  // null for parity constraints
};

// One manifest check: extract the target coefficient of series_expr (after
// the optional change of variables) over the parameter grid and compare it
// with the expected formula.
struct CheckSpec {
  std::string name;
  std::vector<ParamRange> parameters;
  std::vector<Constraint> constraints;
  ExprPtr series_expr;
  ExprPtr change_of_variables;  // null when the check reads coefficients
                                // directly in the inner variable
  ExprPtr target_coefficient;
  ExprPtr expected;
  int order = 0;
  Var inner_variable = Var::other;  // inferred from series_expr
};

bool check_equal(const CheckSpec& a, const CheckSpec& b);

// Parse failure with 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int col);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Parses a complete manifest (one or more checks).  Every identifier must be
// a declared parameter or a series variable; pow exponents must be constant
// or integer-affine in the parameters; exactly one series variable may
// appear in the series expression and the change of variables.
std::vector<CheckSpec> parse_manifest(std::string_view text);

std::string print_check(const CheckSpec& spec);
std::string print_manifest(const std::vector<CheckSpec>& specs);

using Bindings = std::map<std::string, long>;

// Scalar (parameter-only) evaluation; series variables are rejected.
Rational evaluate_scalar(const ExprPtr& e, const Bindings& bindings);

// Series evaluation in the given variable through the given order.  Errors
// from the series layer are annotated with the failing subexpression.
Series evaluate(const ExprPtr& e, const Bindings& bindings, Var variable,
                int order);

bool constraints_satisfied(const std::vector<Constraint>& constraints,
                           const Bindings& bindings);

// All parameter assignments of the grid in declaration order (last
// parameter fastest), filtered by the constraints.
std::vector<Bindings> expand_grid(const CheckSpec& spec);

}  // namespace lehn::dsl
