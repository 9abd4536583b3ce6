#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <utility>

#include "lehn/dsl.hpp"

namespace lehn::dsl {

ParseError::ParseError(const std::string& message, int line, int col)
    : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
            ": " + message),
      line_(line),
      col_(col) {}

namespace {

enum class Tok {
  Ident,
  Number,
  String,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Semi,
  Comma,
  Caret,
  Star,
  Slash,
  Plus,
  Minus,
  Assign,
  EqEq,
  DotDot,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line = 1;
  int col = 1;
};

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> kw = {
      "check", "params", "require", "in",    "even", "series",
      "subst", "expect", "coeff",   "order", "sqrt", "binom"};
  return kw;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      std::size_t j = i;
      while (j < text.size() && text[j] != '\n') ++j;
      bump(j - i);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      t.kind = Tok::Ident;
      t.text = std::string(text.substr(i, j - i));
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      t.kind = Tok::Number;
      t.text = std::string(text.substr(i, j - i));
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        throw ParseError("unterminated string", line, col);
      t.kind = Tok::String;
      t.text = std::string(text.substr(i + 1, j - i - 1));
      bump(j - i + 1);
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '{': t.kind = Tok::LBrace; break;
      case '}': t.kind = Tok::RBrace; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case ';': t.kind = Tok::Semi; break;
      case ',': t.kind = Tok::Comma; break;
      case '^': t.kind = Tok::Caret; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          t.kind = Tok::EqEq;
          bump(2);
          out.push_back(std::move(t));
          continue;
        }
        t.kind = Tok::Assign;
        break;
      case '.':
        if (i + 1 < text.size() && text[i + 1] == '.') {
          t.kind = Tok::DotDot;
          bump(2);
          out.push_back(std::move(t));
          continue;
        }
        throw ParseError("unexpected character '.'", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line, col);
    }
    bump(1);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr literal(Rational v) {
  Expr e;
  e.kind = ExprKind::Literal;
  e.literal = std::move(v);
  return make(std::move(e));
}

ExprPtr unary(ExprKind k, ExprPtr c) {
  Expr e;
  e.kind = k;
  e.child0 = std::move(c);
  return make(std::move(e));
}

ExprPtr binary(ExprKind k, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = k;
  e.child0 = std::move(a);
  e.child1 = std::move(b);
  return make(std::move(e));
}

bool contains_kind(const ExprPtr& e, ExprKind k) {
  if (!e) return false;
  if (e->kind == k) return true;
  return contains_kind(e->child0, k) || contains_kind(e->child1, k);
}

bool is_constant_expr(const ExprPtr& e) {
  return !contains_kind(e, ExprKind::Parameter) &&
         !contains_kind(e, ExprKind::Variable);
}

bool is_affine(const ExprPtr& e) {
  if (!e) return false;
  switch (e->kind) {
    case ExprKind::Literal:
    case ExprKind::Parameter:
      return true;
    case ExprKind::Negate:
      return is_affine(e->child0);
    case ExprKind::Add:
    case ExprKind::Sub:
      return is_affine(e->child0) && is_affine(e->child1);
    case ExprKind::Mul:
      return (is_constant_expr(e->child0) && is_affine(e->child1)) ||
             (is_affine(e->child0) && is_constant_expr(e->child1));
    case ExprKind::Div:
      return is_affine(e->child0) && is_constant_expr(e->child1);
    default:
      return is_constant_expr(e);
  }
}

void collect_variables(const ExprPtr& e, std::set<Var>& out) {
  if (!e) return;
  if (e->kind == ExprKind::Variable) out.insert(e->variable);
  collect_variables(e->child0, out);
  collect_variables(e->child1, out);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  std::vector<CheckSpec> parse() {
    std::vector<CheckSpec> checks;
    std::set<std::string> names;
    while (peek().kind != Tok::End) checks.push_back(parse_check(names));
    if (checks.empty())
      throw ParseError("expected 'check'", peek().line, peek().col);
    return checks;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> params_;
  int depth_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw ParseError(message, at.line, at.col);
  }

  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what, peek());
    return advance();
  }

  bool peek_keyword(const std::string& word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  void expect_keyword(const std::string& word) {
    if (!peek_keyword(word)) fail("expected '" + word + "'", peek());
    ++pos_;
  }

  long signed_integer(const std::string& what) {
    bool neg = accept(Tok::Minus);
    const Token& num = expect(Tok::Number, what);
    Rational v = Rational::from_string(num.text);
    if (neg) v = -v;
    try {
      return v.to_long();
    } catch (const Error&) {
      fail(what + " out of range", num);
    }
  }

  CheckSpec parse_check(std::set<std::string>& names) {
    expect_keyword("check");
    const Token& name_tok = expect(Tok::String, "check name string");
    if (name_tok.text.empty()) fail("empty check name", name_tok);
    if (!names.insert(name_tok.text).second)
      fail("duplicate check name \"" + name_tok.text + "\"", name_tok);

    CheckSpec spec;
    spec.name = name_tok.text;
    params_.clear();

    expect(Tok::LBrace, "'{'");
    if (peek_keyword("params")) {
      ++pos_;
      do {
        spec.parameters.push_back(parse_param());
      } while (accept(Tok::Comma));
    }
    if (peek_keyword("require")) {
      ++pos_;
      do {
        spec.constraints.push_back(parse_constraint());
      } while (accept(Tok::Comma));
    }

    const Token* series_tok = nullptr;
    const Token* coeff_tok = nullptr;
    const Token* expect_tok = nullptr;
    const Token* order_tok = nullptr;
    while (!accept(Tok::RBrace)) {
      if (peek().kind == Tok::End) fail("expected clause or '}'", peek());
      const Token& kw = expect(Tok::Ident, "clause keyword");
      ExprPtr* slot = nullptr;
      if (kw.text == "series") {
        slot = &spec.series_expr;
        series_tok = &kw;
      } else if (kw.text == "subst") {
        slot = &spec.change_of_variables;
      } else if (kw.text == "coeff") {
        slot = &spec.target_coefficient;
        coeff_tok = &kw;
      } else if (kw.text == "expect") {
        slot = &spec.expected;
        expect_tok = &kw;
      } else if (kw.text != "order") {
        fail("expected one of 'series', 'subst', 'coeff', 'expect', 'order'",
             kw);
      }
      if (slot != nullptr && *slot)
        fail("duplicate '" + kw.text + "' clause", kw);
      expect(Tok::Assign, "'='");
      ExprPtr value = parse_expr();
      expect(Tok::Semi, "';'");
      if (slot != nullptr) {
        *slot = std::move(value);
      } else {
        if (order_tok != nullptr) fail("duplicate 'order' clause", kw);
        order_tok = &kw;
        spec.order = clause_order(value, kw);
      }
    }

    if (!spec.series_expr) fail("missing 'series' clause", name_tok);
    if (!spec.target_coefficient) fail("missing 'coeff' clause", name_tok);
    if (!spec.expected) fail("missing 'expect' clause", name_tok);
    if (order_tok == nullptr) fail("missing 'order' clause", name_tok);

    std::set<Var> vars;
    collect_variables(spec.series_expr, vars);
    if (vars.empty())
      fail("series expression contains no series variable", *series_tok);
    if (vars.size() > 1)
      fail("series expression mixes series variables", *series_tok);
    spec.inner_variable = *vars.begin();

    if (spec.change_of_variables) {
      std::set<Var> svars;
      collect_variables(spec.change_of_variables, svars);
      if (svars.empty())
        fail("change of variables contains no series variable", *series_tok);
      if (svars.size() > 1 || *svars.begin() != spec.inner_variable)
        fail("change of variables must use the series variable alone",
             *series_tok);
    }
    if (contains_kind(spec.target_coefficient, ExprKind::Variable))
      fail("series variable not allowed in 'coeff'", *coeff_tok);
    if (contains_kind(spec.expected, ExprKind::Variable))
      fail("series variable not allowed in 'expect'", *expect_tok);
    return spec;
  }

  int clause_order(const ExprPtr& value, const Token& at) {
    if (!is_constant_expr(value))
      fail("'order' must be a constant expression", at);
    Rational v;
    try {
      v = evaluate_scalar(value, {});
    } catch (const Error& e) {
      fail(std::string("invalid 'order' value: ") + e.what(), at);
    }
    if (!v.is_integer() || v.sign() < 0)
      fail("'order' must be a non-negative integer", at);
    long n;
    try {
      n = v.to_long();
    } catch (const Error&) {
      fail("'order' out of range", at);
    }
    if (n > 1 << 20) fail("'order' unreasonably large", at);
    return static_cast<int>(n);
  }

  ParamRange parse_param() {
    const Token& name = expect(Tok::Ident, "parameter name");
    if (reserved_words().count(name.text))
      fail("reserved word cannot name a parameter", name);
    if (name.text.size() == 1 && var_from_name(name.text[0]))
      fail("parameter name shadows a series variable", name);
    if (!params_.insert(name.text).second)
      fail("duplicate parameter '" + name.text + "'", name);
    expect_keyword("in");
    long lo = signed_integer("range bound");
    expect(Tok::DotDot, "'..'");
    long hi = signed_integer("range bound");
    if (lo > hi) fail("empty parameter range", name);
    return {name.text, lo, hi};
  }

  Constraint parse_constraint() {
    const Token& start = peek();
    Constraint c;
    c.lhs = parse_expr();
    if (accept(Tok::EqEq)) {
      c.kind = ConstraintKind::Equal;
      c.rhs = parse_expr();
    } else if (peek_keyword("even")) {
      ++pos_;
      c.kind = ConstraintKind::Even;
    } else {
      fail("expected '==' or 'even'", peek());
    }
    if (contains_kind(c.lhs, ExprKind::Variable) ||
        (c.rhs && contains_kind(c.rhs, ExprKind::Variable)))
      fail("series variable not allowed in a constraint", start);
    if (!is_affine(c.lhs) || (c.rhs && !is_affine(c.rhs)))
      fail("constraint must be affine in the parameters", start);
    return c;
  }

  ExprPtr parse_expr() {
    if (++depth_ > 256) fail("expression too deeply nested", peek());
    ExprPtr node;
    if (accept(Tok::Minus)) {
      node = unary(ExprKind::Negate, parse_term());
    } else {
      node = parse_term();
    }
    while (true) {
      if (accept(Tok::Plus)) {
        node = binary(ExprKind::Add, std::move(node), parse_term());
      } else if (accept(Tok::Minus)) {
        node = binary(ExprKind::Sub, std::move(node), parse_term());
      } else {
        break;
      }
    }
    --depth_;
    return node;
  }

  ExprPtr parse_term() {
    ExprPtr node = parse_factor();
    while (true) {
      if (accept(Tok::Star)) {
        node = binary(ExprKind::Mul, std::move(node), parse_factor());
      } else if (accept(Tok::Slash)) {
        node = binary(ExprKind::Div, std::move(node), parse_factor());
      } else if (peek().kind == Tok::LParen ||
                 (peek().kind == Tok::Ident &&
                  !reserved_words().count(peek().text))) {
        // Adjacency is multiplication: "2w", "2(1-w)", "(1-w)(1-2w)".
        node = binary(ExprKind::Mul, std::move(node), parse_factor());
      } else {
        break;
      }
    }
    return node;
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_base();
    if (!accept(Tok::Caret)) return base;
    return binary(ExprKind::Pow, std::move(base), parse_exponent());
  }

  ExprPtr parse_exponent() {
    const Token& at = peek();
    if (at.kind == Tok::Number) {
      ++pos_;
      return literal(Rational::from_string(at.text));
    }
    if (at.kind == Tok::LParen) {
      ++pos_;
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      if (contains_kind(e, ExprKind::Variable))
        fail("series variable not allowed in an exponent", at);
      if (!is_constant_expr(e) && !is_affine(e))
        fail("exponent must be a rational constant or affine in the "
             "parameters",
             at);
      return e;
    }
    fail("expected integer or parenthesized exponent", at);
  }

  ExprPtr parse_base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        ++pos_;
        return literal(Rational::from_string(t.text));
      case Tok::LParen: {
        ++pos_;
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        if (t.text == "sqrt") {
          ++pos_;
          expect(Tok::LParen, "'('");
          ExprPtr arg = parse_expr();
          expect(Tok::RParen, "')'");
          return unary(ExprKind::Sqrt, std::move(arg));
        }
        if (t.text == "binom") {
          ++pos_;
          expect(Tok::LParen, "'('");
          ExprPtr top = parse_expr();
          expect(Tok::Comma, "','");
          ExprPtr bottom = parse_expr();
          expect(Tok::RParen, "')'");
          return binary(ExprKind::Binom, std::move(top), std::move(bottom));
        }
        if (reserved_words().count(t.text))
          fail("unexpected keyword '" + t.text + "'", t);
        ++pos_;
        if (params_.count(t.text)) {
          Expr e;
          e.kind = ExprKind::Parameter;
          e.parameter = t.text;
          return make(std::move(e));
        }
        if (t.text.size() == 1) {
          if (auto v = var_from_name(t.text[0]); v && *v != Var::h) {
            Expr e;
            e.kind = ExprKind::Variable;
            e.variable = *v;
            return make(std::move(e));
          }
        }
        fail("undeclared identifier '" + t.text + "'", t);
      }
      default:
        fail("expected a number, identifier, or '('", t);
    }
  }
};

int node_precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Negate:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string print_rec(const ExprPtr& e, int min_prec) {
  std::string s;
  switch (e->kind) {
    case ExprKind::Literal:
      s = e->literal.str();
      break;
    case ExprKind::Variable:
      s = std::string(1, var_name(e->variable));
      break;
    case ExprKind::Parameter:
      s = e->parameter;
      break;
    case ExprKind::Negate:
      s = "-" + print_rec(e->child0, 2);
      break;
    case ExprKind::Add:
      s = print_rec(e->child0, 1) + " + " + print_rec(e->child1, 2);
      break;
    case ExprKind::Sub:
      s = print_rec(e->child0, 1) + " - " + print_rec(e->child1, 2);
      break;
    case ExprKind::Mul:
      s = print_rec(e->child0, 2) + "*" + print_rec(e->child1, 3);
      break;
    case ExprKind::Div:
      s = print_rec(e->child0, 2) + "/" + print_rec(e->child1, 3);
      break;
    case ExprKind::Pow: {
      std::string exp = e->child1->kind == ExprKind::Literal
                            ? e->child1->literal.str()
                            : "(" + print_rec(e->child1, 0) + ")";
      s = print_rec(e->child0, 5) + "^" + exp;
      break;
    }
    case ExprKind::Sqrt:
      s = "sqrt(" + print_rec(e->child0, 0) + ")";
      break;
    case ExprKind::Binom:
      s = "binom(" + print_rec(e->child0, 0) + ", " + print_rec(e->child1, 0) +
          ")";
      break;
  }
  if (node_precedence(e->kind) < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::vector<CheckSpec> parse_manifest(std::string_view text) {
  return Parser(text).parse();
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Literal:
      if (!(a->literal == b->literal)) return false;
      break;
    case ExprKind::Variable:
      if (a->variable != b->variable) return false;
      break;
    case ExprKind::Parameter:
      if (a->parameter != b->parameter) return false;
      break;
    default:
      break;
  }
  return expr_equal(a->child0, b->child0) && expr_equal(a->child1, b->child1);
}

std::string print_expr(const ExprPtr& e) {
  if (!e) return "";
  return print_rec(e, 0);
}

bool check_equal(const CheckSpec& a, const CheckSpec& b) {
  if (a.name != b.name || a.order != b.order ||
      a.inner_variable != b.inner_variable ||
      a.parameters.size() != b.parameters.size() ||
      a.constraints.size() != b.constraints.size())
    return false;
  for (std::size_t i = 0; i < a.parameters.size(); ++i) {
    const ParamRange& pa = a.parameters[i];
    const ParamRange& pb = b.parameters[i];
    if (pa.name != pb.name || pa.lo != pb.lo || pa.hi != pb.hi) return false;
  }
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    const Constraint& ca = a.constraints[i];
    const Constraint& cb = b.constraints[i];
    if (ca.kind != cb.kind || !expr_equal(ca.lhs, cb.lhs) ||
        !expr_equal(ca.rhs, cb.rhs))
      return false;
  }
  return expr_equal(a.series_expr, b.series_expr) &&
         expr_equal(a.change_of_variables, b.change_of_variables) &&
         expr_equal(a.target_coefficient, b.target_coefficient) &&
         expr_equal(a.expected, b.expected);
}

std::string print_check(const CheckSpec& spec) {
  std::ostringstream os;
  os << "check \"" << spec.name << "\" {\n";
  if (!spec.parameters.empty()) {
    os << "  params ";
    for (std::size_t i = 0; i < spec.parameters.size(); ++i) {
      if (i) os << ", ";
      os << spec.parameters[i].name << " in " << spec.parameters[i].lo << ".."
         << spec.parameters[i].hi;
    }
    os << "\n";
  }
  if (!spec.constraints.empty()) {
    os << "  require ";
    for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
      if (i) os << ", ";
      const Constraint& c = spec.constraints[i];
      os << print_expr(c.lhs);
      if (c.kind == ConstraintKind::Equal) {
        os << " == " << print_expr(c.rhs);
      } else {
        os << " even";
      }
    }
    os << "\n";
  }
  os << "  series = " << print_expr(spec.series_expr) << ";\n";
  if (spec.change_of_variables)
    os << "  subst = " << print_expr(spec.change_of_variables) << ";\n";
  os << "  coeff = " << print_expr(spec.target_coefficient) << ";\n";
  os << "  expect = " << print_expr(spec.expected) << ";\n";
  os << "  order = " << spec.order << ";\n";
  os << "}\n";
  return os.str();
}

std::string print_manifest(const std::vector<CheckSpec>& specs) {
  std::string out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (i) out += "\n";
    out += print_check(specs[i]);
  }
  return out;
}

}  // namespace lehn::dsl
