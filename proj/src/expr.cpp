// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "mage/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mage {

namespace {

Expr::NodePtr make_node(Expr::Node n) {
  return std::make_shared<const Expr::Node>(std::move(n));
}

std::string format_double(double v) {
  // Shortest representation that round-trips.
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::string to_string(const Point& pt) {
  return "(" + format_double(pt.x) + ", " + format_double(pt.y) + ", " +
         format_double(pt.p) + ", " + format_double(pt.q) + ")";
}

bool is_unary_fn(NodeKind k) {
  switch (k) {
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Exp:
    case NodeKind::Ln:
    case NodeKind::Sqrt:
    case NodeKind::Abs:
    case NodeKind::Sign:
      return true;
    default:
      return false;
  }
}

const char* fn_name(NodeKind k) {
  switch (k) {
    case NodeKind::Sin: return "sin";
    case NodeKind::Cos: return "cos";
    case NodeKind::Exp: return "exp";
    case NodeKind::Ln: return "ln";
    case NodeKind::Sqrt: return "sqrt";
    case NodeKind::Abs: return "abs";
    case NodeKind::Sign: return "sign";
    default: return "?";
  }
}

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0.0
  node_ = make_node({NodeKind::Constant, v, Var::x, 0, nullptr, nullptr});
}

Expr Expr::variable(Var v) {
  return Expr(make_node({NodeKind::Variable, 0.0, v, 0, nullptr, nullptr}));
}

Expr Expr::constant(double v) { return Expr(v); }

std::size_t Expr::node_count() const {
  std::size_t n = 1;
  if (node_->a) n += child0().node_count();
  if (node_->b) n += child1().node_count();
  return n;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::Constant: return a.value() == b.value();
    case NodeKind::Variable: return a.var() == b.var();
    case NodeKind::Pow:
      return a.exponent() == b.exponent() && equal(a.child0(), b.child0());
    default: break;
  }
  if (static_cast<bool>(a.node()->a) != static_cast<bool>(b.node()->a) ||
      static_cast<bool>(a.node()->b) != static_cast<bool>(b.node()->b))
    return false;
  if (a.node()->a && !equal(a.child0(), b.child0())) return false;
  if (a.node()->b && !equal(a.child1(), b.child1())) return false;
  return true;
}

// --- smart constructors ----------------------------------------------------

namespace {

Expr binary(NodeKind k, const Expr& a, const Expr& b) {
  return Expr(make_node({k, 0.0, Var::x, 0, a.node(), b.node()}));
}

Expr unary(NodeKind k, const Expr& a) {
  return Expr(make_node({k, 0.0, Var::x, 0, a.node(), nullptr}));
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.value() + b.value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return binary(NodeKind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.value() - b.value());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  return binary(NodeKind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.value() * b.value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return binary(NodeKind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && b.value() != 0.0)
    return Expr(a.value() / b.value());
  if (b.is_constant(1.0)) return a;
  return binary(NodeKind::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.value());
  if (a.kind() == NodeKind::Neg) return a.child0();
  return unary(NodeKind::Neg, a);
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1.0);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    const double v = std::pow(base.value(), exponent);
    if (std::isfinite(v)) return Expr(v);
  }
  return Expr(make_node(
      {NodeKind::Pow, 0.0, Var::x, exponent, base.node(), nullptr}));
}

namespace {

Expr fold_fn(NodeKind k, const Expr& e) {
  if (e.is_constant()) {
    const double x = e.value();
    double v = 0.0;
    bool ok = true;
    switch (k) {
      case NodeKind::Sin: v = std::sin(x); break;
      case NodeKind::Cos: v = std::cos(x); break;
      case NodeKind::Exp: v = std::exp(x); break;
      case NodeKind::Ln: ok = x > 0.0; v = ok ? std::log(x) : 0.0; break;
      case NodeKind::Sqrt: ok = x >= 0.0; v = ok ? std::sqrt(x) : 0.0; break;
      case NodeKind::Abs: v = std::fabs(x); break;
      case NodeKind::Sign: v = (x > 0.0) - (x < 0.0); break;
      default: ok = false; break;
    }
    if (ok && std::isfinite(v)) return Expr(v);
  }
  return unary(k, e);
}

}  // namespace

Expr sin(const Expr& e) { return fold_fn(NodeKind::Sin, e); }
Expr cos(const Expr& e) { return fold_fn(NodeKind::Cos, e); }
Expr exp(const Expr& e) { return fold_fn(NodeKind::Exp, e); }
Expr ln(const Expr& e) { return fold_fn(NodeKind::Ln, e); }
Expr sqrt(const Expr& e) { return fold_fn(NodeKind::Sqrt, e); }
Expr abs(const Expr& e) { return fold_fn(NodeKind::Abs, e); }
Expr sign(const Expr& e) { return fold_fn(NodeKind::Sign, e); }

// --- errors ----------------------------------------------------------------

ParseError::ParseError(std::size_t off, std::string msg, std::string exp)
    : Error("parse error at offset " + std::to_string(off) + ": " + msg),
      offset(off),
      expected(std::move(exp)) {}

EvalError::EvalError(std::string sub, const Point& at_, const std::string& what)
    : Error("domain error: " + what + " in `" + sub + "` at " + to_string(at_)),
      subexpr(std::move(sub)),
      at(at_) {}

NonDifferentiableError::NonDifferentiableError(std::string sub)
    : Error("non-differentiable node in `" + sub + "`"),
      subexpr(std::move(sub)) {}

// --- parser ----------------------------------------------------------------

namespace {

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() &&
           std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
};

constexpr const char* kPrimaryExpected = "number, identifier, '(' or '-'";

struct Parser {
  Lexer lx;

  [[noreturn]] void fail(std::size_t off, const std::string& msg,
                         const std::string& expected) {
    throw ParseError(off, msg, expected);
  }

  Expr parse_sum() {
    Expr lhs = parse_term();
    while (true) {
      const char c = lx.peek();
      if (c != '+' && c != '-') return lhs;
      ++lx.pos;
      Expr rhs = parse_term();
      lhs = (c == '+') ? lhs + rhs : lhs - rhs;
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (true) {
      const char c = lx.peek();
      if (c != '*' && c != '/') return lhs;
      ++lx.pos;
      Expr rhs = parse_unary();
      lhs = (c == '*') ? lhs * rhs : lhs / rhs;
    }
  }

  Expr parse_unary() {
    if (lx.peek() == '-') {
      ++lx.pos;
      return -parse_unary();
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (lx.peek() != '^') return base;
    ++lx.pos;
    const std::size_t exp_off = (lx.skip_ws(), lx.pos);
    Expr e = parse_unary();  // right-associative; allows x^-2 and x^y^z
    if (!e.is_constant())
      fail(exp_off, "exponent must be a constant integer", "integer literal");
    const double v = e.value();
    if (v != std::floor(v) || std::fabs(v) > 60.0)
      fail(exp_off, "non-integer exponent", "integer literal in [-60, 60]");
    return pow(base, static_cast<int>(v));
  }

  Expr parse_primary() {
    if (lx.at_end())
      fail(lx.pos, "unexpected end of input", kPrimaryExpected);
    const std::size_t off = lx.pos;
    const char c = lx.src[lx.pos];

    if (c == '(') {
      ++lx.pos;
      Expr e = parse_sum();
      if (lx.peek() != ')') fail(lx.pos, "missing ')'", "')'");
      ++lx.pos;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number(off);
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident(off);
    fail(off, std::string("unexpected character '") + c + "'",
         kPrimaryExpected);
  }

  Expr parse_number(std::size_t off) {
    std::size_t i = off;
    while (i < lx.src.size() &&
           (std::isdigit(static_cast<unsigned char>(lx.src[i])) ||
            lx.src[i] == '.'))
      ++i;
    if (i < lx.src.size() && (lx.src[i] == 'e' || lx.src[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < lx.src.size() && (lx.src[j] == '+' || lx.src[j] == '-')) ++j;
      if (j < lx.src.size() &&
          std::isdigit(static_cast<unsigned char>(lx.src[j]))) {
        i = j;
        while (i < lx.src.size() &&
               std::isdigit(static_cast<unsigned char>(lx.src[i])))
          ++i;
      }
    }
    const std::string text(lx.src.substr(off, i - off));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v))
      fail(off, "malformed number", "number");
    lx.pos = i;
    return Expr(v);
  }

  Expr parse_ident(std::size_t off) {
    std::size_t i = off;
    while (i < lx.src.size() &&
           (std::isalnum(static_cast<unsigned char>(lx.src[i])) ||
            lx.src[i] == '_'))
      ++i;
    const std::string name(lx.src.substr(off, i - off));
    lx.pos = i;

    if (name.size() == 1) {
      switch (name[0]) {
        case 'x': return Expr::variable(Var::x);
        case 'y': return Expr::variable(Var::y);
        case 'p': return Expr::variable(Var::p);
        case 'q': return Expr::variable(Var::q);
        default: break;
      }
    }
    static const std::pair<const char*, NodeKind> fns[] = {
        {"sin", NodeKind::Sin}, {"cos", NodeKind::Cos},
        {"exp", NodeKind::Exp}, {"ln", NodeKind::Ln},
        {"sqrt", NodeKind::Sqrt}, {"abs", NodeKind::Abs},
        {"sign", NodeKind::Sign}};
    for (const auto& [fn, kind] : fns) {
      if (name != fn) continue;
      if (lx.peek() != '(')
        fail(lx.pos, "expected '(' after function name", "'('");
      ++lx.pos;
      Expr arg = parse_sum();
      if (lx.peek() != ')') fail(lx.pos, "missing ')'", "')'");
      ++lx.pos;
      return fold_fn(kind, arg);
    }
    fail(off, "unknown identifier '" + name + "'",
         "one of x, y, p, q, sin, cos, exp, ln, sqrt, abs, sign");
  }
};

}  // namespace

Expr parse(std::string_view source) {
  Parser ps{Lexer{source}};
  Expr e = ps.parse_sum();
  if (!ps.lx.at_end())
    ps.fail(ps.lx.pos,
            std::string("trailing input '") + ps.lx.src[ps.lx.pos] + "'",
            "operator or end of input");
  return e;
}

// --- printer ---------------------------------------------------------------

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Add:
    case NodeKind::Sub: return 10;
    case NodeKind::Mul:
    case NodeKind::Div: return 20;
    case NodeKind::Neg: return 30;
    case NodeKind::Pow: return 40;
    case NodeKind::Constant:
      return e.value() < 0.0 ? 30 : 100;  // negative literals print like Neg
    default: return 100;
  }
}

void print(const Expr& e, int parent_prec, std::string& out) {
  const int prec = precedence(e);
  const bool parens = prec < parent_prec;
  if (parens) out += '(';
  switch (e.kind()) {
    case NodeKind::Constant:
      out += format_double(e.value());
      break;
    case NodeKind::Variable:
      out += var_name(e.var());
      break;
    case NodeKind::Neg:
      out += '-';
      print(e.child0(), prec + 1, out);
      break;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      const char op = e.kind() == NodeKind::Add   ? '+'
                      : e.kind() == NodeKind::Sub ? '-'
                      : e.kind() == NodeKind::Mul ? '*'
                                                  : '/';
      print(e.child0(), prec, out);
      out += ' ';
      out += op;
      out += ' ';
      print(e.child1(), prec + 1, out);  // left-associative
      break;
    }
    case NodeKind::Pow:
      print(e.child0(), prec + 1, out);
      out += '^';
      out += std::to_string(e.exponent());
      break;
    default:
      out += fn_name(e.kind());
      out += '(';
      print(e.child0(), 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

// --- evaluation ------------------------------------------------------------

double evaluate(const Expr& e, const Point& pt) {
  switch (e.kind()) {
    case NodeKind::Constant: return e.value();
    case NodeKind::Variable: return pt[e.var()];
    case NodeKind::Neg: return -evaluate(e.child0(), pt);
    case NodeKind::Add: return evaluate(e.child0(), pt) + evaluate(e.child1(), pt);
    case NodeKind::Sub: return evaluate(e.child0(), pt) - evaluate(e.child1(), pt);
    case NodeKind::Mul: return evaluate(e.child0(), pt) * evaluate(e.child1(), pt);
    case NodeKind::Div: {
      const double num = evaluate(e.child0(), pt);
      const double den = evaluate(e.child1(), pt);
      if (den == 0.0) throw EvalError(to_string(e), pt, "division by zero");
      return num / den;
    }
    case NodeKind::Pow: {
      const double b = evaluate(e.child0(), pt);
      if (b == 0.0 && e.exponent() < 0)
        throw EvalError(to_string(e), pt, "zero raised to a negative power");
      return std::pow(b, e.exponent());
    }
    case NodeKind::Sin: return std::sin(evaluate(e.child0(), pt));
    case NodeKind::Cos: return std::cos(evaluate(e.child0(), pt));
    case NodeKind::Exp: return std::exp(evaluate(e.child0(), pt));
    case NodeKind::Ln: {
      const double v = evaluate(e.child0(), pt);
      if (v <= 0.0)
        throw EvalError(to_string(e), pt, "ln of a non-positive argument");
      return std::log(v);
    }
    case NodeKind::Sqrt: {
      const double v = evaluate(e.child0(), pt);
      if (v < 0.0)
        throw EvalError(to_string(e), pt, "sqrt of a negative argument");
      return std::sqrt(v);
    }
    case NodeKind::Abs: return std::fabs(evaluate(e.child0(), pt));
    case NodeKind::Sign: {
      const double v = evaluate(e.child0(), pt);
      return static_cast<double>((v > 0.0) - (v < 0.0));
    }
  }
  throw Error("unreachable node kind");
}

// --- differentiation -------------------------------------------------------

Expr differentiate(const Expr& e, Var v) {
  switch (e.kind()) {
    case NodeKind::Constant: return Expr(0.0);
    case NodeKind::Variable: return Expr(e.var() == v ? 1.0 : 0.0);
    case NodeKind::Neg: return -differentiate(e.child0(), v);
    case NodeKind::Add:
      return differentiate(e.child0(), v) + differentiate(e.child1(), v);
    case NodeKind::Sub:
      return differentiate(e.child0(), v) - differentiate(e.child1(), v);
    case NodeKind::Mul:
      return differentiate(e.child0(), v) * e.child1() +
             e.child0() * differentiate(e.child1(), v);
    case NodeKind::Div:
      return (differentiate(e.child0(), v) * e.child1() -
              e.child0() * differentiate(e.child1(), v)) /
             pow(e.child1(), 2);
    case NodeKind::Pow:
      return Expr(static_cast<double>(e.exponent())) *
             pow(e.child0(), e.exponent() - 1) * differentiate(e.child0(), v);
    case NodeKind::Sin:
      return cos(e.child0()) * differentiate(e.child0(), v);
    case NodeKind::Cos:
      return -sin(e.child0()) * differentiate(e.child0(), v);
    case NodeKind::Exp:
      return exp(e.child0()) * differentiate(e.child0(), v);
    case NodeKind::Ln:
      return differentiate(e.child0(), v) / e.child0();
    case NodeKind::Sqrt:
      return differentiate(e.child0(), v) / (Expr(2.0) * sqrt(e.child0()));
    case NodeKind::Abs:
    case NodeKind::Sign: {
      // Tolerated when the inner derivative vanishes identically; the
      // normalization API rewrites |Pf| to +-Pf before differentiating, so a
      // live abs/sign here is a caller bug.
      Expr inner = differentiate(e.child0(), v);
      if (inner.is_constant(0.0)) return Expr(0.0);
      throw NonDifferentiableError(to_string(e));
    }
  }
  throw Error("unreachable node kind");
}

// --- simplify / substitute -------------------------------------------------

namespace {

void flatten(const Expr& e, NodeKind op, std::vector<Expr>& out) {
  if (e.kind() == op) {
    flatten(e.child0(), op, out);
    flatten(e.child1(), op, out);
  } else {
    out.push_back(e);
  }
}

// Collects the constant part of a +/* chain so trees like (2*x)*2 read 4*x.
Expr collect_mul(const Expr& e) {
  std::vector<Expr> factors;
  flatten(e, NodeKind::Mul, factors);
  double c = 1.0;
  Expr rest(1.0);
  bool have_rest = false;
  for (const Expr& f : factors) {
    if (f.is_constant()) {
      c *= f.value();
    } else {
      rest = have_rest ? binary(NodeKind::Mul, rest, f) : f;
      have_rest = true;
    }
  }
  if (!have_rest) return Expr(c);
  return Expr(c) * rest;
}

Expr collect_add(const Expr& e) {
  std::vector<Expr> terms;
  flatten(e, NodeKind::Add, terms);
  double c = 0.0;
  Expr rest(0.0);
  bool have_rest = false;
  for (const Expr& t : terms) {
    if (t.is_constant()) {
      c += t.value();
    } else {
      rest = have_rest ? binary(NodeKind::Add, rest, t) : t;
      have_rest = true;
    }
  }
  if (!have_rest) return Expr(c);
  return rest + Expr(c);
}

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Constant:
    case NodeKind::Variable: return e;
    case NodeKind::Neg: return -simplify(e.child0());
    case NodeKind::Add:
      return collect_add(simplify(e.child0()) + simplify(e.child1()));
    case NodeKind::Sub: return simplify(e.child0()) - simplify(e.child1());
    case NodeKind::Mul:
      return collect_mul(simplify(e.child0()) * simplify(e.child1()));
    case NodeKind::Div: return simplify(e.child0()) / simplify(e.child1());
    case NodeKind::Pow: return pow(simplify(e.child0()), e.exponent());
    default: return fold_fn(e.kind(), simplify(e.child0()));
  }
}

Expr substitute(const Expr& e, Var v, const Expr& replacement) {
  switch (e.kind()) {
    case NodeKind::Constant: return e;
    case NodeKind::Variable: return e.var() == v ? replacement : e;
    case NodeKind::Neg: return -substitute(e.child0(), v, replacement);
    case NodeKind::Add:
      return substitute(e.child0(), v, replacement) +
             substitute(e.child1(), v, replacement);
    case NodeKind::Sub:
      return substitute(e.child0(), v, replacement) -
             substitute(e.child1(), v, replacement);
    case NodeKind::Mul:
      return substitute(e.child0(), v, replacement) *
             substitute(e.child1(), v, replacement);
    case NodeKind::Div:
      return substitute(e.child0(), v, replacement) /
             substitute(e.child1(), v, replacement);
    case NodeKind::Pow:
      return pow(substitute(e.child0(), v, replacement), e.exponent());
    default:
      return fold_fn(e.kind(), substitute(e.child0(), v, replacement));
  }
}

bool depends_on(const Expr& e, Var v) {
  switch (e.kind()) {
    case NodeKind::Constant: return false;
    case NodeKind::Variable: return e.var() == v;
    default:
      if (e.node()->a && depends_on(e.child0(), v)) return true;
      return e.node()->b && depends_on(e.child1(), v);
  }
}

// --- polynomial normal form over opaque atoms -------------------------------
//
// Ring normalization for prove_zero: +, -, *, and non-negative integer powers
// expand into a canonical monomial map. Any other subtree (sin, sqrt, general
// division, negative powers) is treated as an opaque atom, so e.g.
// x*q - y*p + y*p - x*q cancels exactly while sin-heavy identities fall back
// to sampling.

namespace {

// Monomial: sorted (atom index, exponent) pairs. Atoms 0..3 are x,y,p,q.
using Monomial = std::vector<std::pair<int, int>>;
using Poly = std::map<Monomial, double>;

constexpr std::size_t kMaxPolyTerms = 20000;

struct Atoms {
  std::vector<Expr> exprs;

  Atoms() {
    for (Var v : kVars) exprs.push_back(Expr::variable(v));
  }

  int intern(const Expr& e) {
    for (std::size_t i = 0; i < exprs.size(); ++i)
      if (equal(exprs[i], e)) return static_cast<int>(i);
    exprs.push_back(e);
    return static_cast<int>(exprs.size() - 1);
  }
};

void poly_add_term(Poly& p, const Monomial& m, double c) {
  auto it = p.find(m);
  if (it == p.end()) {
    if (c != 0.0) p.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0.0) p.erase(it);
}

std::optional<Poly> poly_add(const Poly& a, const Poly& b, double sb) {
  Poly r = a;
  for (const auto& [m, c] : b) poly_add_term(r, m, sb * c);
  if (r.size() > kMaxPolyTerms) return std::nullopt;
  return r;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return r;
}

std::optional<Poly> poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      poly_add_term(r, mono_mul(ma, mb), ca * cb);
      if (r.size() > kMaxPolyTerms) return std::nullopt;
    }
  return r;
}

std::optional<Poly> to_poly(const Expr& e, Atoms& atoms);

Poly atom_poly(const Expr& e, Atoms& atoms) {
  return Poly{{Monomial{{atoms.intern(e), 1}}, 1.0}};
}

std::optional<Poly> to_poly(const Expr& e, Atoms& atoms) {
  switch (e.kind()) {
    case NodeKind::Constant: {
      Poly p;
      if (e.value() != 0.0) p.emplace(Monomial{}, e.value());
      return p;
    }
    case NodeKind::Variable:
      return Poly{{Monomial{{static_cast<int>(e.var()), 1}}, 1.0}};
    case NodeKind::Neg: {
      auto a = to_poly(e.child0(), atoms);
      if (!a) return std::nullopt;
      return poly_add(Poly{}, *a, -1.0);
    }
    case NodeKind::Add: {
      auto a = to_poly(e.child0(), atoms);
      auto b = to_poly(e.child1(), atoms);
      if (!a || !b) return std::nullopt;
      return poly_add(*a, *b, 1.0);
    }
    case NodeKind::Sub: {
      auto a = to_poly(e.child0(), atoms);
      auto b = to_poly(e.child1(), atoms);
      if (!a || !b) return std::nullopt;
      return poly_add(*a, *b, -1.0);
    }
    case NodeKind::Mul: {
      auto a = to_poly(e.child0(), atoms);
      auto b = to_poly(e.child1(), atoms);
      if (!a || !b) return std::nullopt;
      return poly_mul(*a, *b);
    }
    case NodeKind::Div: {
      auto b = to_poly(e.child1(), atoms);
      if (b && b->size() == 1 && b->begin()->first.empty()) {
        auto a = to_poly(e.child0(), atoms);
        if (!a) return std::nullopt;
        Poly r;
        for (const auto& [m, c] : *a) r.emplace(m, c / b->begin()->second);
        return r;
      }
      return atom_poly(e, atoms);
    }
    case NodeKind::Pow: {
      if (e.exponent() < 0) return atom_poly(e, atoms);
      auto base = to_poly(e.child0(), atoms);
      if (!base) return std::nullopt;
      Poly r{{Monomial{}, 1.0}};
      for (int i = 0; i < e.exponent(); ++i) {
        auto next = poly_mul(r, *base);
        if (!next) return std::nullopt;
        r = std::move(*next);
      }
      return r;
    }
    default:
      return atom_poly(e, atoms);
  }
}

}  // namespace

bool prove_zero(const Expr& e) {
  Expr s = simplify(e);
  if (s.is_constant()) return s.value() == 0.0;
  Atoms atoms;
  auto p = to_poly(s, atoms);
  return p && p->empty();
}

}  // namespace mage
