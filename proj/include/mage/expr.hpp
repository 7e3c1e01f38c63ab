// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mage {

// The four phase-space coordinates, in the fixed order used everywhere
// downstream (matrix bases, form bases, sampling boxes).
enum class Var : int { x = 0, y = 1, p = 2, q = 3 };

inline constexpr std::array<Var, 4> kVars{Var::x, Var::y, Var::p, Var::q};

constexpr const char* var_name(Var v) {
  switch (v) {
    case Var::x: return "x";
    case Var::y: return "y";
    case Var::p: return "p";
    case Var::q: return "q";
  }
  return "?";
}

struct Point {
  double x = 0, y = 0, p = 0, q = 0;

  double operator[](Var v) const {
    switch (v) {
      case Var::x: return x;
      case Var::y: return y;
      case Var::p: return p;
      case Var::q: return q;
    }
    return 0;
  }
  double& operator[](Var v) {
    switch (v) {
      case Var::x: return x;
      case Var::y: return y;
      case Var::p: return p;
      default: return q;
    }
  }
};

std::string to_string(const Point& pt);

enum class NodeKind : std::uint8_t {
  Constant,
  Variable,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,  // integer exponent, stored inline
  Sin,
  Cos,
  Exp,
  Ln,
  Sqrt,
  Abs,
  Sign,
};

bool is_unary_fn(NodeKind k);
const char* fn_name(NodeKind k);

// Immutable expression tree. Copies are cheap (shared nodes); all operations
// are pure, so values can be shared freely across threads.
class Expr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    NodeKind kind;
    double value = 0.0;  // Constant
    Var var = Var::x;    // Variable
    int exponent = 0;    // Pow
    NodePtr a, b;
  };

  Expr();            // constant 0
  Expr(double v);    // NOLINT: implicit by design, mirrors numeric literals
  explicit Expr(NodePtr n) : node_(std::move(n)) {}

  static Expr variable(Var v);
  static Expr constant(double v);

  NodeKind kind() const { return node_->kind; }
  double value() const { return node_->value; }
  Var var() const { return node_->var; }
  int exponent() const { return node_->exponent; }
  Expr child0() const { return Expr(node_->a); }
  Expr child1() const { return Expr(node_->b); }
  const NodePtr& node() const { return node_; }

  bool is_constant() const { return node_->kind == NodeKind::Constant; }
  bool is_constant(double v) const {
    return is_constant() && node_->value == v;
  }

  std::size_t node_count() const;

 private:
  NodePtr node_;
};

// Structural equality (same shape, same constants/vars/exponents).
bool equal(const Expr& a, const Expr& b);

// Smart constructors: constant folding plus the 0/1 identities. These are the
// only way trees are built, so parse-produced trees are already canonical.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr exp(const Expr& e);
Expr ln(const Expr& e);
Expr sqrt(const Expr& e);
Expr abs(const Expr& e);
Expr sign(const Expr& e);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax/identifier/exponent problem, with the byte offset into the source
// and a human-readable set of expected tokens.
struct ParseError : Error {
  ParseError(std::size_t off, std::string msg, std::string exp);
  std::size_t offset;
  std::string expected;
};

// ln/sqrt of a negative argument or division by zero at a concrete point.
struct EvalError : Error {
  EvalError(std::string sub, const Point& at, const std::string& what);
  std::string subexpr;
  Point at;
};

// abs/sign hit on a path with a non-vanishing inner derivative.
struct NonDifferentiableError : Error {
  explicit NonDifferentiableError(std::string sub);
  std::string subexpr;
};

Expr parse(std::string_view source);

// Prints a string that reparses to a structurally identical tree.
std::string to_string(const Expr& e);

double evaluate(const Expr& e, const Point& pt);

Expr differentiate(const Expr& e, Var v);

// Bottom-up reapplication of the smart-constructor rewrites.
Expr simplify(const Expr& e);

Expr substitute(const Expr& e, Var v, const Expr& replacement);

bool depends_on(const Expr& e, Var v);

// True when ring normalization (constant folding + polynomial normal form
// over opaque atoms) reduces e to the literal 0. The symbolic half of
// is_zero; never samples.
bool prove_zero(const Expr& e);

}  // namespace mage
