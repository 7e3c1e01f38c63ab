// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "mage/expr.hpp"
#include "mage/sample.hpp"
#include "test_util.hpp"

using namespace mage;
using namespace mage::testutil;

TEST_CASE("parse: grammar basics") {
  CHECK(evaluate(parse("p^2 + sin(x)"), {0, 0, 2, 0}) == doctest::Approx(4.0));
  CHECK(parse("x*q - y*p").node_count() == 7);
  CHECK(evaluate(parse("x*q - y*p"), {1, 2, 3, 4}) == doctest::Approx(-2.0));
  CHECK(evaluate(parse("p"), {0, 0, 2, 0}) == 2.0);

  // Precedence and associativity.
  CHECK(evaluate(parse("-x^2"), {2, 0, 0, 0}) == -4.0);
  CHECK(evaluate(parse("2^3^2"), {}) == 512.0);
  CHECK(evaluate(parse("6/3/2"), {}) == 1.0);
  CHECK(evaluate(parse("1-2-3"), {}) == -4.0);
  CHECK(evaluate(parse("x^-2"), {2, 0, 0, 0}) == 0.25);
  CHECK(evaluate(parse("2*x^2"), {3, 0, 0, 0}) == 18.0);
  CHECK(evaluate(parse("sign(-3) + abs(-2)"), {}) == 1.0);
}

TEST_CASE("parse: errors carry offsets") {
  CHECK_THROWS_WITH_AS(parse("2*"),
                       doctest::Contains("offset 2"), ParseError);
  try {
    parse("2*");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
    CHECK(e.expected.find("number") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("foo(x)"), ParseError);
  try {
    parse("foo(x)");
  } catch (const ParseError& e) {
    CHECK(e.offset == 0);
    CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("x^2.5"), ParseError);
  try {
    parse("x^2.5");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
  }
  CHECK_THROWS_AS(parse("x^y"), ParseError);
  CHECK_THROWS_AS(parse("(x"), ParseError);
  CHECK_THROWS_AS(parse("x +"), ParseError);
  CHECK_THROWS_AS(parse("sin x"), ParseError);
  CHECK_THROWS_AS(parse("z + 1"), ParseError);
  CHECK_THROWS_AS(parse("1 2"), ParseError);
}

TEST_CASE("evaluate: domain errors, not crashes") {
  CHECK_THROWS_AS(evaluate(parse("sqrt(p)"), {0, 0, -1, 0}), EvalError);
  CHECK_THROWS_AS(evaluate(parse("ln(x)"), {-1, 0, 0, 0}), EvalError);
  CHECK_THROWS_AS(evaluate(parse("ln(x)"), {0, 0, 0, 0}), EvalError);
  CHECK_THROWS_AS(evaluate(parse("1/x"), {0, 0, 0, 0}), EvalError);
  CHECK_THROWS_AS(evaluate(parse("x^-1"), {0, 0, 0, 0}), EvalError);
  try {
    evaluate(parse("1 + sqrt(p)"), {0, 0, -1, 0});
  } catch (const EvalError& e) {
    CHECK(e.subexpr == "sqrt(p)");  // the offending sub-expression
    CHECK(e.at.p == -1.0);
  }
}

TEST_CASE("evaluate: ring homomorphism per point") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Expr e1 = random_smooth(rng, 3);
    const Expr e2 = random_smooth(rng, 3);
    const Point pt = random_point(rng);
    const double v1 = evaluate(e1, pt), v2 = evaluate(e2, pt);
    CHECK(evaluate(e1 + e2, pt) == doctest::Approx(v1 + v2).epsilon(1e-14));
    CHECK(evaluate(e1 * e2, pt) == doctest::Approx(v1 * v2).epsilon(1e-14));
    CHECK(evaluate(e1 - e2, pt) == doctest::Approx(v1 - v2).epsilon(1e-14));
  }
}

TEST_CASE("differentiate: closed forms") {
  CHECK(to_string(differentiate(parse("p^2"), Var::p)) == "2 * p");
  CHECK(to_string(differentiate(parse("sin(x)"), Var::x)) == "cos(x)");
  CHECK(prove_zero(differentiate(parse("x*y + q"), Var::p)));
  // abs/sign refuse only when the inner derivative is live.
  CHECK_THROWS_AS(differentiate(parse("abs(p)"), Var::p),
                  NonDifferentiableError);
  CHECK_THROWS_AS(differentiate(parse("sign(p*x)"), Var::x),
                  NonDifferentiableError);
  CHECK(prove_zero(differentiate(parse("abs(p)"), Var::x)));
}

TEST_CASE("differentiate: central-difference oracle on random trees") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    const Expr e = random_poly(rng, 3);
    const Var v = kVars[t % 4];
    const Expr de = differentiate(e, v);
    for (int i = 0; i < 100; ++i) {
      const Point pt = random_point(rng);
      const double sym = evaluate(de, pt);
      const double fd = central_difference(e, v, pt);
      // Scale by the function's local size: cubic trees on [-2,2]^4 can have
      // large third derivatives, which is what bounds the FD error.
      const double scale = 1.0 + std::fabs(sym) + std::fabs(evaluate(e, pt));
      CHECK(std::fabs(sym - fd) <= 1e-6 * scale);
      ++checked;
    }
  }
  CHECK(checked == 5000);
}

TEST_CASE("differentiate: trig trees against finite differences") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const Expr e = random_smooth(rng, 2);
    const Var v = kVars[t % 4];
    const Expr de = differentiate(e, v);
    for (int i = 0; i < 20; ++i) {
      const Point pt = random_point(rng);
      const double sym = evaluate(de, pt);
      const double fd = central_difference(e, v, pt);
      const double scale = 1.0 + std::fabs(sym) + std::fabs(evaluate(e, pt));
      CHECK(std::fabs(sym - fd) <= 1e-5 * scale);
    }
  }
}

TEST_CASE("differentiate: linearity as a proven identity") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const Expr e1 = random_poly(rng, 3);
    const Expr e2 = random_poly(rng, 3);
    const double a = static_cast<double>(static_cast<int>(rng() % 9) - 4);
    const Var v = kVars[t % 4];
    const Expr lhs = differentiate(Expr(a) * e1 + e2, v);
    const Expr rhs = Expr(a) * differentiate(e1, v) + differentiate(e2, v);
    CHECK(prove_zero(lhs - rhs));
  }
}

TEST_CASE("print/parse round trip") {
  // Grammar strings.
  for (const char* src :
       {"p^2 + sin(x)", "x*q - y*p", "-x^2", "x^-2", "2^3^2", "1 - 2 - 3",
        "(x + y)^3", "sqrt(abs(p))", "x/(y - 4)", "sign(q)*ln(exp(x))",
        "1.5e-3 * x", "cos(x*y*p*q)"}) {
    const Expr e = parse(src);
    CHECK(equal(parse(to_string(e)), e));
  }
  // Random canonical trees.
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const Expr e = random_smooth(rng, 4);
    CAPTURE(to_string(e));
    CHECK(equal(parse(to_string(e)), e));
  }
}

TEST_CASE("is_zero: tri-state verdicts") {
  const SamplePlan plan;
  CHECK(is_zero(parse("p - p"), plan).kind == ZeroKind::ProvenZero);
  CHECK(is_zero(parse("x*y - y*x"), plan).kind == ZeroKind::ProvenZero);
  CHECK(is_zero(parse("(x + y)^2 - x^2 - 2*x*y - y^2"), plan).kind ==
        ZeroKind::ProvenZero);

  const ZeroResult nz = is_zero(parse("x*y - 1"), plan);
  CHECK(nz.kind == ZeroKind::NonZero);
  REQUIRE(nz.witness.has_value());
  CHECK(std::fabs(evaluate(parse("x*y - 1"), *nz.witness)) > 1e-9);

  CHECK(is_zero(parse("sin(x)^2 + cos(x)^2 - 1"), plan).kind ==
        ZeroKind::NumericallyZero);
}

TEST_CASE("is_zero: domain errors skip points, all skipped is inconclusive") {
  SamplePlan plan;
  plan.bounds[static_cast<std::size_t>(Var::p)] = {-2.0, -1.0};
  CHECK_THROWS_AS(is_zero(parse("sqrt(p)"), plan), InconclusiveError);
  // Mixed case: some points valid, some skipped.
  SamplePlan half;
  half.count = 200;
  const ZeroResult r = is_zero(parse("sqrt(p)^2 - p"), half);
  CHECK(r.kind == ZeroKind::NumericallyZero);
  CHECK(r.skipped > 0);
}

TEST_CASE("sample: determinism and bounds") {
  SamplePlan plan;
  plan.count = 5;
  plan.seed = 7;
  plan.bounds = {std::pair{-1.0, 1.0}, std::pair{-1.0, 1.0},
                 std::pair{-1.0, 1.0}, std::pair{-1.0, 1.0}};
  const auto a = sample(plan);
  const auto b = sample(plan);
  REQUIRE(a.size() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (Var v : kVars) {
      CHECK(a[i][v] == b[i][v]);
      CHECK(a[i][v] >= -1.0);
      CHECK(a[i][v] <= 1.0);
    }
  SamplePlan bad;
  bad.count = 0;
  CHECK_THROWS_AS(sample(bad), std::invalid_argument);
}
