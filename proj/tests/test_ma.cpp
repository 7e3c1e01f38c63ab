// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "mage/ma.hpp"
#include "test_util.hpp"

using namespace mage;
using namespace mage::testutil;

namespace {

SamplePlan positive_p_plan() {
  SamplePlan plan;
  plan.bounds[static_cast<std::size_t>(Var::p)] = {0.1, 2.0};
  return plan;
}

}  // namespace

TEST_CASE("to_two_form: the coefficient placement") {
  // Laplace: alpha = -dx^dq + dy^dp.
  const TwoForm b = to_two_form(laplace());
  CHECK(simplify(b.c_xq).value() == -1.0);
  CHECK(simplify(b.c_yp).value() == 1.0);
  CHECK(prove_zero(b.c_xy));
  CHECK(prove_zero(b.c_xp));
  CHECK(prove_zero(b.c_yq));
  CHECK(prove_zero(b.c_pq));

  // von Karman: alpha = p dp^dy + dx^dq, i.e. c_yp = -p.
  const TwoForm v = to_two_form(von_karman());
  CHECK(prove_zero(v.c_yp + Expr::variable(Var::p)));
  CHECK(simplify(v.c_xq).value() == 1.0);

  const TwoForm z = to_two_form({Expr(0.0), Expr(0.0), Expr(0.0), Expr(0.0),
                                 Expr(0.0)});
  CHECK(prove_zero(z.c_xy + z.c_xp + z.c_xq + z.c_yp + z.c_yq + z.c_pq));
}

TEST_CASE("from_two_form: inverse and effectivity gate") {
  TwoForm b;
  b.c_xq = Expr(-1.0);
  b.c_yp = Expr(1.0);
  const MAStructure s = from_two_form(b);
  CHECK(simplify(s.A).value() == -1.0);
  CHECK(simplify(s.C).value() == -1.0);
  CHECK(prove_zero(s.B));
  CHECK(prove_zero(s.D));
  CHECK(prove_zero(s.E));

  TwoForm bad;  // dx^dp alone: c_xp + c_yq = 1
  bad.c_xp = Expr(1.0);
  CHECK_THROWS_AS(from_two_form(bad), NotEffectiveError);

  // omega itself: c_xp + c_yq = 2.
  CHECK_THROWS_AS(from_two_form(omega()), NotEffectiveError);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const MAStructure r = random_poly_structure(rng);
    const MAStructure back = from_two_form(to_two_form(r));
    CHECK(equal(back.A, r.A));
    CHECK(equal(back.B, r.B));
    CHECK(equal(back.C, r.C));
    CHECK(equal(back.D, r.D));
    CHECK(equal(back.E, r.E));
  }
}

TEST_CASE("pfaffian: golden closed forms") {
  const Expr pf_l = simplify(pfaffian(laplace()));
  REQUIRE(pf_l.is_constant());
  CHECK(pf_l.value() == 1.0);

  const Expr pf_w = simplify(pfaffian(wave()));
  REQUIRE(pf_w.is_constant());
  CHECK(pf_w.value() == -1.0);

  const Expr pf_v = simplify(pfaffian(von_karman()));
  CHECK(pf_v.kind() == NodeKind::Variable);
  CHECK(pf_v.var() == Var::p);
  CHECK(evaluate(pf_v, {0, 0, 3, 0}) == 3.0);

  CHECK(prove_zero(pfaffian({Expr(0.0), Expr(0.0), Expr(0.0), Expr(0.0),
                             Expr(0.0)})));
}

TEST_CASE("pfaffian_oracle: wedge quotient equals the closed form") {
  CHECK(pfaffian_oracle(laplace(), {1, 1, 1, 1}) == doctest::Approx(1.0));
  CHECK(pfaffian_oracle(von_karman(), {0, 0, 3, 0}) == doctest::Approx(3.0));

  std::mt19937_64 rng(19);
  for (int i = 0; i < 200; ++i) {
    const MAStructure s = random_poly_structure(rng);
    const Expr pf = pfaffian(s);
    for (int k = 0; k < 10; ++k) {
      const Point pt = random_point(rng);
      const double closed = evaluate(pf, pt);
      const double oracle = pfaffian_oracle(s, pt);
      CHECK(std::fabs(closed - oracle) <= 1e-9 * (1.0 + std::fabs(closed)));
    }
  }
}

TEST_CASE("determinant identity: det(alpha) = Pf^2") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const MAStructure s = random_poly_structure(rng);
    const Point pt = random_point(rng);
    const double pf = evaluate(pfaffian(s), pt);
    const double det = determinant(matrix_at(to_two_form(s), pt));
    CHECK(std::fabs(det - pf * pf) <= 1e-8 * std::max(1.0, pf * pf));
  }
}

TEST_CASE("classify: elliptic, hyperbolic, mixed") {
  const SamplePlan plan;
  CHECK(classify(laplace(), plan).kind == PfaffianClass::Kind::Elliptic);
  CHECK(classify(wave(), plan).kind == PfaffianClass::Kind::Hyperbolic);

  SamplePlan box;
  box.bounds[static_cast<std::size_t>(Var::p)] = {-1.0, 1.0};
  const PfaffianClass mixed = classify(von_karman(), box);
  CHECK(mixed.kind == PfaffianClass::Kind::Mixed);
  REQUIRE(mixed.positive_witness.has_value());
  REQUIRE(mixed.negative_witness.has_value());
  CHECK(mixed.positive_witness->p > 0);
  CHECK(mixed.negative_witness->p < 0);
}

TEST_CASE("classify: near-vanishing Pfaffian reads Degenerate") {
  const SamplePlan plan;
  const MAStructure zero{Expr(0.0), Expr(0.0), Expr(0.0), Expr(0.0),
                         Expr(0.0)};
  const PfaffianClass c = classify(zero, plan);
  CHECK(c.kind == PfaffianClass::Kind::Degenerate);
  CHECK(c.degenerate_witness.has_value());
  CHECK(c.n_positive == 0);
  CHECK(c.n_negative == 0);
}

TEST_CASE("normalize: Laplace unchanged, von Karman on p > 0") {
  const SamplePlan plan;
  const MAStructure nl = normalize(laplace(), SignedRegion{+1}, plan);
  CHECK(simplify(nl.A).value() == -1.0);
  CHECK(simplify(nl.C).value() == -1.0);

  const SamplePlan pp = positive_p_plan();
  const MAStructure nv = normalize(von_karman(), SignedRegion{+1}, pp);
  // Coefficients (sqrt(p), 0, p^{-1/2}, 0, 0); Pf of the result is 1.
  for (const Point& pt : sample(pp)) {
    CHECK(evaluate(nv.A, pt) == doctest::Approx(std::sqrt(pt.p)).epsilon(1e-12));
    CHECK(evaluate(nv.C, pt) ==
          doctest::Approx(1.0 / std::sqrt(pt.p)).epsilon(1e-12));
    CHECK(std::fabs(evaluate(pfaffian(nv), pt) - 1.0) <= 1e-9);
  }

  // Idempotence at sample points.
  const MAStructure nnv = normalize(nv, SignedRegion{+1}, pp);
  for (const Point& pt : sample(pp)) {
    CHECK(std::fabs(evaluate(nnv.A - nv.A, pt)) <= 1e-9);
    CHECK(std::fabs(evaluate(nnv.C - nv.C, pt)) <= 1e-9);
  }

  // Wrong declared sign is rejected with a witness.
  CHECK_THROWS_AS(normalize(von_karman(), SignedRegion{-1}, pp),
                  SignValidationError);
}

TEST_CASE("rho_at: golden matrices and the square identity") {
  // Laplace: rows (0,1,0,0 / -1,0,0,0 / 0,0,0,-1 / 0,0,1,0), square -Id.
  const Mat4 rl = rho_at(laplace(), {0.2, -0.4, 1.0, 0.0});
  const double expect_l[4][4] = {
      {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(rl(i, j) == expect_l[i][j]);
  CHECK(max_norm(rl * rl + Mat4::identity()) == 0.0);

  // Wave: square +Id.
  const Mat4 rw = rho_at(wave(), {});
  const double expect_w[4][4] = {
      {0, -1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(rw(i, j) == expect_w[i][j]);
  CHECK(max_norm(rw * rw - Mat4::identity()) == 0.0);

  // Degenerate points are refused.
  CHECK_THROWS_AS(rho_at(von_karman(), {0, 0, 0, 0}), DegeneratePointError);
}

TEST_CASE("rho_at: rho^2 = -sgn(Pf) Id and the omega^{-1} alpha route") {
  std::mt19937_64 rng(41);
  const Mat4 w = matrix_at(omega(), Point{});
  const Mat4 winv = inverse(w);
  int tested = 0;
  while (tested < 200) {
    const MAStructure s = random_poly_structure(rng);
    const Point pt = random_point(rng);
    double pf;
    try {
      pf = evaluate(pfaffian(s), pt);
    } catch (const EvalError&) {
      continue;
    }
    if (std::fabs(pf) < 1e-6) continue;
    const Mat4 r = rho_at(s, pt);
    const double sgn = pf > 0 ? 1.0 : -1.0;
    CHECK(max_norm(r * r + sgn * Mat4::identity()) <= 1e-10);
    // Cross-check against the composition route.
    const Mat4 via = (1.0 / std::sqrt(std::fabs(pf))) *
                     (winv * matrix_at(to_two_form(s), pt));
    CHECK(max_norm(r - via) <= 1e-12);
    ++tested;
  }
}

TEST_CASE("rho_at: invariant under normalization") {
  const SamplePlan pp = positive_p_plan();
  const MAStructure nv = normalize(von_karman(), SignedRegion{+1}, pp);
  for (const Point& pt : sample(pp)) {
    CHECK(max_norm(rho_at(nv, pt, 0.0) - rho_at(von_karman(), pt)) <= 1e-10);
  }
}

TEST_CASE("residual: closed-form cases") {
  CHECK(prove_zero(residual(laplace(), parse("x^2 - y^2"))));
  CHECK(prove_zero(residual(von_karman(), parse("x"))));

  // D-only structure: residual is the Hessian determinant; for f = x*y it is
  // identically -1.
  const MAStructure d_only{Expr(0.0), Expr(0.0), Expr(0.0), Expr(1.0),
                           Expr(0.0)};
  const Expr r = simplify(residual(d_only, parse("x*y")));
  REQUIRE(r.is_constant());
  CHECK(r.value() == -1.0);

  CHECK_THROWS_AS(residual(laplace(), parse("p + x")), Error);
}

TEST_CASE("pullback_oracle: equals residual with global sign +1") {
  // Laplace on a generic quadratic: -(2a + 2c) with (a, b, c) = (1, 5, 2).
  const Expr f = parse("1*x^2 + 5*x*y + 2*y^2");
  const Expr pb = simplify(pullback_oracle(laplace(), f));
  REQUIRE(pb.is_constant());
  CHECK(pb.value() == -6.0);

  // von Karman: the derived equation is f_x f_xx + f_yy (sign comes from the
  // computation, not from any quoted form).
  const Expr vk = simplify(pullback_oracle(von_karman(), parse("x^2 + y^2")));
  // f_x = 2x, f_xx = 2, f_yy = 2 -> 4x + 2.
  CHECK(evaluate(vk, {1, 0, 0, 0}) == 6.0);
  CHECK(evaluate(vk, {0, 0, 0, 0}) == 2.0);
  CHECK(prove_zero(simplify(residual(von_karman(), parse("x^2 + y^2"))) - vk));

  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    const MAStructure s = random_poly_structure(rng);
    Expr f(0.0);
    // Random bivariate polynomial in x, y.
    for (int t = 0; t < 4; ++t)
      f = f + Expr(static_cast<double>(static_cast<int>(rng() % 7) - 3)) *
                  pow(Expr::variable(Var::x), static_cast<int>(rng() % 3)) *
                  pow(Expr::variable(Var::y), static_cast<int>(rng() % 3));
    CHECK(prove_zero(residual(s, f) - pullback_oracle(s, f)));
  }
}

TEST_CASE("residual: rescaling identity") {
  std::mt19937_64 rng(47);
  const Expr h = parse("1 + p^2");
  for (int i = 0; i < 20; ++i) {
    const MAStructure s = random_poly_structure(rng);
    const Expr f = parse("x^2 + 3*x*y - y^2");
    const Expr fx = differentiate(f, Var::x);
    const Expr fy = differentiate(f, Var::y);
    const Expr h_on_graph =
        substitute(substitute(h, Var::p, fx), Var::q, fy);
    CHECK(prove_zero(residual(h * s, f) - h_on_graph * residual(s, f)));
  }
}
