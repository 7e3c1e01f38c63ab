// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "mage/forms.hpp"
#include "mage/sample.hpp"
#include "test_util.hpp"

using namespace mage;
using namespace mage::testutil;

namespace {

TwoForm random_two_form(std::mt19937_64& rng, int depth = 2) {
  return {random_poly(rng, depth), random_poly(rng, depth),
          random_poly(rng, depth), random_poly(rng, depth),
          random_poly(rng, depth), random_poly(rng, depth)};
}

}  // namespace

TEST_CASE("wedge_top: orientation convention and single terms") {
  // Fixed top-form basis dx^dy^dp^dq makes omega^omega land on -2.
  CHECK(simplify(wedge_top(omega(), omega())).value() == -2.0);

  TwoForm dxdy;
  dxdy.c_xy = Expr(1.0);
  TwoForm dpdq;
  dpdq.c_pq = Expr(1.0);
  CHECK(simplify(wedge_top(dxdy, dpdq)).value() == 1.0);

  TwoForm dxdp;
  dxdp.c_xp = Expr(1.0);
  CHECK(simplify(wedge_top(dxdp, dxdp)).value() == 0.0);
}

TEST_CASE("wedge_top: symmetric in its arguments") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const TwoForm a = random_two_form(rng);
    const TwoForm b = random_two_form(rng);
    CHECK(prove_zero(wedge_top(a, b) - wedge_top(b, a)));
  }
}

TEST_CASE("exterior_derivative: closed-form cases") {
  // Constant coefficients die.
  TwoForm c;
  c.c_xy = Expr(3.0);
  c.c_pq = Expr(-1.0);
  const ThreeForm dc = exterior_derivative(c);
  CHECK(prove_zero(dc.c_xyp));
  CHECK(prove_zero(dc.c_xyq));
  CHECK(prove_zero(dc.c_xpq));
  CHECK(prove_zero(dc.c_ypq));

  // d(p dx^dy) = dp^dx^dy = dx^dy^dp.
  TwoForm pdxdy;
  pdxdy.c_xy = Expr::variable(Var::p);
  const ThreeForm d1 = exterior_derivative(pdxdy);
  CHECK(simplify(d1.c_xyp).value() == 1.0);
  CHECK(prove_zero(d1.c_xyq));
  CHECK(prove_zero(d1.c_xpq));
  CHECK(prove_zero(d1.c_ypq));
}

TEST_CASE("exterior_derivative: d(d(one-form)) = 0, proven") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    OneForm g;
    for (auto& comp : g.c) comp = random_smooth(rng, 2);
    const ThreeForm ddg = exterior_derivative(exterior_derivative(g));
    CHECK(prove_zero(ddg.c_xyp));
    CHECK(prove_zero(ddg.c_xyq));
    CHECK(prove_zero(ddg.c_xpq));
    CHECK(prove_zero(ddg.c_ypq));
  }
}

TEST_CASE("exterior_derivative: linear over constants") {
  std::mt19937_64 rng(13);
  const TwoForm a = random_two_form(rng);
  const TwoForm b = random_two_form(rng);
  const ThreeForm lhs = exterior_derivative(Expr(3.0) * a + b);
  const ThreeForm da = exterior_derivative(a);
  const ThreeForm db = exterior_derivative(b);
  CHECK(prove_zero(lhs.c_xyp - (Expr(3.0) * da.c_xyp + db.c_xyp)));
  CHECK(prove_zero(lhs.c_xyq - (Expr(3.0) * da.c_xyq + db.c_xyq)));
  CHECK(prove_zero(lhs.c_xpq - (Expr(3.0) * da.c_xpq + db.c_xpq)));
  CHECK(prove_zero(lhs.c_ypq - (Expr(3.0) * da.c_ypq + db.c_ypq)));
}

TEST_CASE("matrix_at: omega block form and inverse") {
  const Mat4 w = matrix_at(omega(), Point{0.3, -1, 2, 0.5});
  const double expected[4][4] = {
      {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(w(i, j) == expected[i][j]);
  CHECK(max_norm(inverse(w) - (-w)) == 0.0);  // omega^{-1} = -omega exactly
}

TEST_CASE("matrix_at: antisymmetry on random forms") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const TwoForm b = random_two_form(rng);
    const Point pt = random_point(rng);
    const Mat4 m = matrix_at(b, pt);
    CHECK(max_norm(m + m.transposed()) == 0.0);
  }
}

TEST_CASE("sample: Pfaffian floor behavior") {
  // Laplace has Pf = 1 everywhere: a 0.5 floor rejects nothing.
  SamplePlan plan;
  plan.count = 50;
  plan.seed = 7;
  const SamplePlan guarded = plan.with_pfaffian(Expr(1.0));
  SamplePlan floored = guarded;
  floored.floor = 0.5;
  const auto base = sample(plan);
  const auto kept = sample(floored);
  REQUIRE(base.size() == kept.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(base[i].x == kept[i].x);

  // Pf = p on p in [-1,1] can never clear a floor of 10.
  SamplePlan impossible;
  impossible.count = 1;
  impossible.bounds[static_cast<std::size_t>(Var::p)] = {-1.0, 1.0};
  impossible.pfaffian = Expr::variable(Var::p);
  impossible.floor = 10.0;
  CHECK_THROWS_AS(sample(impossible), RetryCapError);
}
