// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mage/expr.hpp"
#include "mage/matrix.hpp"

namespace mage {

// 1-form a_x dx + a_y dy + a_p dp + a_q dq. Used for exterior-calculus
// helpers and for the form half of generalized-tangent sections.
struct OneForm {
  std::array<Expr, 4> c{};  // indexed by Var
};

// 2-form in the fixed ordered basis dx^dy, dx^dp, dx^dq, dy^dp, dy^dq, dp^dq.
struct TwoForm {
  Expr c_xy, c_xp, c_xq, c_yp, c_yq, c_pq;
};

// 3-form in the fixed ordered basis dx^dy^dp, dx^dy^dq, dx^dp^dq, dy^dp^dq.
struct ThreeForm {
  Expr c_xyp, c_xyq, c_xpq, c_ypq;
};

// Canonical symplectic form dx^dp + dy^dq.
TwoForm omega();

TwoForm operator+(const TwoForm& a, const TwoForm& b);
TwoForm operator*(const Expr& f, const TwoForm& b);

// Coefficient of a^b on the top-form basis dx^dy^dp^dq. With this global
// orientation wedge_top(omega, omega) = -2; the Pfaffian is always the
// quotient of two wedge_top values, so the convention cancels there.
Expr wedge_top(const TwoForm& a, const TwoForm& b);

ThreeForm exterior_derivative(const TwoForm& b);
TwoForm exterior_derivative(const OneForm& g);
OneForm exterior_derivative_scalar(const Expr& f);

// Antisymmetric matrix of b at pt in the basis (dx, dy, dp, dq) acting on
// (d/dx, d/dy, d/dp, d/dq): entry (i, j) = b(d_i, d_j).
Mat4 matrix_at(const TwoForm& b, const Point& pt);

// Symbolic counterpart of matrix_at.
Mat<Expr, 4> matrix_of(const TwoForm& b);

}  // namespace mage
