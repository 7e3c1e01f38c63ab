// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "mage/forms.hpp"
#include "mage/sample.hpp"

namespace mage {

// Effective 2-form A dp^dy + B(dx^dp - dy^dq) + C dx^dq + D dp^dq + E dx^dy
// paired with the canonical symplectic form; the data of a 2D M-A equation.
struct MAStructure {
  Expr A, B, C, D, E;
};

// A, B, C, D, E scaled by a common factor.
MAStructure operator*(const Expr& h, const MAStructure& s);

struct PfaffianClass {
  enum class Kind { Elliptic, Hyperbolic, Degenerate, Mixed } kind;
  std::optional<Point> positive_witness, negative_witness, degenerate_witness;
  int n_positive = 0, n_negative = 0, n_degenerate = 0;
};

const char* to_string(PfaffianClass::Kind k);

// Declared sign of the Pfaffian on the sampling box; lets |Pf| be rewritten
// as +-Pf symbolically. Validated against samples before use.
struct SignedRegion {
  int sign = +1;  // +1 or -1
};

struct NotEffectiveError : Error {
  NotEffectiveError(std::string msg, std::optional<Point> w)
      : Error(std::move(msg)), witness(w) {}
  std::optional<Point> witness;
};

struct DegeneratePointError : Error {
  using Error::Error;
};

struct SignValidationError : Error {
  SignValidationError(std::string msg, const Point& w)
      : Error(std::move(msg)), witness(w) {}
  Point witness;
};

TwoForm to_two_form(const MAStructure& s);

// Inverts to_two_form; requires the effectivity condition c_xp + c_yq = 0
// (checked by is_zero under `plan`).
MAStructure from_two_form(const TwoForm& b, const SamplePlan& plan = {});

// Closed form -B^2 + A*C - D*E.
Expr pfaffian(const MAStructure& s);

// Independent route: wedge quotient (alpha^alpha) / (omega^omega) at pt.
double pfaffian_oracle(const MAStructure& s, const Point& pt);

PfaffianClass classify(const MAStructure& s, const SamplePlan& plan);

// Rescales every coefficient by (sign * Pf)^(-1/2) after validating the
// declared sign at the plan's samples; the result has Pfaffian sign*1.
MAStructure normalize(const MAStructure& s, const SignedRegion& region,
                      const SamplePlan& plan);

// The endomorphism Omega^{-1} alpha / sqrt(|Pf|) at pt. Refuses points with
// |Pf| below `floor`.
Mat4 rho_at(const MAStructure& s, const Point& pt, double floor = 1e-6);

// Symbolic rho with |Pf| rewritten as sign*Pf on the declared region.
Mat<Expr, 4> rho_field(const MAStructure& s, const SignedRegion& region);

// A f_xx + 2B f_xy + C f_yy + D(f_xx f_yy - f_xy^2) + E with the coefficients
// composed through p -> f_x, q -> f_y. f may mention x and y only.
Expr residual(const MAStructure& s, const Expr& f);

// Pullback of to_two_form(s) through (x, y) -> (x, y, f_x, f_y): the dx^dy
// coefficient, computed by direct substitution dp -> f_xx dx + f_xy dy,
// dq -> f_xy dx + f_yy dy. Agrees with residual identically (global sign +1,
// pinned by the Laplace structure).
Expr pullback_oracle(const MAStructure& s, const Expr& f);

}  // namespace mage
