// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "mage/gen.hpp"

namespace mage {

// Section (X, xi) of T + T* with expression coefficients.
struct Section {
  std::array<Expr, 4> vec{};   // on d/dx, d/dy, d/dp, d/dq
  std::array<Expr, 4> form{};  // on dx, dy, dp, dq

  static Section basis(int i);  // i in [0, 8): vectors first, then forms
};

Section operator+(const Section& a, const Section& b);
Section operator*(const Expr& c, const Section& s);

// ([X,Y], L_X zeta - L_Y xi - 1/2 d(X . zeta - Y . xi)), all symbolic; the
// Lie derivative on 1-forms goes through Cartan's formula.
Section courant_bracket(const Section& s1, const Section& s2);

Section apply(const GenEndoField& j, const Section& s);

struct NonIsotropicError : Error {
  using Error::Error;
};

// The torsion N_J is tensorial only when the eigenbundles are almost Dirac
// structures; the certificate is the gate that makes nijenhuis callable.
struct IsotropyCertificate {
  GenEndoField j;
  double max_pairing = 0.0;
};

// Classifies and isotropy-checks J at every sampled point; throws
// NonIsotropicError (naming the failure) otherwise.
IsotropyCertificate certify_isotropic(const GenEndoField& j,
                                      const SamplePlan& plan,
                                      double tol = 1e-10);

// [Jx, Jy] + J^2 [x, y] - J([Jx, y] + [x, Jy]), brackets Courant.
Section nijenhuis(const IsotropyCertificate& cert, const Section& s1,
                  const Section& s2);

// Evaluates the Nijenhuis tensor on all 64 ordered pairs of coordinate basis
// sections at the given points and reports the largest component magnitude.
struct NijenhuisProbe {
  double max_abs = 0.0;
  int worst_pair_i = 0, worst_pair_j = 0;
  Point worst_point{};
  int skipped_evaluations = 0;
};

NijenhuisProbe nijenhuis_basis_probe(const IsotropyCertificate& cert,
                                     const std::vector<Point>& pts);

enum class Integrability { Integrable, NotIntegrable };

const char* to_string(Integrability v);

struct IntegrabilityResult {
  Integrability verdict = Integrability::NotIntegrable;
  std::array<ZeroResult, 4> coefficients;  // of d(normalized alpha)
  int failing_coefficient = -1;
};

// Lychagin-Rubtsov criterion: alpha / sqrt(|Pf|) closed. Normalizes on the
// declared region and applies is_zero to the four coefficients of the
// exterior derivative.
IntegrabilityResult lr_integrability(const MAStructure& s,
                                     const SignedRegion& region,
                                     const SamplePlan& plan,
                                     double tol = 1e-9);

struct DivergenceResult {
  bool holds = false;
  std::array<ZeroResult, 4> coefficients;  // of d(alpha + phi omega)
  int failing_coefficient = -1;
};

// Divergence condition d(alpha + phi Omega) = 0 for the given phi.
DivergenceResult divergence_check(const MAStructure& s, const Expr& phi,
                                  const SamplePlan& plan = {},
                                  double tol = 1e-9);

}  // namespace mage
