// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "mage/ma.hpp"
#include "mage/matrix.hpp"

namespace mage {

// Endomorphism of T + T* at a point, stored as the four 4x4 blocks
//   [ tt  tc ]   tt: T -> T,   tc: T* -> T,
//   [ ct  cc ]   ct: T -> T*,  cc: T* -> T*,
// acting on columns (X, xi) in the basis (d/dx..d/dq, dx..dq).
struct GenEndo {
  Mat4 tt, tc, ct, cc;

  Mat8 assemble() const;
  static GenEndo split(const Mat8& m);
};

GenEndo operator+(const GenEndo& a, const GenEndo& b);
GenEndo operator*(double c, const GenEndo& a);

// Expression-valued endomorphism field; evaluated pointwise for numeric
// checks, kept symbolic where the Courant machinery needs derivatives.
struct GenEndoField {
  Mat<Expr, 4> tt, tc, ct, cc;

  GenEndo at(const Point& pt) const;
};

// Natural split-signature pairing, with the customary 1/2 normalization. The
// compatibility test J^T eta J = +-eta is scale-invariant in eta.
Mat8 eta();

enum class GenType { GaP, GaPC, GaC, GaAC, None };

const char* to_string(GenType t);

// Measured classification: gamma1 from |J^2 -+ Id|, gamma2 from
// |J^T eta J -+ eta|, each against `tol`.
struct GenClassification {
  GenType type = GenType::None;
  int gamma1 = 0, gamma2 = 0;  // 0 when unresolved
  double square_residual = 0.0;
  double eta_residual = 0.0;
};

GenClassification classify_gen(const GenEndo& j, double tol = 1e-10);

// Blocks (K, 0; 0, eps K^T).
GenEndo build_diag(const Mat4& k, int eps);

enum class MatSymmetry { Antisymmetric, Symmetric };

// Blocks (0, M^{-1}; eps M, 0). M must be invertible and match the claimed
// symmetry.
GenEndo build_antidiag(const Mat4& m, MatSymmetry symmetry, int eps);

// The three structures attached to a non-degenerate M-A structure at a point.
GenEndo j_rho(const MAStructure& s, const Point& pt, int eps1,
              double floor = 1e-6);
GenEndo j_alpha(const MAStructure& s, const Point& pt, int eps2);
GenEndo j_omega(int eps3);

GenEndoField j_rho_field(const MAStructure& s, const SignedRegion& region,
                         int eps1);
GenEndoField j_omega_field(int eps3);
GenEndoField diag_field(const Mat<Expr, 4>& k, int eps);

// Hitchin-pair construction (A, pi_Omega; -(Omega + Omega A^2), -A^T) with
// A = Omega^{-1} alpha unnormalized.
GenEndo build_banos(const MAStructure& s, const Point& pt,
                    double floor = 1e-6);

GenEndo anticommutator(const GenEndo& j1, const GenEndo& j2);

// Eigen-projectors onto E+/E-: (Id +- J)/2 when J^2 = Id, (Id -+ iJ)/2 when
// J^2 = -Id. Complex results are pairs of real matrices.
struct Projectors {
  bool complex_eigenvalues = false;
  CMat8 plus, minus;
  double idempotency_residual = 0.0;  // max over both signs
  int rank_plus = 0, rank_minus = 0;  // trace of the projector
};

struct UnclassifiableError : Error {
  using Error::Error;
};

Projectors eigen_projectors(const GenEndo& j, double tol = 1e-10);

// Total isotropy of both eigenbundles under the bilinear pairing:
// P^T eta P = 0. The witness is a pair of basis images with eta(u,v) != 0.
struct IsotropyResult {
  bool isotropic = true;
  double max_pairing = 0.0;
  int witness_i = -1, witness_j = -1;  // columns of the offending projector
  char witness_sign = '+';
};

IsotropyResult isotropy_check(const GenEndo& j, double tol = 1e-10);

}  // namespace mage
