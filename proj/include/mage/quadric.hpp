// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "mage/gen.hpp"

namespace mage {

// A point of the three-parameter family a1 J_rho + a2 J_alpha + a3 J_Omega
// (eps1 is hard-fixed to -1; only with that choice can the triple pairwise
// anticommute).
struct FamilyCoeffs {
  double a1 = 0, a2 = 0, a3 = 0;
  int eps2 = +1, eps3 = +1;
};

// k = -sgn(Pf) a1^2 + eps2 a2^2 + eps3 a3^2; the scalar with A^2 = k Id.
double k_value(const FamilyCoeffs& c, int sgn_pf);

bool is_admissible(const FamilyCoeffs& c, int sgn_pf, double tol = 1e-12);

enum class QuadricType { Sphere, Hyperboloid1Sheet, Hyperboloid2Sheet, Empty };

const char* to_string(QuadricType t);

// Table lookup on (sgnPf, k, eps2, eps3); |k| must be 1. The member type is
// GaPC for k = +1 and GaC for k = -1.
QuadricType quadric_type(int sgn_pf, int k, int eps2, int eps3);

// Conic left of the quadric when a2 is pinned to 0 (the rescaling-invariant
// subfamily): textual equation in (a1, a3), or "empty".
std::string induced_conic_a2_zero(int sgn_pf, int k, int eps3);

// One cell of the four quadric tables.
struct CellSpec {
  int sgn_pf, k, eps2, eps3;
};

// Rejection draw of one admissible triple on the cell's quadric: draw in
// [-3, 3]^3, keep only draws whose k has the target sign, scale onto |k| = 1.
// Cells with eps2*eps3 != sgn_pf can host genuine members only where the
// a2 a3 cross term is absent, so draws there are pinned to the a2 = 0 (or
// a3 = 0) conic. Returns nullopt when the draw is rejected.
std::optional<FamilyCoeffs> draw_admissible(const CellSpec& cell,
                                            std::mt19937_64& rng);

struct AntiCommutativityResult {
  bool holds = false;
  double max_deviation = 0.0;          // of Pf - eps2*eps3 over samples
  std::optional<Point> witness;        // first failing point
  // eps1 = -1 is forced for {J_rho, J_alpha} = {J_rho, J_Omega} = 0
  // independently of the coefficients; recorded for the report.
  bool eps1_forced_minus_one = true;
};

// Holds iff Pf = eps2*eps3 at every sampled point within `tol` (the
// coordinate form of the {J_alpha, J_Omega} = 0 condition).
AntiCommutativityResult anticommutativity_check(const MAStructure& s, int eps2,
                                                int eps3,
                                                const SamplePlan& plan,
                                                double tol = 1e-9);

// Ungated linear combination of the three structures at a point; exists as a
// matrix for any coefficients (used by distinctness and diagnostics).
GenEndo assemble_family(const MAStructure& s, const FamilyCoeffs& c,
                        const Point& pt, double floor = 1e-6);

struct PreconditionError : Error {
  PreconditionError(const std::string& gate, const std::string& why)
      : Error("build_family_member: gate '" + gate + "' failed: " + why),
        failed_gate(gate) {}
  std::string failed_gate;
};

// Gated build: admissibility, |Pf(pt)| >= floor, and - when both a2 and a3
// are live - Pf(pt) = eps2*eps3 (the anticommutativity condition; with
// a2*a3 = 0 the cross term it controls is absent).
GenEndo build_family_member(const MAStructure& s, const FamilyCoeffs& c,
                            const Point& pt, double floor = 1e-6);

struct DistinctnessResult {
  bool distinct = false;
  double max_difference = 0.0;
  std::optional<Point> witness;
};

DistinctnessResult distinctness_check(const MAStructure& s,
                                      const FamilyCoeffs& c1,
                                      const FamilyCoeffs& c2,
                                      const SamplePlan& plan,
                                      double tol = 1e-8);

// Rescaling alpha -> h * alpha: verifies Pf(h a) = h^2 Pf(a) (symbolically
// where provable) and rho(h a) = sgn(h) rho(a) at samples; reports how
// J_alpha transforms and whether the family of members is preserved.
struct RescaleReport {
  ZeroResult pfaffian_law;            // is_zero of Pf(h a) - h^2 Pf(a)
  double rho_law_max_deviation = 0.0;
  bool family_preserved = false;      // h == 1
  ZeroResult h_minus_one;
  // J_alpha block scaling measured at the first sample: tc -> (1/h) tc,
  // ct -> h ct.
  double j_alpha_tc_scale = 0.0, j_alpha_ct_scale = 0.0;
};

RescaleReport rescale_transform(const MAStructure& s, const Expr& h,
                                const SamplePlan& plan, int eps2 = +1);

}  // namespace mage
