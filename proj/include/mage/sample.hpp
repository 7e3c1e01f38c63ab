// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mage/expr.hpp"

namespace mage {

// Deterministic point sampling on a box in phase space, optionally rejecting
// points where a reference Pfaffian is too close to zero. The constraint is
// carried as the Pfaffian expression itself.
struct SamplePlan {
  int count = 100;
  std::uint64_t seed = 42;
  std::array<std::pair<double, double>, 4> bounds{
      std::pair{-2.0, 2.0}, std::pair{-2.0, 2.0}, std::pair{-2.0, 2.0},
      std::pair{-2.0, 2.0}};
  std::optional<Expr> pfaffian;  // when set, keep only |pfaffian| >= floor
  double floor = 1e-6;

  SamplePlan with_pfaffian(Expr pf) const {
    SamplePlan p = *this;
    p.pfaffian = std::move(pf);
    return p;
  }
};

struct RetryCapError : Error {
  using Error::Error;
};

// Throws std::invalid_argument on a malformed plan, RetryCapError when 10^6
// draws cannot produce `count` points clearing the Pfaffian floor.
std::vector<Point> sample(const SamplePlan& plan);

enum class ZeroKind { ProvenZero, NumericallyZero, NonZero };

struct ZeroResult {
  ZeroKind kind;
  std::optional<Point> witness;  // NonZero: sampled point with the largest |e|
  double max_abs = 0.0;          // over evaluated points
  int skipped = 0;               // points lost to domain errors

  bool is_zero() const { return kind != ZeroKind::NonZero; }
};

const char* to_string(ZeroKind k);

struct InconclusiveError : Error {
  using Error::Error;
};

// Tri-state vanishing decision: symbolic proof first (ring normalization),
// then sampling at the plan's points with absolute tolerance `tol`. Points
// hitting domain errors are skipped and counted; all points skipped is an
// InconclusiveError.
ZeroResult is_zero(const Expr& e, const SamplePlan& plan, double tol = 1e-9);

}  // namespace mage
