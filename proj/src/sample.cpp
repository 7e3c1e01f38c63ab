// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "mage/sample.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mage {

namespace {

constexpr std::uint64_t kRetryCap = 1000000;

double next_uniform(std::mt19937_64& rng, double lo, double hi) {
  // 53-bit mantissa draw; identical across platforms for a fixed seed.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

void validate(const SamplePlan& plan) {
  if (plan.count < 1) throw std::invalid_argument("sample plan: count < 1");
  for (const auto& [lo, hi] : plan.bounds) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      throw std::invalid_argument("sample plan: bounds must be finite, min < max");
  }
  if (!(plan.floor >= 0.0))
    throw std::invalid_argument("sample plan: floor must be >= 0");
}

}  // namespace

std::vector<Point> sample(const SamplePlan& plan) {
  validate(plan);
  std::mt19937_64 rng(plan.seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(plan.count));
  std::uint64_t draws = 0;
  while (pts.size() < static_cast<std::size_t>(plan.count)) {
    if (++draws > kRetryCap)
      throw RetryCapError(
          "sample: retry cap exceeded; the Pfaffian floor rejects nearly every "
          "point of the box (structure close to degenerate there)");
    Point pt;
    for (Var v : kVars) {
      const auto& [lo, hi] = plan.bounds[static_cast<std::size_t>(v)];
      pt[v] = next_uniform(rng, lo, hi);
    }
    if (plan.pfaffian) {
      double pf;
      try {
        pf = evaluate(*plan.pfaffian, pt);
      } catch (const EvalError&) {
        continue;
      }
      if (!(std::fabs(pf) >= plan.floor)) continue;
    }
    pts.push_back(pt);
  }
  return pts;
}

const char* to_string(ZeroKind k) {
  switch (k) {
    case ZeroKind::ProvenZero: return "ProvenZero";
    case ZeroKind::NumericallyZero: return "NumericallyZero";
    case ZeroKind::NonZero: return "NonZero";
  }
  return "?";
}

ZeroResult is_zero(const Expr& e, const SamplePlan& plan, double tol) {
  if (prove_zero(e)) return {ZeroKind::ProvenZero, std::nullopt, 0.0, 0};

  ZeroResult r{ZeroKind::NumericallyZero, std::nullopt, 0.0, 0};
  int evaluated = 0;
  for (const Point& pt : sample(plan)) {
    double v;
    try {
      v = evaluate(e, pt);
    } catch (const EvalError&) {
      ++r.skipped;
      continue;
    }
    ++evaluated;
    if (std::fabs(v) > r.max_abs) {
      r.max_abs = std::fabs(v);
      if (r.max_abs > tol) {
        r.kind = ZeroKind::NonZero;
        r.witness = pt;
      }
    }
  }
  if (evaluated == 0)
    throw InconclusiveError(
        "is_zero: every sampled point hit a domain error; verdict inconclusive");
  return r;
}

}  // namespace mage
