// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "mage/ma.hpp"

#include <cmath>

namespace mage {

MAStructure operator*(const Expr& h, const MAStructure& s) {
  return {h * s.A, h * s.B, h * s.C, h * s.D, h * s.E};
}

const char* to_string(PfaffianClass::Kind k) {
  switch (k) {
    case PfaffianClass::Kind::Elliptic: return "Elliptic";
    case PfaffianClass::Kind::Hyperbolic: return "Hyperbolic";
    case PfaffianClass::Kind::Degenerate: return "Degenerate";
    case PfaffianClass::Kind::Mixed: return "Mixed";
  }
  return "?";
}

TwoForm to_two_form(const MAStructure& s) {
  TwoForm b;
  b.c_xy = s.E;
  b.c_xp = s.B;
  b.c_xq = s.C;
  b.c_yp = -s.A;
  b.c_yq = -s.B;
  b.c_pq = s.D;
  return b;
}

MAStructure from_two_form(const TwoForm& b, const SamplePlan& plan) {
  const ZeroResult eff = is_zero(b.c_xp + b.c_yq, plan);
  if (!eff.is_zero())
    throw NotEffectiveError(
        "two-form is not effective: c_xp + c_yq = " +
            to_string(simplify(b.c_xp + b.c_yq)) + " does not vanish",
        eff.witness);
  return {-b.c_yp, b.c_xp, b.c_xq, b.c_pq, b.c_xy};
}

Expr pfaffian(const MAStructure& s) {
  return -pow(s.B, 2) + s.A * s.C - s.D * s.E;
}

double pfaffian_oracle(const MAStructure& s, const Point& pt) {
  const TwoForm a = to_two_form(s);
  const double top = evaluate(wedge_top(a, a), pt);
  const double bottom = evaluate(wedge_top(omega(), omega()), pt);
  return top / bottom;
}

PfaffianClass classify(const MAStructure& s, const SamplePlan& plan) {
  const Expr pf = pfaffian(s);
  const double tol = plan.floor;
  PfaffianClass r{PfaffianClass::Kind::Degenerate, {}, {}, {}};
  for (const Point& pt : sample(plan)) {
    double v;
    try {
      v = evaluate(pf, pt);
    } catch (const EvalError&) {
      continue;
    }
    if (v > tol) {
      ++r.n_positive;
      if (!r.positive_witness) r.positive_witness = pt;
    } else if (v < -tol) {
      ++r.n_negative;
      if (!r.negative_witness) r.negative_witness = pt;
    } else {
      ++r.n_degenerate;
      if (!r.degenerate_witness) r.degenerate_witness = pt;
    }
  }
  if (r.n_positive > 0 && r.n_negative > 0)
    r.kind = PfaffianClass::Kind::Mixed;
  else if (r.n_degenerate > 0)
    r.kind = PfaffianClass::Kind::Degenerate;
  else if (r.n_positive > 0)
    r.kind = PfaffianClass::Kind::Elliptic;
  else if (r.n_negative > 0)
    r.kind = PfaffianClass::Kind::Hyperbolic;
  return r;
}

namespace {

// Checks sign and floor of Pf at every sampled point of the plan.
void validate_region(const MAStructure& s, const SignedRegion& region,
                     const SamplePlan& plan) {
  const Expr pf = pfaffian(s);
  for (const Point& pt : sample(plan)) {
    const double v = evaluate(pf, pt);
    if (!(v * region.sign >= plan.floor))
      throw SignValidationError(
          "declared Pfaffian sign " + std::string(region.sign > 0 ? "+" : "-") +
              " fails at " + to_string(pt) + " where Pf = " + to_string(Expr(v)),
          pt);
  }
}

}  // namespace

MAStructure normalize(const MAStructure& s, const SignedRegion& region,
                      const SamplePlan& plan) {
  validate_region(s, region, plan);
  const Expr signed_pf =
      region.sign > 0 ? pfaffian(s) : -pfaffian(s);  // |Pf| on the region
  const Expr factor = Expr(1.0) / sqrt(signed_pf);
  return factor * s;
}

Mat4 rho_at(const MAStructure& s, const Point& pt, double floor) {
  const double A = evaluate(s.A, pt), B = evaluate(s.B, pt),
               C = evaluate(s.C, pt), D = evaluate(s.D, pt),
               E = evaluate(s.E, pt);
  const double pf = -B * B + A * C - D * E;
  if (!(std::fabs(pf) >= floor))
    throw DegeneratePointError("rho_at: |Pf| = " + to_string(Expr(std::fabs(pf))) +
                               " below floor at " + to_string(pt));
  const double r = 1.0 / std::sqrt(std::fabs(pf));
  Mat4 m;
  m(0, 0) = B;  m(0, 1) = -A; m(0, 2) = 0;  m(0, 3) = -D;
  m(1, 0) = C;  m(1, 1) = -B; m(1, 2) = D;  m(1, 3) = 0;
  m(2, 0) = 0;  m(2, 1) = E;  m(2, 2) = B;  m(2, 3) = C;
  m(3, 0) = -E; m(3, 1) = 0;  m(3, 2) = -A; m(3, 3) = -B;
  m = r * m;
  for (double& v : m.a) v += 0.0;  // flush -0.0
  return m;
}

Mat<Expr, 4> rho_field(const MAStructure& s, const SignedRegion& region) {
  const Expr signed_pf = region.sign > 0 ? pfaffian(s) : -pfaffian(s);
  const Expr r = Expr(1.0) / sqrt(signed_pf);
  Mat<Expr, 4> m;
  m(0, 0) = s.B;  m(0, 1) = -s.A; m(0, 2) = Expr(0.0); m(0, 3) = -s.D;
  m(1, 0) = s.C;  m(1, 1) = -s.B; m(1, 2) = s.D;       m(1, 3) = Expr(0.0);
  m(2, 0) = Expr(0.0); m(2, 1) = s.E; m(2, 2) = s.B;   m(2, 3) = s.C;
  m(3, 0) = -s.E; m(3, 1) = Expr(0.0); m(3, 2) = -s.A; m(3, 3) = -s.B;
  for (auto& entry : m.a) entry = r * entry;
  return m;
}

namespace {

struct Jet {
  Expr fx, fy, fxx, fxy, fyy;
};

Jet second_jet(const Expr& f) {
  if (depends_on(f, Var::p) || depends_on(f, Var::q))
    throw Error("residual: the candidate solution must depend on x and y only");
  Jet j;
  j.fx = differentiate(f, Var::x);
  j.fy = differentiate(f, Var::y);
  j.fxx = differentiate(j.fx, Var::x);
  j.fxy = differentiate(j.fx, Var::y);
  j.fyy = differentiate(j.fy, Var::y);
  return j;
}

Expr on_graph(const Expr& coeff, const Jet& j) {
  return substitute(substitute(coeff, Var::p, j.fx), Var::q, j.fy);
}

}  // namespace

Expr residual(const MAStructure& s, const Expr& f) {
  const Jet j = second_jet(f);
  const Expr hess = j.fxx * j.fyy - pow(j.fxy, 2);
  return on_graph(s.A, j) * j.fxx + Expr(2.0) * on_graph(s.B, j) * j.fxy +
         on_graph(s.C, j) * j.fyy + on_graph(s.D, j) * hess + on_graph(s.E, j);
}

Expr pullback_oracle(const MAStructure& s, const Expr& f) {
  const Jet j = second_jet(f);
  const TwoForm b = to_two_form(s);
  // dp -> fxx dx + fxy dy, dq -> fxy dx + fyy dy; collect the dx^dy term.
  const Expr hess = j.fxx * j.fyy - pow(j.fxy, 2);
  return on_graph(b.c_xy, j) + on_graph(b.c_xp, j) * j.fxy +
         on_graph(b.c_xq, j) * j.fyy - on_graph(b.c_yp, j) * j.fxx -
         on_graph(b.c_yq, j) * j.fxy + on_graph(b.c_pq, j) * hess;
}

}  // namespace mage
