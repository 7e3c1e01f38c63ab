// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "mage/quadric.hpp"

#include <cmath>

namespace mage {

double k_value(const FamilyCoeffs& c, int sgn_pf) {
  return -static_cast<double>(sgn_pf) * c.a1 * c.a1 +
         static_cast<double>(c.eps2) * c.a2 * c.a2 +
         static_cast<double>(c.eps3) * c.a3 * c.a3;
}

bool is_admissible(const FamilyCoeffs& c, int sgn_pf, double tol) {
  return std::fabs(std::fabs(k_value(c, sgn_pf)) - 1.0) <= tol;
}

const char* to_string(QuadricType t) {
  switch (t) {
    case QuadricType::Sphere: return "Sphere";
    case QuadricType::Hyperboloid1Sheet: return "Hyperboloid1Sheet";
    case QuadricType::Hyperboloid2Sheet: return "Hyperboloid2Sheet";
    case QuadricType::Empty: return "Empty";
  }
  return "?";
}

QuadricType quadric_type(int sgn_pf, int k, int eps2, int eps3) {
  if (k != 1 && k != -1) throw Error("quadric_type: |k| must be 1");
  if ((sgn_pf != 1 && sgn_pf != -1) || (eps2 != 1 && eps2 != -1) ||
      (eps3 != 1 && eps3 != -1))
    throw Error("quadric_type: signs must be +-1");
  // Signature of the diagonal form (-sgnPf, eps2, eps3) against the target k:
  // count coefficients equal to k (the "positive" directions after dividing
  // by k).
  const int coeffs[3] = {-sgn_pf, eps2, eps3};
  int pos = 0;
  for (int s : coeffs)
    if (s == k) ++pos;
  switch (pos) {
    case 3: return QuadricType::Sphere;
    case 2: return QuadricType::Hyperboloid1Sheet;
    case 1: return QuadricType::Hyperboloid2Sheet;
    default: return QuadricType::Empty;
  }
}

std::string induced_conic_a2_zero(int sgn_pf, int k, int eps3) {
  const int c1 = -sgn_pf, c3 = eps3;
  if (c1 != k && c3 != k) return "empty";
  const std::string kind = (c1 == k && c3 == k) ? "circle" : "hyperbola";
  const std::string lhs = std::string(c1 > 0 ? "a1^2 " : "-a1^2 ") +
                          (c3 > 0 ? "+ a3^2" : "- a3^2");
  return kind + ": " + lhs + " = " + std::to_string(k);
}

std::optional<FamilyCoeffs> draw_admissible(const CellSpec& cell,
                                            std::mt19937_64& rng) {
  auto draw = [&rng]() {
    return -3.0 + 6.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  FamilyCoeffs c{draw(), draw(), draw(), cell.eps2, cell.eps3};
  if (cell.eps2 * cell.eps3 != cell.sgn_pf) {
    // Conic in (a1, a3) exists iff some coefficient of the restricted form
    // matches the target k; otherwise fall back to the (a1, a2) conic.
    if (cell.eps3 == cell.k || -cell.sgn_pf == cell.k)
      c.a2 = 0.0;
    else
      c.a3 = 0.0;
  }
  const double kv = k_value(c, cell.sgn_pf);
  if (kv == 0.0 || (kv > 0) != (cell.k > 0)) return std::nullopt;
  if (std::fabs(kv) < 1e-3) return std::nullopt;  // keep the scaling tame
  const double scale = 1.0 / std::sqrt(std::fabs(kv));
  c.a1 *= scale;
  c.a2 *= scale;
  c.a3 *= scale;
  return c;
}

AntiCommutativityResult anticommutativity_check(const MAStructure& s, int eps2,
                                                int eps3,
                                                const SamplePlan& plan,
                                                double tol) {
  const Expr pf = pfaffian(s);
  const double target = static_cast<double>(eps2 * eps3);
  AntiCommutativityResult r;
  r.holds = true;
  for (const Point& pt : sample(plan)) {
    double v;
    try {
      v = evaluate(pf, pt);
    } catch (const EvalError&) {
      continue;
    }
    const double dev = std::fabs(v - target);
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev > tol && r.holds) {
      r.holds = false;
      r.witness = pt;
    }
  }
  return r;
}

GenEndo assemble_family(const MAStructure& s, const FamilyCoeffs& c,
                        const Point& pt, double floor) {
  GenEndo m;
  if (c.a1 != 0.0) m = m + c.a1 * j_rho(s, pt, /*eps1=*/-1, floor);
  if (c.a2 != 0.0) m = m + c.a2 * j_alpha(s, pt, c.eps2);
  if (c.a3 != 0.0) m = m + c.a3 * j_omega(c.eps3);
  return m;
}

GenEndo build_family_member(const MAStructure& s, const FamilyCoeffs& c,
                            const Point& pt, double floor) {
  const double pf = evaluate(pfaffian(s), pt);
  if (!(std::fabs(pf) >= floor))
    throw PreconditionError("pfaffian_floor",
                            "|Pf| = " + to_string(Expr(std::fabs(pf))) +
                                " at " + to_string(pt));
  const int sgn_pf = pf > 0 ? 1 : -1;
  if (!is_admissible(c, sgn_pf))
    throw PreconditionError(
        "admissibility", "|k| = " + to_string(Expr(std::fabs(k_value(c, sgn_pf)))) +
                             " is not 1");
  if (c.a2 != 0.0 && c.a3 != 0.0) {
    const double dev = std::fabs(pf - static_cast<double>(c.eps2 * c.eps3));
    if (dev > 1e-9)
      throw PreconditionError(
          "anticommutativity",
          "Pf = " + to_string(Expr(pf)) + " != eps2*eps3 = " +
              std::to_string(c.eps2 * c.eps3) + " at " + to_string(pt));
  }
  return assemble_family(s, c, pt, floor);
}

DistinctnessResult distinctness_check(const MAStructure& s,
                                      const FamilyCoeffs& c1,
                                      const FamilyCoeffs& c2,
                                      const SamplePlan& plan, double tol) {
  DistinctnessResult r;
  for (const Point& pt : sample(plan)) {
    double pf;
    try {
      pf = evaluate(pfaffian(s), pt);
    } catch (const EvalError&) {
      continue;
    }
    if (std::fabs(pf) < plan.floor) continue;
    const Mat8 d = assemble_family(s, c1, pt, plan.floor).assemble() -
                   assemble_family(s, c2, pt, plan.floor).assemble();
    const double n = max_norm(d);
    if (n > r.max_difference) {
      r.max_difference = n;
      if (n > tol && !r.distinct) {
        r.distinct = true;
        r.witness = pt;
      }
    }
  }
  return r;
}

RescaleReport rescale_transform(const MAStructure& s, const Expr& h,
                                const SamplePlan& plan, int eps2) {
  RescaleReport rep;
  const MAStructure hs = h * s;

  rep.pfaffian_law = is_zero(pfaffian(hs) - pow(h, 2) * pfaffian(s), plan);
  rep.h_minus_one = is_zero(h - Expr(1.0), plan);
  rep.family_preserved = rep.h_minus_one.is_zero();

  const auto pts = sample(plan.with_pfaffian(pfaffian(s)));
  bool first = true;
  int h_sign = 0;
  for (const Point& pt : pts) {
    const double hv = evaluate(h, pt);
    if (std::fabs(hv) < 1e-12)
      throw Error("rescale_transform: h vanishes at " + to_string(pt));
    const double sgn_h = hv > 0 ? 1.0 : -1.0;
    if (h_sign == 0)
      h_sign = hv > 0 ? 1 : -1;
    else if (h_sign != (hv > 0 ? 1 : -1))
      throw Error(
          "rescale_transform: h changes sign on the box, so it vanishes "
          "between samples (witness " + to_string(pt) + ")");
    const Mat4 lhs = rho_at(hs, pt, 0.0);
    const Mat4 rhs = sgn_h * rho_at(s, pt, 0.0);
    rep.rho_law_max_deviation =
        std::max(rep.rho_law_max_deviation, max_norm(lhs - rhs));
    if (first) {
      // Transformed antidiagonal blocks: tc scales by 1/h, ct by h.
      const GenEndo ja = j_alpha(s, pt, eps2);
      const GenEndo ja_h = j_alpha(hs, pt, eps2);
      double tc_ratio = 0.0, ct_ratio = 0.0;
      for (int i = 0; i < 4 && tc_ratio == 0.0; ++i)
        for (int j = 0; j < 4 && tc_ratio == 0.0; ++j)
          if (std::fabs(ja.tc(i, j)) > 1e-9)
            tc_ratio = ja_h.tc(i, j) / ja.tc(i, j);
      for (int i = 0; i < 4 && ct_ratio == 0.0; ++i)
        for (int j = 0; j < 4 && ct_ratio == 0.0; ++j)
          if (std::fabs(ja.ct(i, j)) > 1e-9)
            ct_ratio = ja_h.ct(i, j) / ja.ct(i, j);
      rep.j_alpha_tc_scale = tc_ratio;  // expected 1/h(pt)
      rep.j_alpha_ct_scale = ct_ratio;  // expected h(pt)
      first = false;
    }
  }
  return rep;
}

}  // namespace mage
