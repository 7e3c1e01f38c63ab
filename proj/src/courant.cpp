// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "mage/courant.hpp"

#include <cmath>

namespace mage {

Section Section::basis(int i) {
  Section s;
  if (i < 4)
    s.vec[static_cast<std::size_t>(i)] = Expr(1.0);
  else
    s.form[static_cast<std::size_t>(i - 4)] = Expr(1.0);
  return s;
}

Section operator+(const Section& a, const Section& b) {
  Section r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.vec[i] = a.vec[i] + b.vec[i];
    r.form[i] = a.form[i] + b.form[i];
  }
  return r;
}

Section operator*(const Expr& c, const Section& s) {
  Section r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.vec[i] = c * s.vec[i];
    r.form[i] = c * s.form[i];
  }
  return r;
}

namespace {

using Vec4 = std::array<Expr, 4>;

Vec4 lie_bracket(const Vec4& x, const Vec4& y) {
  Vec4 r;
  for (std::size_t i = 0; i < 4; ++i) {
    Expr s(0.0);
    for (Var v : kVars) {
      const std::size_t j = static_cast<std::size_t>(v);
      s = s + x[j] * differentiate(y[i], v) - y[j] * differentiate(x[i], v);
    }
    r[i] = s;
  }
  return r;
}

Expr pairing(const Vec4& x, const Vec4& xi) {
  Expr s(0.0);
  for (std::size_t i = 0; i < 4; ++i) s = s + x[i] * xi[i];
  return s;
}

Vec4 contract(const Vec4& x, const TwoForm& b) {
  const Mat<Expr, 4> m = matrix_of(b);
  Vec4 r;
  for (int j = 0; j < 4; ++j) {
    Expr s(0.0);
    for (int i = 0; i < 4; ++i)
      s = s + x[static_cast<std::size_t>(i)] * m(i, j);
    r[static_cast<std::size_t>(j)] = s;
  }
  return r;
}

// Cartan formula L_X xi = d(X . xi) + X . d xi.
Vec4 lie_derivative(const Vec4& x, const Vec4& xi) {
  const OneForm d_pair = exterior_derivative_scalar(pairing(x, xi));
  OneForm xi_form;
  xi_form.c = xi;
  const Vec4 contracted = contract(x, exterior_derivative(xi_form));
  Vec4 r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = d_pair.c[i] + contracted[i];
  return r;
}

}  // namespace

Section courant_bracket(const Section& s1, const Section& s2) {
  Section r;
  r.vec = lie_bracket(s1.vec, s2.vec);
  const Vec4 lx_zeta = lie_derivative(s1.vec, s2.form);
  const Vec4 ly_xi = lie_derivative(s2.vec, s1.form);
  const OneForm correction = exterior_derivative_scalar(
      pairing(s1.vec, s2.form) - pairing(s2.vec, s1.form));
  for (std::size_t i = 0; i < 4; ++i)
    r.form[i] = lx_zeta[i] - ly_xi[i] - Expr(0.5) * correction.c[i];
  return r;
}

Section apply(const GenEndoField& j, const Section& s) {
  Section r;
  for (int i = 0; i < 4; ++i) {
    Expr v(0.0), f(0.0);
    for (int k = 0; k < 4; ++k) {
      const std::size_t ks = static_cast<std::size_t>(k);
      v = v + j.tt(i, k) * s.vec[ks] + j.tc(i, k) * s.form[ks];
      f = f + j.ct(i, k) * s.vec[ks] + j.cc(i, k) * s.form[ks];
    }
    r.vec[static_cast<std::size_t>(i)] = v;
    r.form[static_cast<std::size_t>(i)] = f;
  }
  return r;
}

IsotropyCertificate certify_isotropic(const GenEndoField& j,
                                      const SamplePlan& plan, double tol) {
  IsotropyCertificate cert{j, 0.0};
  for (const Point& pt : sample(plan)) {
    GenEndo at_pt;
    try {
      at_pt = j.at(pt);
    } catch (const EvalError&) {
      continue;
    }
    const IsotropyResult iso = isotropy_check(at_pt, tol);
    cert.max_pairing = std::max(cert.max_pairing, iso.max_pairing);
    if (!iso.isotropic)
      throw NonIsotropicError(
          "nijenhuis: structure is non-isotropic at " + to_string(pt) +
          " (eta pairing " + to_string(Expr(iso.max_pairing)) +
          " on E" + iso.witness_sign +
          "); its eigenbundles are not almost Dirac structures, so the "
          "Courant torsion is not tensorial there");
  }
  return cert;
}

Section nijenhuis(const IsotropyCertificate& cert, const Section& s1,
                  const Section& s2) {
  const GenEndoField& j = cert.j;
  const Section js1 = apply(j, s1);
  const Section js2 = apply(j, s2);
  const Section t1 = courant_bracket(js1, js2);
  const Section t2 = apply(j, apply(j, courant_bracket(s1, s2)));
  const Section t3 = courant_bracket(js1, s2) + courant_bracket(s1, js2);
  const Section jt3 = apply(j, t3);
  Section r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.vec[i] = t1.vec[i] + t2.vec[i] - jt3.vec[i];
    r.form[i] = t1.form[i] + t2.form[i] - jt3.form[i];
  }
  return r;
}

NijenhuisProbe nijenhuis_basis_probe(const IsotropyCertificate& cert,
                                     const std::vector<Point>& pts) {
  NijenhuisProbe probe;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const Section n =
          nijenhuis(cert, Section::basis(i), Section::basis(j));
      for (const Point& pt : pts) {
        for (std::size_t comp = 0; comp < 8; ++comp) {
          const Expr& e =
              comp < 4 ? n.vec[comp] : n.form[comp - 4];
          double v;
          try {
            v = std::fabs(evaluate(e, pt));
          } catch (const EvalError&) {
            ++probe.skipped_evaluations;
            continue;
          }
          if (v > probe.max_abs) {
            probe.max_abs = v;
            probe.worst_pair_i = i;
            probe.worst_pair_j = j;
            probe.worst_point = pt;
          }
        }
      }
    }
  return probe;
}

const char* to_string(Integrability v) {
  return v == Integrability::Integrable ? "Integrable" : "NotIntegrable";
}

IntegrabilityResult lr_integrability(const MAStructure& s,
                                     const SignedRegion& region,
                                     const SamplePlan& plan, double tol) {
  const MAStructure n = normalize(s, region, plan);
  const ThreeForm db = exterior_derivative(to_two_form(n));
  const Expr coeffs[4] = {db.c_xyp, db.c_xyq, db.c_xpq, db.c_ypq};
  IntegrabilityResult r;
  r.verdict = Integrability::Integrable;
  const SamplePlan guarded = plan.with_pfaffian(pfaffian(s));
  for (int i = 0; i < 4; ++i) {
    r.coefficients[static_cast<std::size_t>(i)] =
        is_zero(coeffs[i], guarded, tol);
    if (!r.coefficients[static_cast<std::size_t>(i)].is_zero() &&
        r.failing_coefficient < 0) {
      r.verdict = Integrability::NotIntegrable;
      r.failing_coefficient = i;
    }
  }
  return r;
}

DivergenceResult divergence_check(const MAStructure& s, const Expr& phi,
                                  const SamplePlan& plan, double tol) {
  const TwoForm total = to_two_form(s) + phi * omega();
  const ThreeForm db = exterior_derivative(total);
  const Expr coeffs[4] = {db.c_xyp, db.c_xyq, db.c_xpq, db.c_ypq};
  DivergenceResult r;
  r.holds = true;
  for (int i = 0; i < 4; ++i) {
    r.coefficients[static_cast<std::size_t>(i)] = is_zero(coeffs[i], plan, tol);
    if (!r.coefficients[static_cast<std::size_t>(i)].is_zero() &&
        r.failing_coefficient < 0) {
      r.holds = false;
      r.failing_coefficient = i;
    }
  }
  return r;
}

}  // namespace mage
