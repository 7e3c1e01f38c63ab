// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "mage/gen.hpp"

#include <cmath>

namespace mage {

Mat8 GenEndo::assemble() const {
  Mat8 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      m(i, j) = tt(i, j);
      m(i, j + 4) = tc(i, j);
      m(i + 4, j) = ct(i, j);
      m(i + 4, j + 4) = cc(i, j);
    }
  return m;
}

GenEndo GenEndo::split(const Mat8& m) {
  GenEndo g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      g.tt(i, j) = m(i, j);
      g.tc(i, j) = m(i, j + 4);
      g.ct(i, j) = m(i + 4, j);
      g.cc(i, j) = m(i + 4, j + 4);
    }
  return g;
}

GenEndo operator+(const GenEndo& a, const GenEndo& b) {
  return {a.tt + b.tt, a.tc + b.tc, a.ct + b.ct, a.cc + b.cc};
}

GenEndo operator*(double c, const GenEndo& a) {
  return {c * a.tt, c * a.tc, c * a.ct, c * a.cc};
}

GenEndo GenEndoField::at(const Point& pt) const {
  GenEndo g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      g.tt(i, j) = evaluate(tt(i, j), pt);
      g.tc(i, j) = evaluate(tc(i, j), pt);
      g.ct(i, j) = evaluate(ct(i, j), pt);
      g.cc(i, j) = evaluate(cc(i, j), pt);
    }
  return g;
}

Mat8 eta() {
  Mat8 m;
  for (int i = 0; i < 4; ++i) {
    m(i, i + 4) = 0.5;
    m(i + 4, i) = 0.5;
  }
  return m;
}

const char* to_string(GenType t) {
  switch (t) {
    case GenType::GaP: return "GaP";
    case GenType::GaPC: return "GaPC";
    case GenType::GaC: return "GaC";
    case GenType::GaAC: return "GaAC";
    case GenType::None: return "None";
  }
  return "?";
}

GenClassification classify_gen(const GenEndo& j, double tol) {
  const Mat8 m = j.assemble();
  const Mat8 sq = m * m;
  const Mat8 id = Mat8::identity();
  const double r_plus = max_norm(sq - id);
  const double r_minus = max_norm(sq + id);

  const Mat8 compat = m.transposed() * eta() * m;
  const double e_plus = max_norm(compat - eta());
  const double e_minus = max_norm(compat + eta());

  GenClassification c;
  c.square_residual = std::min(r_plus, r_minus);
  c.eta_residual = std::min(e_plus, e_minus);
  if (r_plus <= tol)
    c.gamma1 = 1;
  else if (r_minus <= tol)
    c.gamma1 = -1;
  if (e_plus <= tol)
    c.gamma2 = 1;
  else if (e_minus <= tol)
    c.gamma2 = -1;

  if (c.gamma1 == 1 && c.gamma2 == 1) c.type = GenType::GaP;
  else if (c.gamma1 == 1 && c.gamma2 == -1) c.type = GenType::GaPC;
  else if (c.gamma1 == -1 && c.gamma2 == 1) c.type = GenType::GaC;
  else if (c.gamma1 == -1 && c.gamma2 == -1) c.type = GenType::GaAC;
  else c.type = GenType::None;
  return c;
}

GenEndo build_diag(const Mat4& k, int eps) {
  GenEndo g;
  g.tt = k;
  g.cc = static_cast<double>(eps) * k.transposed();
  return g;
}

GenEndo build_antidiag(const Mat4& m, MatSymmetry symmetry, int eps) {
  const Mat4 mt = m.transposed();
  const double sym_dev = symmetry == MatSymmetry::Antisymmetric
                             ? max_norm(m + mt)
                             : max_norm(m - mt);
  if (sym_dev > 1e-10)
    throw Error("build_antidiag: matrix does not match the claimed symmetry");
  GenEndo g;
  g.tc = inverse(m);  // throws on |det| below pivot tolerance
  g.ct = static_cast<double>(eps) * m;
  return g;
}

GenEndo j_rho(const MAStructure& s, const Point& pt, int eps1, double floor) {
  return build_diag(rho_at(s, pt, floor), eps1);
}

GenEndo j_alpha(const MAStructure& s, const Point& pt, int eps2) {
  return build_antidiag(matrix_at(to_two_form(s), pt),
                        MatSymmetry::Antisymmetric, eps2);
}

GenEndo j_omega(int eps3) {
  static const Mat4 w = matrix_at(omega(), Point{});
  return build_antidiag(w, MatSymmetry::Antisymmetric, eps3);
}

GenEndoField diag_field(const Mat<Expr, 4>& k, int eps) {
  GenEndoField f;
  f.tt = k;
  f.cc = Expr(static_cast<double>(eps)) * k.transposed();
  for (auto& e : f.tc.a) e = Expr(0.0);
  for (auto& e : f.ct.a) e = Expr(0.0);
  return f;
}

GenEndoField j_rho_field(const MAStructure& s, const SignedRegion& region,
                         int eps1) {
  return diag_field(rho_field(s, region), eps1);
}

GenEndoField j_omega_field(int eps3) {
  const GenEndo num = j_omega(eps3);
  GenEndoField f;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      f.tt(i, j) = Expr(num.tt(i, j));
      f.tc(i, j) = Expr(num.tc(i, j));
      f.ct(i, j) = Expr(num.ct(i, j));
      f.cc(i, j) = Expr(num.cc(i, j));
    }
  return f;
}

GenEndo build_banos(const MAStructure& s, const Point& pt, double floor) {
  const double pf = evaluate(pfaffian(s), pt);
  if (!(std::fabs(pf) >= floor))
    throw DegeneratePointError("build_banos: degenerate point " + to_string(pt));
  const Mat4 w = matrix_at(omega(), Point{});
  const Mat4 winv = inverse(w);
  const Mat4 a = winv * matrix_at(to_two_form(s), pt);  // unnormalized
  GenEndo g;
  g.tt = a;
  g.tc = winv;
  g.ct = -(w + w * (a * a));
  g.cc = -a.transposed();
  return g;
}

GenEndo anticommutator(const GenEndo& j1, const GenEndo& j2) {
  const Mat8 m1 = j1.assemble(), m2 = j2.assemble();
  return GenEndo::split(m1 * m2 + m2 * m1);
}

Projectors eigen_projectors(const GenEndo& j, double tol) {
  const GenClassification c = classify_gen(j, tol);
  if (c.gamma1 == 0)
    throw UnclassifiableError(
        "eigen_projectors: J^2 is not +-Id to tolerance (residual " +
        to_string(Expr(c.square_residual)) + ")");
  const Mat8 m = j.assemble();
  const Mat8 id = Mat8::identity();
  Projectors pr;
  if (c.gamma1 == 1) {
    pr.complex_eigenvalues = false;
    pr.plus = CMat8::from_real(0.5 * (id + m));
    pr.minus = CMat8::from_real(0.5 * (id - m));
  } else {
    pr.complex_eigenvalues = true;
    pr.plus = CMat8{0.5 * id, -0.5 * m};   // (Id - iJ)/2
    pr.minus = CMat8{0.5 * id, 0.5 * m};   // (Id + iJ)/2
  }
  const double dev_plus = max_norm(pr.plus * pr.plus - pr.plus);
  const double dev_minus = max_norm(pr.minus * pr.minus - pr.minus);
  pr.idempotency_residual = std::max(dev_plus, dev_minus);
  pr.rank_plus = static_cast<int>(std::lround(trace(pr.plus.re)));
  pr.rank_minus = static_cast<int>(std::lround(trace(pr.minus.re)));
  return pr;
}

IsotropyResult isotropy_check(const GenEndo& j, double tol) {
  const Projectors pr = eigen_projectors(j, tol);
  const CMat8 eta_c = CMat8::from_real(eta());
  IsotropyResult r;
  for (const char sign : {'+', '-'}) {
    const CMat8& p = sign == '+' ? pr.plus : pr.minus;
    const CMat8 pairing = p.transposed() * eta_c * p;  // bilinear, E x E
    for (int i = 0; i < 8; ++i)
      for (int k = 0; k < 8; ++k) {
        const double mag = std::hypot(pairing.re(i, k), pairing.im(i, k));
        if (mag > r.max_pairing) {
          r.max_pairing = mag;
          r.witness_i = i;
          r.witness_j = k;
          r.witness_sign = sign;
        }
      }
  }
  r.isotropic = r.max_pairing <= tol;
  return r;
}

}  // namespace mage
