// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "mage/forms.hpp"

namespace mage {

namespace {

Expr d(const Expr& e, Var v) { return differentiate(e, v); }

}  // namespace

TwoForm omega() {
  TwoForm w;
  w.c_xp = Expr(1.0);
  w.c_yq = Expr(1.0);
  return w;
}

TwoForm operator+(const TwoForm& a, const TwoForm& b) {
  return {a.c_xy + b.c_xy, a.c_xp + b.c_xp, a.c_xq + b.c_xq,
          a.c_yp + b.c_yp, a.c_yq + b.c_yq, a.c_pq + b.c_pq};
}

TwoForm operator*(const Expr& f, const TwoForm& b) {
  return {f * b.c_xy, f * b.c_xp, f * b.c_xq,
          f * b.c_yp, f * b.c_yq, f * b.c_pq};
}

Expr wedge_top(const TwoForm& a, const TwoForm& b) {
  return a.c_xy * b.c_pq - a.c_xp * b.c_yq + a.c_xq * b.c_yp +
         a.c_yp * b.c_xq - a.c_yq * b.c_xp + a.c_pq * b.c_xy;
}

ThreeForm exterior_derivative(const TwoForm& b) {
  ThreeForm r;
  r.c_xyp = d(b.c_yp, Var::x) - d(b.c_xp, Var::y) + d(b.c_xy, Var::p);
  r.c_xyq = d(b.c_yq, Var::x) - d(b.c_xq, Var::y) + d(b.c_xy, Var::q);
  r.c_xpq = d(b.c_pq, Var::x) - d(b.c_xq, Var::p) + d(b.c_xp, Var::q);
  r.c_ypq = d(b.c_pq, Var::y) - d(b.c_yq, Var::p) + d(b.c_yp, Var::q);
  return r;
}

TwoForm exterior_derivative(const OneForm& g) {
  auto at = [&](Var v) { return g.c[static_cast<std::size_t>(v)]; };
  TwoForm r;
  r.c_xy = d(at(Var::y), Var::x) - d(at(Var::x), Var::y);
  r.c_xp = d(at(Var::p), Var::x) - d(at(Var::x), Var::p);
  r.c_xq = d(at(Var::q), Var::x) - d(at(Var::x), Var::q);
  r.c_yp = d(at(Var::p), Var::y) - d(at(Var::y), Var::p);
  r.c_yq = d(at(Var::q), Var::y) - d(at(Var::y), Var::q);
  r.c_pq = d(at(Var::q), Var::p) - d(at(Var::p), Var::q);
  return r;
}

OneForm exterior_derivative_scalar(const Expr& f) {
  OneForm r;
  for (Var v : kVars) r.c[static_cast<std::size_t>(v)] = d(f, v);
  return r;
}

Mat<Expr, 4> matrix_of(const TwoForm& b) {
  Mat<Expr, 4> m;
  m(0, 1) = b.c_xy;
  m(0, 2) = b.c_xp;
  m(0, 3) = b.c_xq;
  m(1, 2) = b.c_yp;
  m(1, 3) = b.c_yq;
  m(2, 3) = b.c_pq;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = -m(j, i);
  return m;
}

Mat4 matrix_at(const TwoForm& b, const Point& pt) {
  const Mat<Expr, 4> sym = matrix_of(b);
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      m(i, j) = evaluate(sym(i, j), pt);
      m(j, i) = -m(i, j);
    }
  return m;
}

}  // namespace mage
