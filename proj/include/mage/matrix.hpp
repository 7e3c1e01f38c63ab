// Copyright (c) 2026 The mage Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mage {

// Dense fixed-size square matrix. T is double for numeric work or Expr for
// symbolic endomorphism fields; inverse/determinant/norm exist only for
// double entries.
template <typename T, int N>
struct Mat {
  std::array<T, static_cast<std::size_t>(N) * N> a{};

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * N + j]; }
  const T& operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * N + j];
  }

  static Mat zero() { return Mat{}; }

  static Mat identity() {
    Mat m;
    for (int i = 0; i < N; ++i) m(i, i) = T(1);
    return m;
  }

  Mat transposed() const {
    Mat t;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    Mat r;
    for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
  }

  friend Mat operator-(const Mat& x, const Mat& y) {
    Mat r;
    for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
  }

  friend Mat operator-(const Mat& x) {
    Mat r;
    for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = -x.a[k];
    return r;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        T s = x(i, 0) * y(0, j);
        for (int k = 1; k < N; ++k) s = s + x(i, k) * y(k, j);
        r(i, j) = s;
      }
    return r;
  }

  friend Mat operator*(const T& c, const Mat& x) {
    Mat r;
    for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = c * x.a[k];
    return r;
  }
};

using Mat4 = Mat<double, 4>;
using Mat8 = Mat<double, 8>;

template <int N>
double max_norm(const Mat<double, N>& m) {
  double r = 0.0;
  for (double v : m.a) r = std::max(r, std::fabs(v));
  return r;
}

template <int N>
double trace(const Mat<double, N>& m) {
  double t = 0.0;
  for (int i = 0; i < N; ++i) t += m(i, i);
  return t;
}

// Gauss-Jordan with partial pivoting. Throws on |pivot| < tol.
template <int N>
Mat<double, N> inverse(Mat<double, N> m, double tol = 1e-12) {
  Mat<double, N> inv = Mat<double, N>::identity();
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
    if (std::fabs(m(piv, col)) < tol)
      throw std::domain_error("matrix is singular to working precision");
    if (piv != col)
      for (int j = 0; j < N; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double d = m(col, col);
    for (int j = 0; j < N; ++j) {
      m(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const double f = m(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < N; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

template <int N>
double determinant(Mat<double, N> m) {
  double det = 1.0;
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
    if (m(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < N; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < N; ++r) {
      const double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < N; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

// Complex 8x8 as a pair of real matrices (no std::complex matrix stack).
struct CMat8 {
  Mat8 re, im;

  static CMat8 from_real(const Mat8& r) { return CMat8{r, Mat8::zero()}; }

  friend CMat8 operator+(const CMat8& x, const CMat8& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend CMat8 operator-(const CMat8& x, const CMat8& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend CMat8 operator*(const CMat8& x, const CMat8& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  CMat8 transposed() const { return {re.transposed(), im.transposed()}; }
};

inline double max_norm(const CMat8& m) {
  double r = 0.0;
  for (std::size_t k = 0; k < m.re.a.size(); ++k)
    r = std::max(r, std::hypot(m.re.a[k], m.im.a[k]));
  return r;
}

}  // namespace mage
