#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "isingq/model.hpp"

namespace isingq {

// Small dense matrices, row-major. For two-qubit operators on (a, b) the row
// index is 2*bit(a) + bit(b), i.e. kron(A_a, B_b).
template <int D>
struct Mat {
  std::array<cplx, D * D> a{};

  cplx& operator()(int r, int c) { return a[r * D + c]; }
  cplx operator()(int r, int c) const { return a[r * D + c]; }

  static Mat identity() {
    Mat m;
    for (int i = 0; i < D; ++i) m(i, i) = 1;
    return m;
  }
  static Mat diag(std::array<cplx, D> d) {
    Mat m;
    for (int i = 0; i < D; ++i) m(i, i) = d[i];
    return m;
  }
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

template <int D>
Mat<D> operator*(const Mat<D>& x, const Mat<D>& y) {
  Mat<D> r;
  for (int i = 0; i < D; ++i)
    for (int k = 0; k < D; ++k) {
      const cplx v = x(i, k);
      if (v == cplx{}) continue;
      for (int j = 0; j < D; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

template <int D>
Mat<D> operator*(cplx s, Mat<D> x) {
  for (auto& v : x.a) v *= s;
  return x;
}

template <int D>
Mat<D> operator+(Mat<D> x, const Mat<D>& y) {
  for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
  return x;
}

template <int D>
Mat<D> adjoint(const Mat<D>& x) {
  Mat<D> r;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) r(i, j) = std::conj(x(j, i));
  return r;
}

inline Mat4 kron(const Mat2& x, const Mat2& y) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return r;
}

template <int D>
double max_abs_diff(const Mat<D>& x, const Mat<D>& y) {
  double d = 0;
  for (int i = 0; i < D * D; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

// min over unit phases of max |x - e^{i phi} y|; phase fixed by the inner product
template <int D>
double phase_free_distance(const Mat<D>& x, const Mat<D>& y) {
  cplx ip{};
  for (int i = 0; i < D * D; ++i) ip += std::conj(y.a[i]) * x.a[i];
  cplx ph = std::abs(ip) > 0 ? ip / std::abs(ip) : cplx{1};
  return max_abs_diff(x, ph * y);
}

template <int D>
double unitarity_error(const Mat<D>& u) {
  return max_abs_diff(adjoint(u) * u, Mat<D>::identity());
}

namespace gates {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
inline const cplx kI{0, 1};

inline Mat2 H() { return {{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}}; }
inline Mat2 X() { return {{0, 1, 1, 0}}; }
inline Mat2 Y() { return {{0, -kI, kI, 0}}; }
inline Mat2 Z() { return Mat2::diag({1, -1}); }
inline Mat2 S() { return Mat2::diag({1, kI}); }
inline Mat2 Sdg() { return Mat2::diag({1, -kI}); }
inline Mat2 T() { return Mat2::diag({1, std::polar(1.0, kPi / 4)}); }
// e^{c Z} for complex c
inline Mat2 expZ(cplx c) { return Mat2::diag({std::exp(c), std::exp(-c)}); }
// Z(t) = e^{-i t Z/2}, X(t) = e^{-i t X/2}
inline Mat2 Zrot(double t) { return expZ(cplx{0, -t / 2}); }
inline Mat2 Xrot(double t) {
  return {{std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2)}};
}
// real rotation [[cos t/2, -sin t/2],[sin t/2, cos t/2]]
inline Mat2 Yrot(double t) {
  return {{std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2)}};
}
inline Mat2 phase_diag(double p0, double p1) {
  return Mat2::diag({std::polar(1.0, p0), std::polar(1.0, p1)});
}

inline Mat4 CZ() { return Mat4::diag({1, 1, 1, -1}); }
inline Mat4 CNOT() {  // control = first qubit
  Mat4 m;
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return m;
}
inline Mat4 expZZ(cplx c) {
  return Mat4::diag({std::exp(c), std::exp(-c), std::exp(-c), std::exp(c)});
}
inline Mat4 controlled(const Mat2& u) {  // control = first qubit
  Mat4 m;
  m(0, 0) = m(1, 1) = 1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(2 + i, 2 + j) = u(i, j);
  return m;
}

}  // namespace gates

}  // namespace isingq
