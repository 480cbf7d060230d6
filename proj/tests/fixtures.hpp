#pragma once

#include <string>
#include <utility>

#include "rmf/elementary_divisor.hpp"
#include "rmf/errors.hpp"
#include "rmf/rational_matrix.hpp"
#include "rmf/spectral.hpp"

namespace rmf::testing {

// Reference rank-2 instance with divisor poles (0, 1), zeros (2, 3): the
// coordinate chart is degenerate there (d1.a2 = 0), which the chart tests
// rely on.
inline SpectralType fixture_a_type() {
  SpectralType T;
  T.rho1 = Complex(2.0, 0.0);
  T.rho2 = Complex(1.0, 0.0);
  T.zeta1 = Complex(2.0, 0.0);
  T.zeta2 = Complex(3.0, 0.0);
  T.z1 = Complex(0.0, 0.0);
  T.z2 = Complex(1.0, 0.0);
  T.k1 = Complex(-2.0, 0.0);
  T.k2 = Complex(-2.0, 0.0);
  T.mu = Complex(1.0, 0.0);
  return T;
}

inline SpectralPoint fixture_a_point() {
  return {Complex(5.0, 0.0), Complex(3.0, 0.0)};
}

// Same point with zeta1 moved to 6: fully generic for the chart, the flows
// and the recurrence.
inline SpectralType fixture_b_type() {
  SpectralType T = fixture_a_type();
  T.zeta1 = Complex(6.0, 0.0);
  T.k1 = Complex(-4.0, 0.0);
  T.k2 = Complex(-4.0, 0.0);
  return T;
}

inline SpectralPoint fixture_b_point() { return fixture_a_point(); }

inline RationalMatrixFunction fixture_a() {
  return from_spectral(fixture_a_type(), fixture_a_point());
}

inline RationalMatrixFunction fixture_b() {
  return from_spectral(fixture_b_type(), fixture_b_point());
}

inline CVec vec2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return v;
}

inline CRow row2(Complex a, Complex b) {
  CRow r(2);
  r << a, b;
  return r;
}

inline CMat mat2(Complex a, Complex b, Complex c, Complex d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

// One-pole divisor diag((z - 1)/z, 1).
inline ElementaryDivisor fixture_e() {
  return make_divisor(Complex(0.0, 0.0), Complex(1.0, 0.0), vec2(1.0, 0.0), row2(-1.0, 0.0));
}

inline CMat fixture_a_l1() { return mat2(-4.0, 0.0, 5.0, 0.0); }
inline CMat fixture_a_l2() { return mat2(0.0, 0.0, -4.0, -2.0); }
inline CMat fixture_a_m1() { return mat2(-1.0, 0.0, 1.5, 0.0); }
inline CMat fixture_a_m2() { return mat2(0.0, 0.0, -1.0, -2.0); }

inline CMat fixture_b_l1() { return mat2(-24.0, -16.0, 5.0, 10.0 / 3.0); }
inline CMat fixture_b_l2() { return mat2(16.0, 88.0 / 3.0, -4.0, -22.0 / 3.0); }

template <typename Derived>
double maxabs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

// Code of the Error thrown by f, or "" when f returns normally.
template <typename F>
std::string thrown_code(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const Error& e) {
    return e.code();
  }
  return {};
}

}  // namespace rmf::testing
