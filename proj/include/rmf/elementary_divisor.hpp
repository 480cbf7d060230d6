#pragma once

#include "rmf/numerics.hpp"

namespace rmf {

// B(z) = I + p q / (z - z0) with q p = z0 - zeta0, so that
// det B(z) = (z - zeta0)/(z - z0) and B(z)^-1 = I - p q / (z - zeta0).
struct ElementaryDivisor {
  Complex z0;
  Complex zeta0;
  CVec p;
  CRow q;

  Eigen::Index dim() const { return p.size(); }
  CMat numerator() const { return p * q; }
};

// Normalizes p so that q p = z0 - zeta0 holds exactly up to rounding.
ElementaryDivisor make_divisor(Complex z0, Complex zeta0, const CVec& p, const CRow& q,
                               double tol = kGenericityTol);

CMat evaluate(const ElementaryDivisor& B, Complex z, double tol = kGenericityTol);

ElementaryDivisor inverse(const ElementaryDivisor& B);

// Scalar action on the invariant line: (z - zeta0)/(z - z0).
Complex eigen_action(const ElementaryDivisor& B, Complex z, double tol = kGenericityTol);

// Reconstructs the divisor from its row q, one generic action sample
// B(zstar) w = v modulo the known eigen directions: the column is
// p = (z0 - zstar) w/(q w) + (zstar - zeta0) v/(q v).
ElementaryDivisor from_action(Complex z0, Complex zeta0, Complex zstar,
                              const CRow& q, const CVec& w, const CVec& v,
                              double tol = kGenericityTol);

// Mirror image acting on rows: w B(zstar) = v with known column p.
ElementaryDivisor from_action_left(Complex z0, Complex zeta0, Complex zstar,
                                   const CVec& p, const CRow& w, const CRow& v,
                                   double tol = kGenericityTol);

// Conjugation A B(z) A^-1, which keeps (z0, zeta0).
ElementaryDivisor twist(const ElementaryDivisor& B, const CMat& A,
                        double tol = kGenericityTol);

// Same points and same rank-one projector p q / (q p).
bool approx_equal(const ElementaryDivisor& a, const ElementaryDivisor& b,
                  double tol = 1e-10);

}  // namespace rmf
