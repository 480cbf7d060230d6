#pragma once

#include <utility>

#include "rmf/rational_matrix.hpp"

namespace rmf {

// Spectral coordinates of a rank-2 two-pole instance. The type is constrained
// by k1 + k2 = (z1 - zeta1) + (z2 - zeta2); (gamma, pi) is the moving point.
struct SpectralType {
  Complex rho1, rho2;
  Complex zeta1, zeta2;
  Complex z1, z2;
  Complex k1, k2;
  Complex mu;
};

struct SpectralPoint {
  Complex gamma;
  Complex pi;
};

// Residual of the type constraint, |k1 + k2 - (z1 - zeta1) - (z2 - zeta2)|.
double type_constraint_residual(const SpectralType& T);

void validate(const SpectralType& T, double constraint_tol = 1e-12,
              double tol = kGenericityTol);
void validate(const SpectralType& T, const SpectralPoint& P,
              double constraint_tol = 1e-12, double tol = kGenericityTol);

// The recurring linear form rho1 (gamma - a) - pi (gamma - b).
Complex phi(const SpectralType& T, const SpectralPoint& P, Complex a, Complex b);

// Closed-form residues from spectral data. Two algebraically identical code
// paths are evaluated and cross-checked internally.
RationalMatrixFunction from_spectral(const SpectralType& T, const SpectralPoint& P,
                                     double tol = kGenericityTol);

std::pair<SpectralType, SpectralPoint> extract_spectral(const RationalMatrixFunction& L,
                                                        double tol = kGenericityTol);

// Spectral data of the inverse function in terms of (T, P).
std::pair<SpectralType, SpectralPoint> inverse_spectral_data(const SpectralType& T,
                                                             const SpectralPoint& P,
                                                             double tol = kGenericityTol);

// Closed-form residues of the inverse, with the additive sign convention of
// InverseData: M(z) = diag(1/rho) - M1/(z - zeta1) - M2/(z - zeta2).
std::pair<CMat, CMat> inverse_residues_closed_form(const SpectralType& T,
                                                   const SpectralPoint& P,
                                                   double tol = kGenericityTol);

// Max-abs disagreement between the two closed-form code paths for the
// residues of L and of its inverse; a conditioning diagnostic.
double spectral_forms_residual(const SpectralType& T, const SpectralPoint& P,
                               double tol = kGenericityTol);

}  // namespace rmf
