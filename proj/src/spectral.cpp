#include "rmf/spectral.hpp"

#include <cmath>
#include <sstream>

namespace rmf {

namespace {

std::string fmt(Complex z) {
  std::ostringstream os;
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

CMat outer_form(Complex a, Complex b) {
  CMat R(2, 2);
  R << a, a * b, Complex(1.0, 0.0), b;
  return R;
}

double divisor_scale(const SpectralType& T) {
  return std::max({1.0, std::abs(T.z1), std::abs(T.z2), std::abs(T.zeta1), std::abs(T.zeta2),
                   std::abs(T.k1), std::abs(T.k2)});
}

// Residues of L along the two closed-form paths; they are algebraically
// identical and serve as mutual cross-checks.
void l_residues(const SpectralType& T, const SpectralPoint& P, bool direct_path,
                CMat& R1, CMat& R2) {
  const Complex g = P.gamma, pi = P.pi, mu = T.mu;
  const Complex r1 = T.rho1, r2 = T.rho2;
  const Complex z1 = T.z1, z2 = T.z2, h1 = T.zeta1, h2 = T.zeta2;
  const Complex alpha1 = mu * (g - z1) / (z2 - z1);
  const Complex alpha2 = mu * (g - z2) / (z1 - z2);

  Complex a1, b1, a2, b2;
  if (direct_path) {
    a1 = (r1 * (T.k1 + g - z2) - pi * (g - z2) * (g - h2) / (g - z1)) / mu;
    b1 = (r2 * (T.k2 + g - z2) - (r1 * r2 / pi) * (g - h1)) / mu;
    a2 = (r1 * (T.k1 + g - z1) - pi * (g - h2)) / mu;
    b2 = (r2 * (T.k2 + g - z1) - (r1 * r2 / pi) * (g - z1) * (g - h1) / (g - z2)) / mu;
  } else {
    const Complex phi_p = r1 * (g - z1) - pi * (g - h2);
    const Complex phi_m = r1 * (g - h1) - pi * (g - z2);
    a1 = (r1 * T.k1 + (g - z2) / (g - z1) * phi_p) / mu;
    b1 = (r2 * T.k2 - (r2 / pi) * phi_m) / mu;
    a2 = (r1 * T.k1 + phi_p) / mu;
    b2 = (r2 * T.k2 - r2 * (g - z1) / (pi * (g - z2)) * phi_m) / mu;
  }
  R1 = alpha1 * outer_form(a1, b1);
  R2 = alpha2 * outer_form(a2, b2);
}

// Residues of the inverse, with the convention M(z) = diag(1/rho) - sum M_i/(z - zeta_i).
void m_residues(const SpectralType& T, const SpectralPoint& P, bool direct_path,
                CMat& M1, CMat& M2) {
  const Complex g = P.gamma, pi = P.pi, mu = T.mu;
  const Complex r1 = T.rho1, r2 = T.rho2;
  const Complex z1 = T.z1, z2 = T.z2, h1 = T.zeta1, h2 = T.zeta2;
  const Complex beta1 = mu / (r1 * r2) * (g - h1) / (h2 - h1);
  const Complex beta2 = mu / (r1 * r2) * (g - h2) / (h1 - h2);

  Complex c1, d1, c2, d2;
  if (direct_path) {
    c1 = (r2 * (T.k1 - g + h2) + (r1 * r2 / pi) * (g - z1)) / mu;
    d1 = (r1 * (T.k2 - g + h2) + pi * (g - h2) * (g - z2) / (g - h1)) / mu;
    c2 = (r2 * (T.k1 - g + h1) + (r1 * r2 / pi) * (g - h1) * (g - z1) / (g - h2)) / mu;
    d2 = (r1 * (T.k2 - g + h1) + pi * (g - z2)) / mu;
  } else {
    const Complex phi_p = r1 * (g - z1) - pi * (g - h2);
    const Complex phi_m = r1 * (g - h1) - pi * (g - z2);
    c1 = (r2 * T.k1 + (r2 / pi) * phi_p) / mu;
    d1 = (r1 * T.k2 - (g - h2) / (g - h1) * phi_m) / mu;
    c2 = (r2 * T.k1 + r2 * (g - h1) / (pi * (g - h2)) * phi_p) / mu;
    d2 = (r1 * T.k2 - phi_m) / mu;
  }
  M1 = beta1 * outer_form(c1, d1);
  M2 = beta2 * outer_form(c2, d2);
}

double cross_check(const CMat& A, const CMat& B) {
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  return (A - B).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

double type_constraint_residual(const SpectralType& T) {
  return std::abs(T.k1 + T.k2 - (T.z1 - T.zeta1) - (T.z2 - T.zeta2));
}

void validate(const SpectralType& T, double constraint_tol, double tol) {
  if (std::abs(T.rho1) < tol || std::abs(T.rho2) < tol)
    throw NonGeneric("vanishing diagonal entry at infinity");
  if (!points_distinct(T.rho1, T.rho2, tol))
    throw NonGeneric("diagonal entries at infinity collide");
  const Complex pts[] = {T.z1, T.z2, T.zeta1, T.zeta2};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!points_distinct(pts[i], pts[j], tol))
        throw NonGeneric("divisor points collide: " + fmt(pts[i]));
  if (std::abs(T.mu) < tol) throw GaugeDegenerate("mu vanishes");
  if (type_constraint_residual(T) > constraint_tol * divisor_scale(T))
    throw NonGeneric("type constraint violated, residual " +
                     std::to_string(type_constraint_residual(T)));
}

void validate(const SpectralType& T, const SpectralPoint& P, double constraint_tol, double tol) {
  validate(T, constraint_tol, tol);
  for (const auto& pt : {T.z1, T.z2, T.zeta1, T.zeta2})
    if (!points_distinct(P.gamma, pt, tol))
      throw NonGeneric("gamma collides with the divisor point " + fmt(pt));
  if (std::abs(P.pi) < tol) throw NonGeneric("pi vanishes");
}

Complex phi(const SpectralType& T, const SpectralPoint& P, Complex a, Complex b) {
  return T.rho1 * (P.gamma - a) - P.pi * (P.gamma - b);
}

RationalMatrixFunction from_spectral(const SpectralType& T, const SpectralPoint& P, double tol) {
  validate(T, P, 1e-12, tol);
  CMat R1a, R2a, R1b, R2b;
  l_residues(T, P, true, R1a, R2a);
  l_residues(T, P, false, R1b, R2b);
  if (std::max(cross_check(R1a, R1b), cross_check(R2a, R2b)) > 1e-12)
    throw NonGeneric("closed-form residue paths disagree beyond conditioning");
  return construct({T.rho1, T.rho2}, {T.z1, T.z2}, {R1a, R2a},
                   std::vector<Complex>{T.zeta1, T.zeta2}, tol);
}

std::pair<SpectralType, SpectralPoint> extract_spectral(const RationalMatrixFunction& L,
                                                        double tol) {
  if (L.dim() != 2) throw BadInput("spectral coordinates require dimension 2");
  if (L.pole_count() != 2) throw WrongPoleCount("spectral coordinates require two poles");

  const CMat Linf = L.residue_sum();
  const Complex mu = Linf(1, 0);
  if (std::abs(mu) < tol * std::max(1.0, Linf.cwiseAbs().maxCoeff()))
    throw GaugeDegenerate("the lower-left entry at infinity vanishes");

  SpectralType T;
  T.rho1 = L.rho[0];
  T.rho2 = L.rho[1];
  T.z1 = L.poles[0];
  T.z2 = L.poles[1];
  T.zeta1 = L.zeros[0];
  T.zeta2 = L.zeros[1];
  T.k1 = Linf(0, 0) / T.rho1;
  T.k2 = Linf(1, 1) / T.rho2;
  T.mu = mu;

  const Complex R1_21 = L.residues[0].matrix()(1, 0);
  SpectralPoint P;
  P.gamma = T.z1 - R1_21 * (T.z1 - T.z2) / mu;
  for (const auto& pt : {T.z1, T.z2, T.zeta1, T.zeta2})
    if (!points_distinct(P.gamma, pt, tol))
      throw NonGeneric("gamma collides with the divisor point " + fmt(pt));
  P.pi = (P.gamma - T.z1) / (P.gamma - T.zeta2) * evaluate(L, P.gamma, tol)(0, 0);
  if (std::abs(P.pi) < tol) throw NonGeneric("pi vanishes");

  validate(T, P, 1e-10, tol);
  return {T, P};
}

std::pair<SpectralType, SpectralPoint> inverse_spectral_data(const SpectralType& T,
                                                             const SpectralPoint& P,
                                                             double tol) {
  validate(T, P, 1e-12, tol);
  SpectralType Ti;
  Ti.rho1 = Complex(1.0, 0.0) / T.rho1;
  Ti.rho2 = Complex(1.0, 0.0) / T.rho2;
  Ti.z1 = T.zeta1;
  Ti.z2 = T.zeta2;
  Ti.zeta1 = T.z1;
  Ti.zeta2 = T.z2;
  Ti.k1 = -T.k1;
  Ti.k2 = -T.k2;
  Ti.mu = -T.mu / (T.rho1 * T.rho2);

  SpectralPoint Pi;
  Pi.gamma = P.gamma;
  Pi.pi = (P.gamma - T.z1) * (P.gamma - T.zeta1) /
          (P.pi * (P.gamma - T.z2) * (P.gamma - T.zeta2));
  return {Ti, Pi};
}

std::pair<CMat, CMat> inverse_residues_closed_form(const SpectralType& T, const SpectralPoint& P,
                                                   double tol) {
  validate(T, P, 1e-12, tol);
  CMat M1a, M2a, M1b, M2b;
  m_residues(T, P, true, M1a, M2a);
  m_residues(T, P, false, M1b, M2b);
  if (std::max(cross_check(M1a, M1b), cross_check(M2a, M2b)) > 1e-12)
    throw NonGeneric("closed-form inverse residue paths disagree beyond conditioning");
  return {M1a, M2a};
}

double spectral_forms_residual(const SpectralType& T, const SpectralPoint& P, double tol) {
  validate(T, P, 1e-12, tol);
  CMat R1a, R2a, R1b, R2b, M1a, M2a, M1b, M2b;
  l_residues(T, P, true, R1a, R2a);
  l_residues(T, P, false, R1b, R2b);
  m_residues(T, P, true, M1a, M2a);
  m_residues(T, P, false, M1b, M2b);
  return std::max({cross_check(R1a, R1b), cross_check(R2a, R2b), cross_check(M1a, M1b),
                   cross_check(M2a, M2b)});
}

}  // namespace rmf
