#include "rmf/dpv.hpp"

#include <cmath>

#include "rmf/factorization.hpp"
#include "rmf/refactorization.hpp"

namespace rmf {

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

DpvStepReport dpv_step(const DpvState& S, DpvForm form, double tol, double margin) {
  // The constraint tolerance is relaxed against ulp drift along trajectories.
  validate(S.T, S.P, 1e-10, tol);
  const Complex r1 = S.T.rho1, r2 = S.T.rho2, mu = S.T.mu;
  const Complex z1 = S.T.z1, z2 = S.T.z2, h1 = S.T.zeta1, h2 = S.T.zeta2;
  const Complex g = S.P.gamma, pi = S.P.pi;

  if (std::abs(pi - r1) < margin || std::abs(pi - r2) < margin)
    throw PiAtRho("pi sits on a diagonal entry at infinity");

  const Complex z1n = z1 - 1.0, h1n = h1 - 1.0;
  const Complex pts[] = {z1n, z2, h1n, h2};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(pts[i] - pts[j]) < margin)
        throw ShiftCollision("the shifted divisor collides");

  const Complex mu_t = mu * r1 * (pi - r2) / (r2 * (pi - r1));
  const Complex gamma_t = z2 + h2 + r1 * (S.T.k1 - z1 + h2) / (pi - r1) +
                          r2 * (S.T.k2 - z1 + h2 + 1.0) / (pi - r2) - g;

  for (const auto& pt : pts)
    if (std::abs(gamma_t - pt) < margin)
      throw NonGeneric("the new gamma collides with the shifted divisor");

  const Complex ratio = r1 * r2 / pi;
  const Complex pi_printed = ratio * (gamma_t - z2) * (gamma_t - h2) /
                             ((gamma_t - z1n) * (gamma_t - h1n));
  const Complex pi_swapped = ratio * (gamma_t - z1n) * (gamma_t - h1n) /
                             ((gamma_t - z2) * (gamma_t - h2));

  DpvStepReport report;
  Complex pi_t;
  if (form == DpvForm::printed) {
    pi_t = pi_printed;
    report.form_used = DpvForm::printed;
  } else if (form == DpvForm::swapped) {
    pi_t = pi_swapped;
    report.form_used = DpvForm::swapped;
  } else {
    const auto L = from_spectral(S.T, S.P, tol);
    const auto Lt = isomonodromic_step(L, tol);
    const auto [To, Po] = extract_spectral(Lt, tol);
    const double dp = rel(pi_printed, Po.pi);
    const double ds = rel(pi_swapped, Po.pi);
    const bool printed_wins = dp <= ds;
    pi_t = printed_wins ? pi_printed : pi_swapped;
    report.form_used = printed_wins ? DpvForm::printed : DpvForm::swapped;
    const double disc =
        std::max({rel(mu_t, To.mu), rel(gamma_t, Po.gamma), std::min(dp, ds)});
    if (disc > 1e-6)
      throw OracleMismatch("neither index placement matches the refactorization oracle");
    DpvState oracle;
    oracle.T = To;
    oracle.P = Po;
    oracle.step = S.step + 1;
    report.oracle_result = oracle;
    report.max_discrepancy = disc;
  }

  if (std::abs(pi_t - r1) < margin || std::abs(pi_t - r2) < margin)
    throw PiAtRho("the new pi sits on a diagonal entry at infinity");
  if (std::abs(pi_t) < margin) throw NonGeneric("the new pi vanishes");

  DpvState next;
  next.T = S.T;  // rho and k are exact copies
  next.T.z1 = z1n;
  next.T.zeta1 = h1n;
  next.T.mu = mu_t;
  next.P = SpectralPoint{gamma_t, pi_t};
  next.step = S.step + 1;
  report.recurrence_result = next;
  return report;
}

MuIdentityBreakdown mu_identity_breakdown(const RationalMatrixFunction& L,
                                          const RationalMatrixFunction& Lt, double tol) {
  if (L.dim() != 2 || Lt.dim() != 2) throw BadInput("the identities require dimension 2");
  if (L.pole_count() != 2 || Lt.pole_count() != 2)
    throw WrongPoleCount("the identities require two poles");

  const auto [T, P] = extract_spectral(L, tol);
  const auto M = invert(L, tol);
  const auto B1 = right_divisor(L, M, 0, tol);
  const auto B2 = left_divisor(L, M, 1, tol);
  const CMat G1 = B1.numerator();
  const CMat G2 = B2.numerator();
  const CMat L0 = L.L0();

  const CMat Linf = L.residue_sum();
  const CMat Ltinf = Lt.residue_sum();

  MuIdentityBreakdown out;
  {
    const CMat want = G2 * L0 + L0 * G1;
    out.split_residual =
        (Linf - want).cwiseAbs().maxCoeff() / std::max(1.0, Linf.cwiseAbs().maxCoeff());
  }
  {
    const CMat want = (G1 + G2) * L0;
    out.shifted_split_residual =
        (Ltinf - want).cwiseAbs().maxCoeff() / std::max(1.0, Ltinf.cwiseAbs().maxCoeff());
  }

  const Complex mu = Linf(1, 0), mu_t = Ltinf(1, 0);
  out.mu_update_residual =
      std::abs(mu_t - (mu + (L.rho[0] - L.rho[1]) * G1(1, 0))) / std::max(1.0, std::abs(mu_t));

  const CRow& b1 = L.residues[0].row;
  const CVec& c1 = M.residues[0].column;
  if (std::abs(b1(0)) < tol * b1.norm() || std::abs(c1(1)) < tol * c1.norm())
    throw NonGeneric("the scalar identity needs nonvanishing normalization components");
  const CRow bn = b1 / b1(0);
  const CVec cn = c1 / c1(1);
  out.pairing_value = (bn * cn).value();
  out.scalar_lhs = (mu_t / mu) * out.pairing_value;
  out.scalar_rhs = (L.poles[0] - L.zeros[0]) * L.rho[0] * (P.pi - L.rho[1]) / P.pi;
  out.scalar_residual =
      std::abs(out.scalar_lhs - out.scalar_rhs) / std::max(1.0, std::abs(out.scalar_rhs));
  return out;
}

double mu_identity_check(const RationalMatrixFunction& L, const RationalMatrixFunction& Lt,
                         double tol) {
  const auto b = mu_identity_breakdown(L, Lt, tol);
  return std::max({b.split_residual, b.shifted_split_residual, b.mu_update_residual,
                   b.scalar_residual});
}

std::vector<DpvStepReport> trajectory(const DpvState& S0, int n, DpvForm form, double tol,
                                      double margin) {
  if (n < 1) throw BadInput("need at least one step");
  std::vector<DpvStepReport> out;
  out.reserve(static_cast<size_t>(n));
  DpvState cur = S0;
  for (int i = 1; i <= n; ++i) {
    try {
      out.push_back(dpv_step(cur, form, tol, margin));
    } catch (Error& e) {
      e.step_index = i;
      throw;
    }
    cur = out.back().recurrence_result;
  }
  return out;
}

}  // namespace rmf
