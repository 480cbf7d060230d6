#pragma once

#include <optional>
#include <vector>

#include "rmf/rational_matrix.hpp"
#include "rmf/spectral.hpp"

namespace rmf {

// Index placement in the recurrence for the new pi: the printed variant as
// displayed, the swapped variant with the two divisor pairs interchanged, or
// arbitration by the direct matrix refactorization oracle.
enum class DpvForm { printed, swapped, oracle_arbitrated };

struct DpvState {
  SpectralType T;
  SpectralPoint P;
  long step = 0;
};

struct DpvStepReport {
  DpvState recurrence_result;
  std::optional<DpvState> oracle_result;
  // Max relative discrepancy over (mu, gamma, pi) against the oracle.
  std::optional<double> max_discrepancy;
  // printed or swapped; under arbitration, the variant closer to the oracle.
  DpvForm form_used = DpvForm::swapped;
};

// Margin kept around point collisions and pi hitting a diagonal entry.
inline constexpr double kDpvMargin = 1e-6;

DpvStepReport dpv_step(const DpvState& S, DpvForm form = DpvForm::oracle_arbitrated,
                       double tol = kGenericityTol, double margin = kDpvMargin);

// Cross-checks the transition identities between an instance and its
// isomonodromic (or isospectral) successor: the two splittings of the
// first-order coefficient at infinity, the mu update, and the scalar
// pairing identity. Returns the max relative residual.
double mu_identity_check(const RationalMatrixFunction& L, const RationalMatrixFunction& Lt,
                         double tol = kGenericityTol);

// Itemized version of mu_identity_check for reporting.
struct MuIdentityBreakdown {
  double split_residual;        // L_inf = G2 L0 + L0 G1
  double shifted_split_residual;  // Lt_inf = (G1 + G2) L0
  double mu_update_residual;    // mu~ = mu + (rho1 - rho2) (G1)_21
  double scalar_residual;       // (mu~/mu) b1.c1 = (z1-zeta1) rho1 (pi-rho2)/pi
  Complex pairing_value;        // b1.c1 under first-component normalization
  Complex scalar_lhs;
  Complex scalar_rhs;
};

MuIdentityBreakdown mu_identity_breakdown(const RationalMatrixFunction& L,
                                          const RationalMatrixFunction& Lt,
                                          double tol = kGenericityTol);

// n steps from S0; any halt is rethrown with its 1-based step index set.
std::vector<DpvStepReport> trajectory(const DpvState& S0, int n,
                                      DpvForm form = DpvForm::oracle_arbitrated,
                                      double tol = kGenericityTol,
                                      double margin = kDpvMargin);

}  // namespace rmf
