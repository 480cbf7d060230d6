#pragma once

#include <optional>
#include <vector>

#include "rmf/numerics.hpp"

namespace rmf {

struct Divisor {
  std::vector<Complex> poles;
  std::vector<Complex> zeros;  // zeros[i] is paired with poles[i]
};

// L(z) = L0 + sum_i residues[i].matrix()/(z - poles[i]) with L0 = diag(rho)
// and every residue rank one. zeros holds the determinant zeros in the
// pairing order fixed at construction (zeros[i] paired with poles[i]).
struct RationalMatrixFunction {
  std::vector<Complex> rho;
  std::vector<Complex> poles;
  std::vector<RankOnePair> residues;
  std::vector<Complex> zeros;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(rho.size()); }
  int pole_count() const { return static_cast<int>(poles.size()); }
  CMat L0() const;
  CMat L0_inverse() const;
  // Sum of the residues, the first-order coefficient at infinity.
  CMat residue_sum() const;
  Divisor divisor() const { return {poles, zeros}; }
};

// Additive data of the inverse: M(z) = diag(1/rho) - sum_i residues[i]/(z - zeros[i]).
// poles records the source poles, which are the determinant zeros of M.
struct InverseData {
  std::vector<Complex> rho;
  std::vector<Complex> zeros;
  std::vector<Complex> poles;
  std::vector<RankOnePair> residues;
};

// Validates genericity (distinct nonzero diagonal, distinct poles, rank-one
// residues, simple determinant zeros away from the poles) and fixes the
// zero-pole pairing: explicit paired_zeros are matched against the computed
// zeros and stored as given; otherwise the i-th zero in lexicographic order
// is paired with the i-th pole in lexicographic order.
RationalMatrixFunction construct(std::vector<Complex> rho, std::vector<Complex> poles,
                                 const std::vector<CMat>& residues,
                                 const std::optional<std::vector<Complex>>& paired_zeros = {},
                                 double tol = kGenericityTol);

CMat evaluate(const RationalMatrixFunction& L, Complex z, double tol = kGenericityTol);

// Recomputes the determinant zeros, checks them against the stored pairing
// and returns the paired divisor.
Divisor det_divisor(const RationalMatrixFunction& L, double tol = kGenericityTol);

InverseData invert(const RationalMatrixFunction& L, double tol = kGenericityTol);

CMat evaluate_inverse(const InverseData& M, Complex z, double tol = kGenericityTol);

// View of the inverse data as a rational matrix function in its own right,
// with diagonal diag(1/rho) at infinity and poles at the zeros.
RationalMatrixFunction as_function(const InverseData& M, double tol = kGenericityTol);

// Conjugation by an invertible diagonal gauge, which keeps the divisor.
RationalMatrixFunction gauge_act(const RationalMatrixFunction& L,
                                 const std::vector<Complex>& gauge,
                                 double tol = kGenericityTol);

}  // namespace rmf
