#pragma once

#include <utility>
#include <vector>

#include "rmf/elementary_divisor.hpp"
#include "rmf/rational_matrix.hpp"

namespace rmf {

// L(z) = diag(rho) * factors[0](z) * ... * factors[k-1](z).
// pairing[s] = (zeta, pole) of factors[s].
struct Factorization {
  std::vector<Complex> rho;
  std::vector<ElementaryDivisor> factors;
  std::vector<std::pair<Complex, Complex>> pairing;
};

// Right divisor at pole s: built from the inverse residue column and the
// residue row, it splits off the pole-zero pair (poles[s], zeros[s]) so that
// L(z) B(z)^-1 is regular at both points.
ElementaryDivisor right_divisor(const RationalMatrixFunction& L, const InverseData& M,
                                int s, double tol = kGenericityTol);

// Left divisor at pole s, built from the residue column and the inverse
// residue row, so that B(z)^-1 L(z) is regular at the pair.
ElementaryDivisor left_divisor(const RationalMatrixFunction& L, const InverseData& M,
                               int s, double tol = kGenericityTol);

// Splits L = L' * B with B the right divisor at pole s and returns (L', B).
// L' keeps the remaining poles with residues L_j B(z_j)^-1.
std::pair<RationalMatrixFunction, ElementaryDivisor> peel_right(
    const RationalMatrixFunction& L, int s, double tol = kGenericityTol);

// Peels right divisors in the order fixed by the pairing sequence, last pair
// first. pairing[s] = (zeta, pole) assigns determinant zeros to poles; it
// must be a bijection between the divisor sets of L.
Factorization full_factorization(const RationalMatrixFunction& L,
                                 const std::vector<std::pair<Complex, Complex>>& pairing,
                                 double tol = kGenericityTol);

// Uses the pairing stored in L.
Factorization full_factorization(const RationalMatrixFunction& L,
                                 double tol = kGenericityTol);

// Expands the product back into additive form.
RationalMatrixFunction reconstruct(const Factorization& F, double tol = kGenericityTol);

CMat evaluate(const Factorization& F, Complex z, double tol = kGenericityTol);

}  // namespace rmf
