#pragma once

#include <cstdint>

#include "rmf/dpv.hpp"
#include "rmf/elementary_divisor.hpp"
#include "rmf/rational_matrix.hpp"
#include "rmf/spectral.hpp"

namespace rmf {

// Deterministic generator (splitmix64) so every suite run with the same seed
// produces bit-identical instances.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next();
  double uniform();                      // [0, 1)
  double uniform(double a, double b);
  Complex box(double half_width);        // uniform in [-w, w]^2
};

// Divisor points in [-5,5]^2 pairwise separated by 0.5, diagonal entries in
// the annulus 0.5 <= |rho| <= 2 separated by 0.3, k1 free and k2 fixed by the
// constraint, mu = 1.
SpectralType random_type(Rng& rng);

// gamma in [-5,5]^2 at distance >= 0.5 from the divisor points, pi in the
// annulus 0.5 <= |pi| <= 2 with |pi - rho_i| >= 0.3.
SpectralPoint random_point(Rng& rng, const SpectralType& T);

RationalMatrixFunction random_rank2(Rng& rng);

// Generic instance of dimension m with k poles; rejection sampling with a
// deterministic retry budget. With probe_factorization the draw is also
// required to admit a comfortably conditioned full factorization.
RationalMatrixFunction random_instance(Rng& rng, int m, int k,
                                       bool probe_factorization = false);

// Rank-2 two-pole instance whose isospectral flow stays comfortably generic
// for the given number of probe steps.
RationalMatrixFunction random_flowable_rank2(Rng& rng, int probe_steps);

// Spectral state whose dPV trajectory of the given length stays away from
// collisions and from pi = rho_i, with bounded gamma and pi along the way.
DpvState random_dpv_state(Rng& rng, int probe_steps);

ElementaryDivisor random_divisor(Rng& rng, int m);

// Random matrix redrawn until its condition number is moderate.
CMat random_well_conditioned(Rng& rng, int m);

}  // namespace rmf
