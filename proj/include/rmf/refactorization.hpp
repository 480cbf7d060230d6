#pragma once

#include "rmf/factorization.hpp"
#include "rmf/rational_matrix.hpp"

namespace rmf {

enum class FlowMode { isospectral, isomonodromic };

// Two published shapes of the second factor of the reconstruction map; the
// lemma33 form reuses the y-row in both terms and is the one that round-trips.
enum class EtaForm { lemma33, printed };

// Divisor bookkeeping for two-pole flows. t counts applied steps; in the
// isomonodromic mode the first pair moves as (z1 - t, zeta1 - t).
struct FlowParams {
  Complex z1;
  Complex z2;
  Complex zeta1;
  Complex zeta2;
  std::vector<Complex> rho;
  long t = 0;
  FlowMode mode = FlowMode::isospectral;

  Complex z1_now() const {
    return mode == FlowMode::isomonodromic ? z1 - Complex(static_cast<double>(t), 0.0) : z1;
  }
  Complex zeta1_now() const {
    return mode == FlowMode::isomonodromic ? zeta1 - Complex(static_cast<double>(t), 0.0) : zeta1;
  }
};

FlowParams params_of(const RationalMatrixFunction& L, FlowMode mode = FlowMode::isospectral);

// A column-row pair, one half of a coordinate tuple.
struct VectorPair {
  CVec col;
  CRow row;
};

// Coordinate chart of a two-pole instance: X = (c2, d1) from the inverse
// residues, Y = (a2, b1) from the residues.
struct CoordinatePoint {
  VectorPair X;
  VectorPair Y;
};

CoordinatePoint coordinates_of(const RationalMatrixFunction& L, const InverseData& M);

// Generating function of one refactorization step,
//   (z2 - z1) log(x1 L0 x2) + (z1 - zeta2) log(y1 x2)
// + (zeta2 - zeta1) log(y1 L0^-1 y2) + (zeta1 - z2) log(x1 y2),
// taken at the current divisor points of P.
Complex lagrangian(const VectorPair& X, const VectorPair& Y, const FlowParams& P,
                   double tol = kGenericityTol);

struct LagrangianGradients {
  CRow dx2;  // derivative in the column x2 is a row
  CVec dx1;  // derivative in the row x1 is a column
  CRow dy2;
  CVec dy1;
};

LagrangianGradients lagrangian_gradients(const VectorPair& X, const VectorPair& Y,
                                         const FlowParams& P, double tol = kGenericityTol);

// The remaining residue vectors as gradients of the generating function at
// X = (c2, d1), Y = (a2, b1): a1 = -dx1, b2 = dx2, c1 = dy1, d2 = -dy2.
struct RecoveredVectors {
  CVec a1;
  CRow b2;
  CVec c1;
  CRow d2;
};

RecoveredVectors recover_vectors(const CoordinatePoint& C, const FlowParams& P,
                                 double tol = kGenericityTol);

// Reconstructs the instance from one coordinate transition. Qprev carries the
// absorbed previous half (L0 c2, d1), Q the current half (a2, b1). The result
// has poles (z1, z2) paired with zeros (zeta1, zeta2) at the current time.
RationalMatrixFunction eta(const VectorPair& Qprev, const VectorPair& Q,
                           const FlowParams& P, EtaForm form = EtaForm::lemma33,
                           double tol = kGenericityTol);

// Max-abs pointwise residual of the two-factor product against L on a fixed
// sample set, without additive re-expansion. Lets both forms be compared even
// when the printed one does not re-expand to a valid instance.
double eta_product_residual(const VectorPair& Qprev, const VectorPair& Q,
                            const FlowParams& P, EtaForm form,
                            const RationalMatrixFunction& L, double tol = kGenericityTol);

// One interchange of the two factors. The isospectral step keeps the divisor;
// the isomonodromic step shifts the first pair by -1.
RationalMatrixFunction isospectral_step(const RationalMatrixFunction& L,
                                        double tol = kGenericityTol);
RationalMatrixFunction isomonodromic_step(const RationalMatrixFunction& L,
                                          double tol = kGenericityTol);

// Projective angles between the two discrete stationarity pairings at the
// middle point of three consecutive halves Q_{t-1}, Q_t, Q_{t+1}.
struct ElResidual {
  double row_angle;
  double col_angle;
};

ElResidual el_residual(const VectorPair& Qprev, const VectorPair& Q, const VectorPair& Qnext,
                       const FlowParams& P, double tol = kGenericityTol);

}  // namespace rmf
