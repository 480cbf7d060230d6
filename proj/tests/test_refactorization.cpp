#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rmf/random_instances.hpp"
#include "rmf/refactorization.hpp"

#include "fixtures.hpp"

using namespace rmf;
using namespace rmf::testing;

namespace {

const Complex kSamples[] = {Complex(4.0, 0.0), Complex(-2.0, 1.0), Complex(0.5, -3.0),
                            Complex(7.0, 2.0)};

VectorPair absorbed_half(const RationalMatrixFunction& L, const CoordinatePoint& C) {
  return VectorPair{CVec(L.L0() * C.X.col), C.X.row};
}

}  // namespace

TEST_CASE("params_of copies the divisor and shifts only under the monodromy mode") {
  FlowParams P = params_of(fixture_b());
  CHECK(P.z1 == Complex(0.0, 0.0));
  CHECK(P.z2 == Complex(1.0, 0.0));
  CHECK(P.zeta1 == Complex(6.0, 0.0));
  CHECK(P.zeta2 == Complex(3.0, 0.0));
  P.t = 2;
  CHECK(P.z1_now() == P.z1);

  FlowParams Q = params_of(fixture_b(), FlowMode::isomonodromic);
  Q.t = 2;
  CHECK(Q.z1_now() == Complex(-2.0, 0.0));
  CHECK(Q.zeta1_now() == Complex(4.0, 0.0));

  RationalMatrixFunction one =
      construct({Complex(2.0, 0.0), Complex(1.0, 0.0)}, {Complex(0.0, 0.0)},
                {CMat(mat2(-2.0, 0.0, 0.0, 0.0))});
  CHECK(thrown_code([&] { params_of(one); }) == "WrongPoleCount");
}

TEST_CASE("coordinates_of reads the chart off the residue pairs") {
  RationalMatrixFunction A = fixture_a();
  CoordinatePoint CA = coordinates_of(A, invert(A));
  CHECK(projective_angle(CA.X.col, vec2(0.0, 1.0)) < 1e-10);
  CHECK(projective_angle(CA.X.row, row2(1.0, 0.0)) < 1e-10);
  CHECK(projective_angle(CA.Y.col, vec2(0.0, -4.0)) < 1e-10);
  CHECK(projective_angle(CA.Y.row, row2(1.0, 0.0)) < 1e-10);

  RationalMatrixFunction B = fixture_b();
  CoordinatePoint CB = coordinates_of(B, invert(B));
  CHECK(projective_angle(CB.X.row, row2(1.0, -36.0)) < 1e-10);
  CHECK(projective_angle(CB.Y.col, vec2(16.0, -4.0)) < 1e-10);
  CHECK(projective_angle(CB.Y.row, row2(1.0, 2.0 / 3.0)) < 1e-10);

  Rng rng(3);
  RationalMatrixFunction three = random_instance(rng, 2, 3);
  CHECK(thrown_code([&] { coordinates_of(three, invert(three)); }) == "WrongPoleCount");
}

TEST_CASE("eta round-trips the generic fixture and rejects the degenerate chart") {
  RationalMatrixFunction B = fixture_b();
  CoordinatePoint C = coordinates_of(B, invert(B));
  FlowParams P = params_of(B);

  RationalMatrixFunction back = eta(absorbed_half(B, C), C.Y, P);
  for (Complex z : kSamples) CHECK(maxabs(evaluate(back, z) - evaluate(B, z)) < 1e-10);
  for (int i = 0; i < 2; ++i)
    CHECK(maxabs(back.residues[i].matrix() - B.residues[i].matrix()) < 1e-10);

  CHECK(eta_product_residual(absorbed_half(B, C), C.Y, P, EtaForm::lemma33, B) < 1e-10);
  // The printed index placement does not reproduce the instance.
  CHECK(eta_product_residual(absorbed_half(B, C), C.Y, P, EtaForm::printed, B) > 1e-3);

  RationalMatrixFunction A = fixture_a();
  CoordinatePoint CA = coordinates_of(A, invert(A));
  FlowParams PA = params_of(A);
  CHECK(thrown_code([&] { eta(absorbed_half(A, CA), CA.Y, PA); }) == "DegenerateCoordinates");
}

TEST_CASE("lagrangian value: zero point, homogeneity, reproducibility") {
  FlowParams P;
  P.z1 = Complex(0.0, 0.0);
  P.z2 = Complex(1.0, 0.0);
  P.zeta1 = Complex(6.0, 0.0);
  P.zeta2 = Complex(3.0, 0.0);
  P.rho = {Complex(2.0, 0.0), Complex(1.0, 0.0)};

  // All four bilinear forms equal one.
  VectorPair X{vec2(1.0, 0.0), row2(0.5, 0.0)};
  VectorPair Y{vec2(2.0, 0.0), row2(1.0, 0.0)};
  CHECK(std::abs(lagrangian(X, Y, P)) < 1e-14);

  RationalMatrixFunction B = fixture_b();
  CoordinatePoint C = coordinates_of(B, invert(B));
  FlowParams PB = params_of(B);
  Complex base = lagrangian(C.X, C.Y, PB);
  CHECK(std::isfinite(base.real()));
  CHECK(lagrangian(C.X, C.Y, PB) == base);

  // Real positive rescaling of x2 shifts the value by (z2 - zeta2) log s.
  double s = 1.7;
  VectorPair Xs{CVec(s * C.X.col), C.X.row};
  Complex shifted = lagrangian(Xs, C.Y, PB);
  CHECK(std::abs(shifted - base - (PB.z2 - PB.zeta2) * std::log(s)) < 1e-12);

  VectorPair Xbad{vec2(1.0, 0.0), row2(0.5, 0.0)};
  VectorPair Ybad{vec2(2.0, 0.0), row2(0.0, 1.0)};  // y1.x2 = 0
  CHECK(thrown_code([&] { lagrangian(Xbad, Ybad, P); }) == "LogOfZero");
}

TEST_CASE("analytic gradients agree with central finite differences") {
  Rng rng(71);
  for (int trial = 0; trial < 3; ++trial) {
    RationalMatrixFunction L = random_flowable_rank2(rng, 1);
    CoordinatePoint C = coordinates_of(L, invert(L));
    FlowParams P = params_of(L);
    C.X.col.normalize();
    C.Y.col.normalize();

    LagrangianGradients g = lagrangian_gradients(C.X, C.Y, P);
    const double h = 1e-6;
    for (int j = 0; j < 2; ++j) {
      auto eval_x2 = [&](Complex delta) {
        VectorPair Xp = C.X;
        Xp.col(j) += delta;
        return lagrangian(Xp, C.Y, P);
      };
      Complex fd = (eval_x2(Complex(h, 0.0)) - eval_x2(Complex(-h, 0.0))) / (2.0 * h);
      CHECK(std::abs(fd - g.dx2(j)) < 1e-5 * std::max(1.0, std::abs(g.dx2(j))));

      auto eval_y1 = [&](Complex delta) {
        VectorPair Yp = C.Y;
        Yp.row(j) += delta;
        return lagrangian(C.X, Yp, P);
      };
      Complex fd_row = (eval_y1(Complex(h, 0.0)) - eval_y1(Complex(-h, 0.0))) / (2.0 * h);
      CHECK(std::abs(fd_row - g.dy1(j)) < 1e-5 * std::max(1.0, std::abs(g.dy1(j))));

      // Imaginary-direction differences pick up the same holomorphic derivative.
      Complex fd_im = (eval_x2(Complex(0.0, h)) - eval_x2(Complex(0.0, -h))) /
                      Complex(0.0, 2.0 * h);
      CHECK(std::abs(fd_im - g.dx2(j)) < 1e-5 * std::max(1.0, std::abs(g.dx2(j))));
    }
  }
}

TEST_CASE("recover_vectors reproduces all four residue projectors") {
  RationalMatrixFunction B = fixture_b();
  InverseData M = invert(B);
  CoordinatePoint C = coordinates_of(B, M);
  FlowParams P = params_of(B);
  RecoveredVectors R = recover_vectors(C, P);

  // The gradients fix each missing vector up to overall scale, so the
  // rank-one products match the residues as projectors.
  auto projector = [](const CVec& col, const CRow& row) {
    return CMat(col * row / (row * col).value());
  };
  auto residue_projector = [&](const RankOnePair& res) {
    return projector(res.column, res.row);
  };
  CHECK(maxabs(projector(R.a1, C.Y.row) - residue_projector(B.residues[0])) < 1e-8);
  CHECK(maxabs(projector(C.Y.col, R.b2) - residue_projector(B.residues[1])) < 1e-8);
  CHECK(maxabs(projector(R.c1, C.X.row) - residue_projector(M.residues[0])) < 1e-8);
  CHECK(maxabs(projector(C.X.col, R.d2) - residue_projector(M.residues[1])) < 1e-8);

  // Rescaling a chart vector leaves every recovered direction unchanged.
  CoordinatePoint C7 = C;
  C7.X.col *= Complex(7.0, 0.0);
  RecoveredVectors R7 = recover_vectors(C7, P);
  CHECK(projective_angle(R7.a1, R.a1) < 1e-10);
  CHECK(projective_angle(R7.b2, R.b2) < 1e-10);
  CHECK(projective_angle(R7.c1, R.c1) < 1e-10);
  CHECK(projective_angle(R7.d2, R.d2) < 1e-10);

  RationalMatrixFunction A = fixture_a();
  CoordinatePoint CA = coordinates_of(A, invert(A));
  CHECK(thrown_code([&] { recover_vectors(CA, params_of(A)); }) == "DegenerateCoordinates");
}

TEST_CASE("isospectral step fixes the divisor, isomonodromic step shifts the first pair") {
  RationalMatrixFunction B = fixture_b();
  RationalMatrixFunction S = isospectral_step(B);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(S.poles[i] - B.poles[i]) < 1e-12);
    CHECK(std::abs(S.zeros[i] - B.zeros[i]) < 1e-9);
  }
  for (Complex z : kSamples)
    CHECK(std::abs(evaluate(S, z).determinant() - evaluate(B, z).determinant()) < 1e-10);
  // The interchange genuinely moves the instance.
  CHECK(maxabs(S.residues[0].matrix() - B.residues[0].matrix()) > 1e-2);

  RationalMatrixFunction T = isomonodromic_step(B);
  CHECK(std::abs(T.poles[0] - Complex(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(T.poles[1] - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(T.zeros[0] - Complex(5.0, 0.0)) < 1e-9);
  CHECK(std::abs(T.zeros[1] - Complex(3.0, 0.0)) < 1e-9);
  for (Complex z : kSamples) {
    CHECK(std::abs(evaluate(T, z)(1, 0) -
                   4.0 * (z + 3.0) / ((z + 1.0) * (z - 1.0))) < 1e-10);
    CHECK(std::abs(evaluate(T, z).determinant() -
                   2.0 * (z - 5.0) * (z - 3.0) / ((z + 1.0) * (z - 1.0))) < 1e-10);
  }

  CHECK(thrown_code([&] { isomonodromic_step(fixture_a()); }) == "ShiftCollision");
}

TEST_CASE("interchange consistency at the projector level") {
  RationalMatrixFunction B = fixture_b();
  CoordinatePoint C = coordinates_of(B, invert(B));
  FlowParams P = params_of(B);
  RecoveredVectors R = recover_vectors(C, P);

  RationalMatrixFunction S = isospectral_step(B);
  CoordinatePoint Ct = coordinates_of(S, invert(S));
  RecoveredVectors Rt = recover_vectors(Ct, params_of(S));
  const CMat L0 = B.L0();

  CMat lhs1 = R.c1 * C.Y.row / (C.Y.row * R.c1).value();
  CMat rhs1 = Rt.a1 * Ct.X.row / (Ct.X.row * Rt.a1).value();
  CHECK(maxabs(lhs1 - rhs1) < 1e-8);

  CMat lhs2 = C.Y.col * R.d2 / (R.d2 * C.Y.col).value();
  CMat rhs2 = L0 * (Ct.X.col * Rt.b2) * L0.inverse() /
              (Rt.b2 * Ct.X.col).value();
  CHECK(maxabs(lhs2 - rhs2) < 1e-8);
}

TEST_CASE("discrete stationarity along an isospectral trajectory") {
  Rng rng(83);
  for (int trial = 0; trial < 3; ++trial) {
    RationalMatrixFunction L = random_flowable_rank2(rng, 3);
    RationalMatrixFunction L1 = isospectral_step(L);
    RationalMatrixFunction L2 = isospectral_step(L1);
    FlowParams P = params_of(L);

    auto half = [](const RationalMatrixFunction& F) {
      return VectorPair{F.residues[1].column, F.residues[0].row};
    };
    ElResidual r = el_residual(half(L), half(L1), half(L2), P);
    CHECK(r.row_angle < 1e-6);
    CHECK(r.col_angle < 1e-6);
  }
}
