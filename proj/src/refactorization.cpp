#include "rmf/refactorization.hpp"

#include <cmath>

namespace rmf {

namespace {

CMat diag_of(const std::vector<Complex>& d) {
  CMat D = CMat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (Eigen::Index i = 0; i < D.rows(); ++i) D(i, i) = d[static_cast<size_t>(i)];
  return D;
}

CMat diag_inverse_of(const std::vector<Complex>& d) {
  std::vector<Complex> inv(d.size());
  for (size_t i = 0; i < d.size(); ++i) inv[i] = Complex(1.0, 0.0) / d[i];
  return diag_of(inv);
}

double rho_scale(const std::vector<Complex>& rho) {
  double s = 0.0;
  for (const auto& r : rho) s = std::max(s, std::abs(r));
  return s;
}

struct Forms {
  Complex f1, f2, f3, f4;
};

Forms bilinear_forms(const VectorPair& X, const VectorPair& Y, const FlowParams& P,
                     double tol, bool throw_log_of_zero) {
  const CMat L0 = diag_of(P.rho);
  const CMat L0i = diag_inverse_of(P.rho);
  Forms f;
  f.f1 = (X.row * L0 * X.col).value();
  f.f2 = (Y.row * X.col).value();
  f.f3 = (Y.row * L0i * Y.col).value();
  f.f4 = (X.row * Y.col).value();
  const double s0 = rho_scale(P.rho);
  const double b1 = tol * X.row.norm() * s0 * X.col.norm();
  const double b2 = tol * Y.row.norm() * X.col.norm();
  const double b3 = tol * Y.row.norm() * Y.col.norm() / s0;
  const double b4 = tol * X.row.norm() * Y.col.norm();
  if (std::abs(f.f1) < b1 || std::abs(f.f2) < b2 || std::abs(f.f3) < b3 ||
      std::abs(f.f4) < b4) {
    if (throw_log_of_zero) throw LogOfZero("a bilinear form of the generating function vanishes");
    throw DegenerateCoordinates("a bilinear form of the coordinate chart vanishes");
  }
  return f;
}

// Shared construction of the two factors of the reconstruction map.
void eta_factors(const VectorPair& Qprev, const VectorPair& Q, const FlowParams& P,
                 EtaForm form, double tol, CMat& F1, CMat& F2) {
  const CMat L0 = diag_of(P.rho);
  const CMat L0i = diag_inverse_of(P.rho);
  const CVec& ua = Qprev.col;  // L0 c2
  const CRow& ud = Qprev.row;  // d1
  const CVec& a2 = Q.col;
  const CRow& b1 = Q.row;
  const CVec c2 = L0i * ua;

  const Complex z1 = P.z1_now(), z2 = P.z2, h1 = P.zeta1_now(), h2 = P.zeta2;
  if (!points_distinct(z1, z2, tol)) throw CoincidentPoints("the two poles coincide");

  const double s0 = rho_scale(P.rho);
  const Complex da = (ud * a2).value();
  const Complex bia = (b1 * L0i * a2).value();
  const Complex bc = (b1 * c2).value();
  if (std::abs(da) < tol * ud.norm() * a2.norm())
    throw DegenerateCoordinates("the form d1.a2 vanishes");
  if (std::abs(bia) < tol * b1.norm() * a2.norm() / s0)
    throw DegenerateCoordinates("the form b1.L0^-1 a2 vanishes");
  if (std::abs(bc) < tol * b1.norm() * c2.norm())
    throw DegenerateCoordinates("the form b1.c2 vanishes");

  F1 = (z2 - h1) * (a2 * ud) / da + (h1 - h2) * (a2 * (b1 * L0i)) / bia;

  if (form == EtaForm::lemma33) {
    F2 = (z1 - h2) * (c2 * b1) / bc + (h2 - h1) * ((L0i * a2) * b1) / bia;
  } else {
    const Complex dlc = (ud * ua).value();  // d1 L0 c2
    if (std::abs(dlc) < tol * ud.norm() * ua.norm())
      throw DegenerateCoordinates("the form d1.L0 c2 vanishes");
    const CRow b2row = (z2 - z1) * (ud * L0) / dlc + (z1 - h2) * b1 / bc;
    const Complex b2ia = (b2row * L0i * a2).value();
    if (std::abs(b2ia) < tol * b2row.norm() * a2.norm() / s0)
      throw DegenerateCoordinates("the form b2.L0^-1 a2 vanishes");
    F2 = (z1 - h2) * (c2 * b1) / bc + (h2 - h1) * ((L0i * a2) * b2row) / b2ia;
  }
}

}  // namespace

FlowParams params_of(const RationalMatrixFunction& L, FlowMode mode) {
  if (L.pole_count() != 2)
    throw WrongPoleCount("two-pole flows need exactly two poles, got " +
                         std::to_string(L.pole_count()));
  FlowParams P;
  P.z1 = L.poles[0];
  P.z2 = L.poles[1];
  P.zeta1 = L.zeros[0];
  P.zeta2 = L.zeros[1];
  P.rho = L.rho;
  P.mode = mode;
  return P;
}

CoordinatePoint coordinates_of(const RationalMatrixFunction& L, const InverseData& M) {
  if (L.pole_count() != 2 || M.residues.size() != 2)
    throw WrongPoleCount("the coordinate chart needs exactly two poles");
  CoordinatePoint C;
  C.X = {M.residues[1].column, M.residues[0].row};
  C.Y = {L.residues[1].column, L.residues[0].row};
  return C;
}

Complex lagrangian(const VectorPair& X, const VectorPair& Y, const FlowParams& P, double tol) {
  const auto f = bilinear_forms(X, Y, P, tol, /*throw_log_of_zero=*/true);
  const Complex z1 = P.z1_now(), h1 = P.zeta1_now();
  return (P.z2 - z1) * std::log(f.f1) + (z1 - P.zeta2) * std::log(f.f2) +
         (P.zeta2 - h1) * std::log(f.f3) + (h1 - P.z2) * std::log(f.f4);
}

LagrangianGradients lagrangian_gradients(const VectorPair& X, const VectorPair& Y,
                                         const FlowParams& P, double tol) {
  const auto f = bilinear_forms(X, Y, P, tol, /*throw_log_of_zero=*/true);
  const CMat L0 = diag_of(P.rho);
  const CMat L0i = diag_inverse_of(P.rho);
  const Complex z1 = P.z1_now(), h1 = P.zeta1_now();

  LagrangianGradients g;
  g.dx2 = (P.z2 - z1) * (X.row * L0) / f.f1 + (z1 - P.zeta2) * Y.row / f.f2;
  g.dx1 = (P.z2 - z1) * (L0 * X.col) / f.f1 + (h1 - P.z2) * Y.col / f.f4;
  g.dy2 = (P.zeta2 - h1) * (Y.row * L0i) / f.f3 + (h1 - P.z2) * X.row / f.f4;
  g.dy1 = (z1 - P.zeta2) * X.col / f.f2 + (P.zeta2 - h1) * (L0i * Y.col) / f.f3;
  return g;
}

RecoveredVectors recover_vectors(const CoordinatePoint& C, const FlowParams& P, double tol) {
  bilinear_forms(C.X, C.Y, P, tol, /*throw_log_of_zero=*/false);
  const auto g = lagrangian_gradients(C.X, C.Y, P, tol);
  return RecoveredVectors{-g.dx1, g.dx2, g.dy1, -g.dy2};
}

RationalMatrixFunction eta(const VectorPair& Qprev, const VectorPair& Q, const FlowParams& P,
                           EtaForm form, double tol) {
  CMat F1, F2;
  eta_factors(Qprev, Q, P, form, tol, F1, F2);
  const CMat L0 = diag_of(P.rho);
  const Eigen::Index m = L0.rows();
  const CMat I = CMat::Identity(m, m);
  const Complex z1 = P.z1_now(), z2 = P.z2, h1 = P.zeta1_now(), h2 = P.zeta2;

  const CMat R1 = (I + F1 / (z1 - z2)) * L0 * F2;
  const CMat R2 = F1 * L0 * (I + F2 / (z2 - z1));
  return construct(P.rho, {z1, z2}, {R1, R2}, std::vector<Complex>{h1, h2}, tol);
}

double eta_product_residual(const VectorPair& Qprev, const VectorPair& Q, const FlowParams& P,
                            EtaForm form, const RationalMatrixFunction& L, double tol) {
  CMat F1, F2;
  eta_factors(Qprev, Q, P, form, tol, F1, F2);
  const CMat L0 = diag_of(P.rho);
  const Eigen::Index m = L0.rows();
  const CMat I = CMat::Identity(m, m);
  const Complex z1 = P.z1_now(), z2 = P.z2;

  double R = 1.0;
  for (const auto& zp : {z1, z2, P.zeta1_now(), P.zeta2})
    R = std::max(R, std::abs(zp));
  R = 2.0 * R + 1.0;

  double worst = 0.0;
  for (int j = 0; j < 12; ++j) {
    const double th = 2.0 * 3.14159265358979323846 * (j + 0.5) / 12.0;
    const Complex z = R * Complex(std::cos(th), std::sin(th));
    const CMat prod = (I + F1 / (z - z2)) * L0 * (I + F2 / (z - z1));
    const CMat ref = evaluate(L, z, tol);
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
    worst = std::max(worst, (prod - ref).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

RationalMatrixFunction isospectral_step(const RationalMatrixFunction& L, double tol) {
  if (L.pole_count() != 2) throw WrongPoleCount("the interchange step needs exactly two poles");
  const auto M = invert(L, tol);
  const auto B1 = right_divisor(L, M, 0, tol);
  const auto B2 = left_divisor(L, M, 1, tol);
  const CMat L0 = L.L0();
  const CMat R1 = B1.numerator() * evaluate(B2, L.poles[0], tol) * L0;
  const CMat R2 = evaluate(B1, L.poles[1], tol) * B2.numerator() * L0;
  return construct(L.rho, L.poles, {R1, R2}, L.zeros, tol);
}

RationalMatrixFunction isomonodromic_step(const RationalMatrixFunction& L, double tol) {
  if (L.pole_count() != 2) throw WrongPoleCount("the interchange step needs exactly two poles");
  const Complex z1n = L.poles[0] - 1.0;
  const Complex h1n = L.zeros[0] - 1.0;
  const Complex z2 = L.poles[1];
  const Complex h2 = L.zeros[1];
  const double margin = 1e-6;
  const std::pair<Complex, Complex> checks[] = {{z1n, z2}, {z1n, h2}, {h1n, z2}, {h1n, h2}};
  for (const auto& [a, b] : checks)
    if (std::abs(a - b) < margin * point_scale(a, b))
      throw ShiftCollision("the shifted divisor collides");

  const auto M = invert(L, tol);
  const auto B1 = right_divisor(L, M, 0, tol);
  const auto B2 = left_divisor(L, M, 1, tol);
  const CMat L0 = L.L0();
  const CMat R1 = B1.numerator() * evaluate(B2, z1n, tol) * L0;
  const CMat R2 = evaluate(B1, z2 + 1.0, tol) * B2.numerator() * L0;
  return construct(L.rho, {z1n, z2}, {R1, R2}, std::vector<Complex>{h1n, h2}, tol);
}

ElResidual el_residual(const VectorPair& Qprev, const VectorPair& Q, const VectorPair& Qnext,
                       const FlowParams& P, double tol) {
  const CMat L0i = diag_inverse_of(P.rho);
  const auto absorb = [&](const VectorPair& A) { return VectorPair{L0i * A.col, A.row}; };
  const auto gA = lagrangian_gradients(absorb(Qprev), Q, P, tol);
  const auto gB = lagrangian_gradients(absorb(Q), Qnext, P, tol);
  const CRow next_row = gB.dx2 * L0i;
  return ElResidual{projective_angle(gA.dy2, next_row), projective_angle(gA.dy1, gB.dx1)};
}

}  // namespace rmf
