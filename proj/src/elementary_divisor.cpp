#include "rmf/elementary_divisor.hpp"

#include <sstream>

namespace rmf {

namespace {

std::string fmt(Complex z) {
  std::ostringstream os;
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

Complex pair_value(const CRow& q, const CVec& p) { return (q * p).value(); }

void check_pairing(const CRow& q, const CVec& p, double tol, const char* what) {
  const double bound = tol * q.norm() * p.norm();
  if (std::abs(pair_value(q, p)) < bound)
    throw DegenerateAction(std::string(what) + " pairing below tolerance");
}

}  // namespace

ElementaryDivisor make_divisor(Complex z0, Complex zeta0, const CVec& p, const CRow& q,
                               double tol) {
  if (p.size() != q.size() || p.size() < 1) throw BadInput("p and q must share a positive dimension");
  if (!points_distinct(z0, zeta0, tol))
    throw CoincidentPoints("pole " + fmt(z0) + " meets zero " + fmt(zeta0));
  if (p.norm() == 0.0 || q.norm() == 0.0) throw DegenerateAction("zero direction vector");
  check_pairing(q, p, tol, "q p");
  ElementaryDivisor B{z0, zeta0, p, q};
  B.p *= (z0 - zeta0) / pair_value(q, p);
  return B;
}

CMat evaluate(const ElementaryDivisor& B, Complex z, double tol) {
  if (std::abs(z - B.z0) < tol * point_scale(z, B.z0))
    throw AtPole("evaluation at the pole " + fmt(B.z0));
  const Eigen::Index m = B.dim();
  return CMat::Identity(m, m) + (B.p * B.q) / (z - B.z0);
}

ElementaryDivisor inverse(const ElementaryDivisor& B) {
  return ElementaryDivisor{B.zeta0, B.z0, -B.p, B.q};
}

Complex eigen_action(const ElementaryDivisor& B, Complex z, double tol) {
  if (std::abs(z - B.z0) < tol * point_scale(z, B.z0))
    throw AtPole("action at the pole " + fmt(B.z0));
  return (z - B.zeta0) / (z - B.z0);
}

ElementaryDivisor from_action(Complex z0, Complex zeta0, Complex zstar,
                              const CRow& q, const CVec& w, const CVec& v, double tol) {
  if (!points_distinct(z0, zeta0, tol))
    throw CoincidentPoints("pole " + fmt(z0) + " meets zero " + fmt(zeta0));
  if (!points_distinct(zstar, z0, tol))
    throw CoincidentPoints("sample point " + fmt(zstar) + " meets the pole");
  check_pairing(q, w, tol, "q w");
  check_pairing(q, v, tol, "q v");
  const CVec p = (z0 - zstar) / pair_value(q, w) * w + (zstar - zeta0) / pair_value(q, v) * v;
  if (p.norm() == 0.0) throw DegenerateAction("reconstructed column vanishes");
  return make_divisor(z0, zeta0, p, q, tol);
}

ElementaryDivisor from_action_left(Complex z0, Complex zeta0, Complex zstar,
                                   const CVec& p, const CRow& w, const CRow& v, double tol) {
  if (!points_distinct(z0, zeta0, tol))
    throw CoincidentPoints("pole " + fmt(z0) + " meets zero " + fmt(zeta0));
  if (!points_distinct(zstar, z0, tol))
    throw CoincidentPoints("sample point " + fmt(zstar) + " meets the pole");
  check_pairing(w, p, tol, "w p");
  check_pairing(v, p, tol, "v p");
  const CRow q = (z0 - zstar) / pair_value(w, p) * w + (zstar - zeta0) / pair_value(v, p) * v;
  if (q.norm() == 0.0) throw DegenerateAction("reconstructed row vanishes");
  return make_divisor(z0, zeta0, p, q, tol);
}

ElementaryDivisor twist(const ElementaryDivisor& B, const CMat& A, double tol) {
  if (A.rows() != B.dim() || A.cols() != B.dim()) throw BadInput("twist matrix dimension mismatch");
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > tol * s(0))) throw SingularTwist("condition number beyond tolerance");
  const CMat Ainv = svd.solve(CMat::Identity(B.dim(), B.dim()));
  return make_divisor(B.z0, B.zeta0, A * B.p, B.q * Ainv, tol);
}

bool approx_equal(const ElementaryDivisor& a, const ElementaryDivisor& b, double tol) {
  if (a.dim() != b.dim()) return false;
  if (std::abs(a.z0 - b.z0) > tol * point_scale(a.z0, b.z0)) return false;
  if (std::abs(a.zeta0 - b.zeta0) > tol * point_scale(a.zeta0, b.zeta0)) return false;
  const CMat Pa = (a.p * a.q) / pair_value(a.q, a.p);
  const CMat Pb = (b.p * b.q) / pair_value(b.q, b.p);
  const double scale = std::max(1.0, Pa.cwiseAbs().maxCoeff());
  return (Pa - Pb).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace rmf
