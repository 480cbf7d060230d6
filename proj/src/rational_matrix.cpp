#include "rmf/rational_matrix.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace rmf {

namespace {

std::string fmt(Complex z) {
  std::ostringstream os;
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

CMat diag_of(const std::vector<Complex>& d) {
  CMat D = CMat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (Eigen::Index i = 0; i < D.rows(); ++i) D(i, i) = d[static_cast<size_t>(i)];
  return D;
}

CMat evaluate_raw(const std::vector<Complex>& rho, const std::vector<Complex>& poles,
                  const std::vector<CMat>& residues, Complex z) {
  CMat out = diag_of(rho);
  for (size_t i = 0; i < poles.size(); ++i) out += residues[i] / (z - poles[i]);
  return out;
}

// Zeros of det L as roots of the monic numerator polynomial, recovered from
// determinant samples on a circle enclosing every pole.
std::vector<Complex> compute_zeros(const std::vector<Complex>& rho,
                                   const std::vector<Complex>& poles,
                                   const std::vector<CMat>& residues) {
  const int k = static_cast<int>(poles.size());
  if (k == 0) return {};
  double pmax = 1.0;
  for (const auto& z : poles) pmax = std::max(pmax, std::abs(z));
  const double R = 2.0 * pmax + 1.0;
  Complex rho_prod(1.0, 0.0);
  for (const auto& r : rho) rho_prod *= r;

  std::vector<std::pair<Complex, Complex>> samples;
  const int n = k + 1;
  samples.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * std::numbers::pi * (j + 0.5) / n;
    const Complex z = R * Complex(std::cos(th), std::sin(th));
    Complex val = evaluate_raw(rho, poles, residues, z).determinant() / rho_prod;
    for (const auto& zp : poles) val *= (z - zp);
    samples.emplace_back(z, val);
  }
  Polynomial q = poly_from_samples(samples, k);
  if (std::abs(q[static_cast<size_t>(k)] - Complex(1.0, 0.0)) > 1e-6)
    throw NonGeneric("determinant numerator is not monic of the expected degree");
  return poly_roots(q);
}

std::vector<size_t> lex_ranks(const std::vector<Complex>& pts) {
  std::vector<size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return lex_less(pts[a], pts[b]); });
  return idx;
}

}  // namespace

CMat RationalMatrixFunction::L0() const { return diag_of(rho); }

CMat RationalMatrixFunction::L0_inverse() const {
  std::vector<Complex> inv(rho.size());
  for (size_t i = 0; i < rho.size(); ++i) inv[i] = Complex(1.0, 0.0) / rho[i];
  return diag_of(inv);
}

CMat RationalMatrixFunction::residue_sum() const {
  CMat out = CMat::Zero(dim(), dim());
  for (const auto& r : residues) out += r.matrix();
  return out;
}

RationalMatrixFunction construct(std::vector<Complex> rho, std::vector<Complex> poles,
                                 const std::vector<CMat>& residues,
                                 const std::optional<std::vector<Complex>>& paired_zeros,
                                 double tol) {
  const auto m = static_cast<Eigen::Index>(rho.size());
  if (m < 2 || m > 16) throw BadInput("dimension must be between 2 and 16");
  if (poles.size() != residues.size()) throw BadInput("pole and residue counts differ");
  if (poles.size() > 16) throw BadInput("at most 16 poles are supported");

  for (const auto& r : rho)
    if (std::abs(r) < tol) throw NonGeneric("vanishing diagonal entry at infinity");
  for (size_t i = 0; i < rho.size(); ++i)
    for (size_t j = i + 1; j < rho.size(); ++j)
      if (!points_distinct(rho[i], rho[j], tol))
        throw NonGeneric("diagonal entries at infinity collide: " + fmt(rho[i]));
  for (size_t i = 0; i < poles.size(); ++i)
    for (size_t j = i + 1; j < poles.size(); ++j)
      if (!points_distinct(poles[i], poles[j], tol))
        throw NonGeneric("poles collide: " + fmt(poles[i]));

  RationalMatrixFunction L;
  L.rho = std::move(rho);
  L.poles = std::move(poles);
  for (const auto& R : residues) {
    if (R.rows() != m || R.cols() != m) throw BadInput("residue dimension mismatch");
    L.residues.push_back(rank_one_decompose(R, tol));
  }

  const size_t k = L.poles.size();
  if (k == 0) {
    if (paired_zeros && !paired_zeros->empty()) throw BadInput("zeros given for a pole-free instance");
    return L;
  }

  const auto zs = compute_zeros(L.rho, L.poles, residues);  // lex sorted
  for (size_t i = 0; i + 1 < zs.size(); ++i)
    if (!points_distinct(zs[i], zs[i + 1], tol))
      throw NonGeneric("determinant zero is not simple: " + fmt(zs[i]));
  for (const auto& z : zs)
    for (const auto& zp : L.poles)
      if (!points_distinct(z, zp, tol))
        throw NonGeneric("determinant zero collides with the pole " + fmt(zp));

  if (paired_zeros) {
    if (paired_zeros->size() != k) throw BadInput("paired zero count mismatch");
    std::vector<char> used(k, 0);
    for (const auto& want : *paired_zeros) {
      size_t best = k;
      double dist = 0.0;
      for (size_t i = 0; i < k; ++i) {
        const double d = std::abs(want - zs[i]);
        if (!used[i] && (best == k || d < dist)) {
          best = i;
          dist = d;
        }
      }
      if (best == k || dist > 1e-6 * point_scale(want, zs[best]))
        throw NonGeneric("provided zero " + fmt(want) + " does not match the determinant zeros");
      used[best] = 1;
    }
    L.zeros = *paired_zeros;
  } else {
    const auto ranks = lex_ranks(L.poles);
    L.zeros.resize(k);
    for (size_t r = 0; r < k; ++r) L.zeros[ranks[r]] = zs[r];
  }
  return L;
}

CMat evaluate(const RationalMatrixFunction& L, Complex z, double tol) {
  for (const auto& zp : L.poles)
    if (std::abs(z - zp) < tol * point_scale(z, zp))
      throw AtPole("evaluation at the pole " + fmt(zp));
  CMat out = L.L0();
  for (size_t i = 0; i < L.poles.size(); ++i)
    out += L.residues[i].matrix() / (z - L.poles[i]);
  return out;
}

Divisor det_divisor(const RationalMatrixFunction& L, double tol) {
  const size_t k = L.poles.size();
  if (k == 0) return {{}, {}};
  std::vector<CMat> mats;
  mats.reserve(k);
  for (const auto& r : L.residues) mats.push_back(r.matrix());
  const auto zs = compute_zeros(L.rho, L.poles, mats);
  if (L.zeros.size() != k) throw NonGeneric("instance carries no zero pairing");
  std::vector<char> used(k, 0);
  for (const auto& have : L.zeros) {
    size_t best = k;
    double dist = 0.0;
    for (size_t i = 0; i < k; ++i) {
      const double d = std::abs(have - zs[i]);
      if (!used[i] && (best == k || d < dist)) {
        best = i;
        dist = d;
      }
    }
    if (best == k || dist > 1e-6 * point_scale(have, zs[best]))
      throw NonGeneric("stored zero " + fmt(have) + " drifted from the determinant zeros");
    used[best] = 1;
  }
  (void)tol;
  return {L.poles, L.zeros};
}

InverseData invert(const RationalMatrixFunction& L, double tol) {
  const Eigen::Index m = L.dim();
  InverseData M;
  M.rho = L.rho;
  M.zeros = L.zeros;
  M.poles = L.poles;
  const size_t k = L.poles.size();
  for (size_t i = 0; i < k; ++i) {
    const Complex zeta = L.zeros[i];
    const CMat Lz = evaluate(L, zeta, tol);
    Eigen::JacobiSVD<CMat> svd(Lz, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (m >= 2 && !(s(m - 2) > tol * s(0)))
      throw NonGeneric("null space at the zero " + fmt(zeta) + " is not one-dimensional");
    const CVec c = svd.matrixV().col(m - 1);
    const CRow d = svd.matrixU().col(m - 1).adjoint();

    CMat Lprime = CMat::Zero(m, m);
    for (size_t j = 0; j < k; ++j) {
      const Complex dz = zeta - L.poles[j];
      Lprime -= L.residues[j].matrix() / (dz * dz);
    }
    const Complex denom = (d * Lprime * c).value();
    if (std::abs(denom) < tol * std::max(1.0, Lprime.cwiseAbs().maxCoeff()))
      throw NonGeneric("degenerate residue pairing at the zero " + fmt(zeta));
    const CMat Mi = -(c * d) / denom;
    M.residues.push_back(rank_one_decompose(Mi, tol));
  }
  return M;
}

CMat evaluate_inverse(const InverseData& M, Complex z, double tol) {
  for (const auto& zeta : M.zeros)
    if (std::abs(z - zeta) < tol * point_scale(z, zeta))
      throw AtPole("evaluation at the inverse pole " + fmt(zeta));
  std::vector<Complex> inv(M.rho.size());
  for (size_t i = 0; i < M.rho.size(); ++i) inv[i] = Complex(1.0, 0.0) / M.rho[i];
  CMat out = diag_of(inv);
  for (size_t i = 0; i < M.zeros.size(); ++i)
    out -= M.residues[i].matrix() / (z - M.zeros[i]);
  return out;
}

RationalMatrixFunction as_function(const InverseData& M, double tol) {
  std::vector<Complex> inv(M.rho.size());
  for (size_t i = 0; i < M.rho.size(); ++i) inv[i] = Complex(1.0, 0.0) / M.rho[i];
  std::vector<CMat> mats;
  mats.reserve(M.residues.size());
  for (const auto& r : M.residues) mats.push_back(-r.matrix());
  return construct(std::move(inv), M.zeros, mats, M.poles, tol);
}

RationalMatrixFunction gauge_act(const RationalMatrixFunction& L,
                                 const std::vector<Complex>& gauge, double tol) {
  if (static_cast<Eigen::Index>(gauge.size()) != L.dim())
    throw BadInput("gauge dimension mismatch");
  double gmax = 0.0;
  for (const auto& g : gauge) gmax = std::max(gmax, std::abs(g));
  for (const auto& g : gauge)
    if (std::abs(g) < tol * std::max(1.0, gmax)) throw SingularGauge("vanishing gauge entry");

  std::vector<CMat> mats;
  mats.reserve(L.residues.size());
  for (const auto& r : L.residues) {
    CMat R = r.matrix();
    for (Eigen::Index i = 0; i < R.rows(); ++i)
      for (Eigen::Index j = 0; j < R.cols(); ++j)
        R(i, j) *= gauge[static_cast<size_t>(i)] / gauge[static_cast<size_t>(j)];
    mats.push_back(R);
  }
  return construct(L.rho, L.poles, mats, L.zeros, tol);
}

}  // namespace rmf
