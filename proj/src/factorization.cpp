#include "rmf/factorization.hpp"

#include <sstream>

namespace rmf {

namespace {

std::string fmt(Complex z) {
  std::ostringstream os;
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

void check_index(const RationalMatrixFunction& L, int s) {
  if (s < 0 || s >= L.pole_count()) throw BadInput("pole index out of range");
}

ElementaryDivisor divisor_from(const CVec& col, const CRow& row, Complex pole, Complex zeta,
                               double tol) {
  const double bound = tol * col.norm() * row.norm();
  if (std::abs((row * col).value()) < bound)
    throw DegeneratePairing("pairing of the zero " + fmt(zeta) + " with the pole " + fmt(pole) +
                            " is degenerate");
  return make_divisor(pole, zeta, col, row, tol);
}

// Matches each pairing entry against the divisor of L and returns the pole
// permutation it induces.
std::vector<size_t> pairing_permutation(const RationalMatrixFunction& L,
                                        const std::vector<std::pair<Complex, Complex>>& pairing) {
  const size_t k = L.poles.size();
  if (pairing.size() != k) throw BadInput("pairing size differs from the pole count");
  std::vector<size_t> perm(k);
  std::vector<char> pole_used(k, 0), zero_used(k, 0);
  for (size_t s = 0; s < k; ++s) {
    size_t best = k;
    double dist = 0.0;
    for (size_t i = 0; i < k; ++i) {
      const double d = std::abs(pairing[s].second - L.poles[i]);
      if (!pole_used[i] && (best == k || d < dist)) {
        best = i;
        dist = d;
      }
    }
    if (best == k || dist > 1e-6 * point_scale(pairing[s].second, L.poles[best]))
      throw BadInput("pairing pole " + fmt(pairing[s].second) + " is not a pole of the instance");
    pole_used[best] = 1;
    perm[s] = best;

    size_t zbest = k;
    double zdist = 0.0;
    for (size_t i = 0; i < k; ++i) {
      const double d = std::abs(pairing[s].first - L.zeros[i]);
      if (!zero_used[i] && (zbest == k || d < zdist)) {
        zbest = i;
        zdist = d;
      }
    }
    if (zbest == k || zdist > 1e-6 * point_scale(pairing[s].first, L.zeros[zbest]))
      throw BadInput("pairing zero " + fmt(pairing[s].first) + " is not a zero of the instance");
    zero_used[zbest] = 1;
  }
  return perm;
}

}  // namespace

ElementaryDivisor right_divisor(const RationalMatrixFunction& L, const InverseData& M, int s,
                                double tol) {
  check_index(L, s);
  const auto& c = M.residues[static_cast<size_t>(s)].column;
  const auto& b = L.residues[static_cast<size_t>(s)].row;
  return divisor_from(c, b, L.poles[static_cast<size_t>(s)], L.zeros[static_cast<size_t>(s)], tol);
}

ElementaryDivisor left_divisor(const RationalMatrixFunction& L, const InverseData& M, int s,
                               double tol) {
  check_index(L, s);
  const auto& a = L.residues[static_cast<size_t>(s)].column;
  const auto& d = M.residues[static_cast<size_t>(s)].row;
  return divisor_from(a, d, L.poles[static_cast<size_t>(s)], L.zeros[static_cast<size_t>(s)], tol);
}

std::pair<RationalMatrixFunction, ElementaryDivisor> peel_right(const RationalMatrixFunction& L,
                                                                int s, double tol) {
  check_index(L, s);
  const auto M = invert(L, tol);
  const auto B = right_divisor(L, M, s, tol);
  const Eigen::Index m = L.dim();
  const CMat I = CMat::Identity(m, m);
  const CMat G = B.numerator();
  const auto us = static_cast<size_t>(s);

  // The peeled residue must vanish identically; this guards the pairing.
  const CMat Ls = L.residues[us].matrix();
  const CMat gone = Ls * (I - G / (L.poles[us] - B.zeta0));
  if (gone.cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, Ls.cwiseAbs().maxCoeff()))
    throw DegeneratePairing("peeled residue fails to vanish at the pole " + fmt(L.poles[us]));

  std::vector<Complex> poles;
  std::vector<Complex> zeros;
  std::vector<CMat> mats;
  for (size_t j = 0; j < L.poles.size(); ++j) {
    if (j == us) continue;
    poles.push_back(L.poles[j]);
    zeros.push_back(L.zeros[j]);
    mats.push_back(L.residues[j].matrix() * (I - G / (L.poles[j] - B.zeta0)));
  }
  auto remainder = construct(L.rho, std::move(poles), mats,
                             zeros.empty() ? std::optional<std::vector<Complex>>{std::vector<Complex>{}}
                                           : std::optional<std::vector<Complex>>{zeros},
                             tol);
  return {std::move(remainder), B};
}

Factorization full_factorization(const RationalMatrixFunction& L,
                                 const std::vector<std::pair<Complex, Complex>>& pairing,
                                 double tol) {
  const auto perm = pairing_permutation(L, pairing);
  const size_t k = perm.size();

  // Reorder the instance so that pole s matches pairing[s].
  std::vector<Complex> poles(k);
  std::vector<Complex> zeros(k);
  std::vector<CMat> mats(k);
  for (size_t s = 0; s < k; ++s) {
    poles[s] = L.poles[perm[s]];
    zeros[s] = pairing[s].first;
    mats[s] = L.residues[perm[s]].matrix();
  }
  auto cur = construct(L.rho, std::move(poles), mats, zeros, tol);

  Factorization F;
  F.rho = L.rho;
  F.pairing = pairing;
  F.factors.resize(k, ElementaryDivisor{Complex(0, 0), Complex(0, 0), CVec(), CRow()});
  for (size_t s = k; s-- > 0;) {
    try {
      auto [rem, B] = peel_right(cur, static_cast<int>(s), tol);
      F.factors[s] = B;
      cur = std::move(rem);
    } catch (Error& e) {
      e.step_index = static_cast<int>(s) + 1;
      throw;
    }
  }
  return F;
}

Factorization full_factorization(const RationalMatrixFunction& L, double tol) {
  std::vector<std::pair<Complex, Complex>> pairing;
  pairing.reserve(L.poles.size());
  for (size_t i = 0; i < L.poles.size(); ++i) pairing.emplace_back(L.zeros[i], L.poles[i]);
  return full_factorization(L, pairing, tol);
}

RationalMatrixFunction reconstruct(const Factorization& F, double tol) {
  const size_t k = F.factors.size();
  const auto m = static_cast<Eigen::Index>(F.rho.size());
  std::vector<Complex> poles(k), zeros(k);
  for (size_t s = 0; s < k; ++s) {
    zeros[s] = F.pairing[s].first;
    poles[s] = F.pairing[s].second;
  }
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j)
      if (!points_distinct(poles[i], poles[j], tol))
        throw NonGeneric("factor poles collide: " + fmt(poles[i]));

  CMat L0 = CMat::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) L0(i, i) = F.rho[static_cast<size_t>(i)];

  std::vector<CMat> mats(k);
  for (size_t s = 0; s < k; ++s) {
    CMat pre = L0;
    for (size_t j = 0; j < s; ++j) pre *= evaluate(F.factors[j], poles[s], tol);
    CMat post = F.factors[s].numerator();
    for (size_t j = s + 1; j < k; ++j) post *= evaluate(F.factors[j], poles[s], tol);
    mats[s] = pre * post;
  }
  return construct(F.rho, poles, mats, zeros, tol);
}

CMat evaluate(const Factorization& F, Complex z, double tol) {
  const auto m = static_cast<Eigen::Index>(F.rho.size());
  CMat out = CMat::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) out(i, i) = F.rho[static_cast<size_t>(i)];
  for (const auto& B : F.factors) out *= evaluate(B, z, tol);
  return out;
}

}  // namespace rmf
