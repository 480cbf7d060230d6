#include "rmf/random_instances.hpp"

#include <cmath>

#include "rmf/factorization.hpp"
#include "rmf/refactorization.hpp"

namespace rmf {

namespace {

constexpr int kRetryBudget = 400;

[[noreturn]] void exhausted(const char* what) {
  throw NonGeneric(std::string("random generation retry budget exhausted for ") + what);
}

}  // namespace

uint64_t Rng::next() {
  state += 0x9E3779B97f4A7C15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

Complex Rng::box(double half_width) {
  return Complex(uniform(-half_width, half_width), uniform(-half_width, half_width));
}

namespace {

Complex annulus_draw(Rng& rng, double lo, double hi) {
  for (int t = 0; t < kRetryBudget; ++t) {
    const Complex z = rng.box(hi);
    const double r = std::abs(z);
    if (r >= lo && r <= hi) return z;
  }
  exhausted("annulus draw");
}

CVec random_direction(Rng& rng, int m) {
  for (int t = 0; t < kRetryBudget; ++t) {
    CVec v(m);
    for (int i = 0; i < m; ++i) v(i) = rng.box(1.0);
    if (v.norm() >= 0.3) return v;
  }
  exhausted("direction draw");
}

}  // namespace

SpectralType random_type(Rng& rng) {
  for (int t = 0; t < kRetryBudget; ++t) {
    Complex pts[4];
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      pts[i] = rng.box(5.0);
      for (int j = 0; j < i; ++j)
        if (std::abs(pts[i] - pts[j]) < 0.5) ok = false;
    }
    if (!ok) continue;

    const Complex rho1 = annulus_draw(rng, 0.5, 2.0);
    Complex rho2 = annulus_draw(rng, 0.5, 2.0);
    if (std::abs(rho1 - rho2) < 0.3) continue;

    SpectralType T;
    T.z1 = pts[0];
    T.z2 = pts[1];
    T.zeta1 = pts[2];
    T.zeta2 = pts[3];
    T.rho1 = rho1;
    T.rho2 = rho2;
    T.k1 = rng.box(2.0);
    T.k2 = (T.z1 - T.zeta1) + (T.z2 - T.zeta2) - T.k1;
    T.mu = Complex(1.0, 0.0);
    return T;
  }
  exhausted("spectral type");
}

SpectralPoint random_point(Rng& rng, const SpectralType& T) {
  const Complex pts[] = {T.z1, T.z2, T.zeta1, T.zeta2};
  SpectralPoint P;
  for (int t = 0; t < kRetryBudget; ++t) {
    P.gamma = rng.box(5.0);
    bool ok = true;
    for (const auto& pt : pts)
      if (std::abs(P.gamma - pt) < 0.5) ok = false;
    if (!ok) continue;
    P.pi = annulus_draw(rng, 0.5, 2.0);
    if (std::abs(P.pi - T.rho1) < 0.3 || std::abs(P.pi - T.rho2) < 0.3) continue;
    return P;
  }
  exhausted("spectral point");
}

RationalMatrixFunction random_rank2(Rng& rng) {
  for (int t = 0; t < kRetryBudget; ++t) {
    const auto T = random_type(rng);
    const auto P = random_point(rng, T);
    try {
      auto L = from_spectral(T, P);
      // Cap the residue magnitudes of the instance and its inverse so product
      // roundoff stays orders of magnitude below the property tolerances.
      bool conditioned = true;
      for (const auto& r : L.residues)
        if (r.matrix().cwiseAbs().maxCoeff() > 50.0) conditioned = false;
      if (conditioned)
        for (const auto& r : invert(L).residues)
          if (r.matrix().cwiseAbs().maxCoeff() > 50.0) conditioned = false;
      if (conditioned) return L;
    } catch (const Error&) {
    }
  }
  exhausted("rank-2 instance");
}

RationalMatrixFunction random_instance(Rng& rng, int m, int k, bool probe_factorization) {
  for (int t = 0; t < kRetryBudget; ++t) {
    std::vector<Complex> rho;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      const Complex r = annulus_draw(rng, 0.5, 2.0);
      for (const auto& prev : rho)
        if (std::abs(r - prev) < 0.3) ok = false;
      if (ok) rho.push_back(r);
    }
    if (!ok) continue;

    std::vector<Complex> poles;
    for (int i = 0; i < k && ok; ++i) {
      const Complex z = rng.box(5.0);
      for (const auto& prev : poles)
        if (std::abs(z - prev) < 0.5) ok = false;
      if (ok) poles.push_back(z);
    }
    if (!ok) continue;

    std::vector<CMat> mats;
    for (int i = 0; i < k; ++i) {
      const CVec col = random_direction(rng, m);
      const CVec row = random_direction(rng, m);
      mats.push_back(col * row.transpose());
    }
    try {
      auto L = construct(rho, poles, mats);
      // Reject draws whose computed zeros crowd each other or the poles, or
      // whose inverse residues blow up; margins stay clear of the tolerances.
      bool conditioned = true;
      std::vector<Complex> pts = L.poles;
      for (const auto& zt : L.zeros) {
        for (const auto& p : pts)
          if (std::abs(zt - p) < 0.3) conditioned = false;
        pts.push_back(zt);
      }
      if (!conditioned) continue;
      const auto M = invert(L);
      for (const auto& r : M.residues)
        if (r.matrix().cwiseAbs().maxCoeff() > 50.0) conditioned = false;
      if (!conditioned) continue;
      // Reject draws whose factorization is marginally conditioned.
      if (probe_factorization) full_factorization(L, 0.02);
      return L;
    } catch (const Error&) {
      continue;
    }
  }
  exhausted("random instance");
}

RationalMatrixFunction random_flowable_rank2(Rng& rng, int probe_steps) {
  for (int t = 0; t < kRetryBudget; ++t) {
    auto L = random_rank2(rng);
    try {
      auto cur = L;
      for (int s = 0; s <= probe_steps; ++s) {
        const auto C = coordinates_of(cur, invert(cur));
        recover_vectors(C, params_of(cur), 1e-3);
        if (s < probe_steps) cur = isospectral_step(cur, 0.01);
      }
      return L;
    } catch (const Error&) {
      continue;
    }
  }
  exhausted("flowable rank-2 instance");
}

DpvState random_dpv_state(Rng& rng, int probe_steps) {
  for (int t = 0; t < kRetryBudget; ++t) {
    DpvState S;
    S.T = random_type(rng);
    S.P = random_point(rng, S.T);
    try {
      DpvState cur = S;
      for (int s = 0; s < probe_steps; ++s) {
        cur = dpv_step(cur, DpvForm::swapped, kGenericityTol, 0.05).recurrence_result;
        const double g = std::abs(cur.P.gamma), p = std::abs(cur.P.pi), m = std::abs(cur.T.mu);
        if (g > 50.0 || p < 1e-2 || p > 1e2 || m < 1e-4 || m > 1e4)
          throw NonGeneric("probe left the well-conditioned region");
      }
      return S;
    } catch (const Error&) {
      continue;
    }
  }
  exhausted("dPV state");
}

ElementaryDivisor random_divisor(Rng& rng, int m) {
  for (int t = 0; t < kRetryBudget; ++t) {
    const Complex z0 = rng.box(3.0);
    const Complex zeta0 = rng.box(3.0);
    if (std::abs(z0 - zeta0) < 0.5) continue;
    const CVec p = random_direction(rng, m);
    const CVec qv = random_direction(rng, m);
    const CRow q = qv.transpose();
    if (std::abs((q * p).value()) < 0.1 * p.norm() * q.norm()) continue;
    return make_divisor(z0, zeta0, p, q);
  }
  exhausted("elementary divisor");
}

CMat random_well_conditioned(Rng& rng, int m) {
  for (int t = 0; t < kRetryBudget; ++t) {
    CMat A(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A(i, j) = rng.box(1.0);
    Eigen::JacobiSVD<CMat> svd(A);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) > 0.02 * s(0)) return A;
  }
  exhausted("well-conditioned matrix");
}

}  // namespace rmf
