#include "rmf/numerics.hpp"

#include <cmath>
#include <sstream>

namespace rmf {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

RankOnePair rank_one_decompose(const CMat& M, double rel_tol) {
  const double scale = M.cwiseAbs().maxCoeff();
  if (!(scale > kZeroFloor)) throw ZeroMatrix("max-abs entry " + fmt(scale));
  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s.size() > 1 && s(1) > rel_tol * s(0))
    throw NotRankOne("second singular value " + fmt(s(1)) + " against leading " + fmt(s(0)));

  // Pivot on the largest component of the row direction so the stored row
  // has a unit entry there and the column absorbs the magnitude.
  const CRow row_dir = svd.matrixV().col(0).adjoint();
  Eigen::Index pivot = 0;
  row_dir.cwiseAbs().maxCoeff(&pivot);

  RankOnePair out;
  out.pivot_index = pivot;
  out.column = M.col(pivot);
  out.row = svd.matrixU().col(0).adjoint() * M;
  out.row /= out.row(pivot);
  out.row(pivot) = Complex(1.0, 0.0);
  const double err = (out.column * out.row - M).cwiseAbs().maxCoeff();
  if (err > rel_tol * scale)
    throw NotRankOne("rank-one reconstruction residual " + fmt(err));
  return out;
}

Complex poly_eval(const Polynomial& p, Complex z) {
  Complex v(0.0, 0.0);
  for (size_t i = p.size(); i-- > 0;) v = v * z + p[i];
  return v;
}

Polynomial poly_from_samples(const std::vector<std::pair<Complex, Complex>>& samples,
                             int degree) {
  if (degree < 0) throw BadInput("negative interpolation degree");
  const size_t need = static_cast<size_t>(degree) + 1;
  if (samples.size() < need)
    throw BadInput("need at least degree+1 samples, got " + fmt(double(samples.size())));

  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j)
      if (std::abs(samples[i].first - samples[j].first) <
          1e-12 * point_scale(samples[i].first, samples[j].first))
        throw DuplicateAbscissa("samples " + fmt(double(i)) + " and " + fmt(double(j)) +
                                " share abscissa " + fmt(samples[i].first));

  // Newton divided differences on the first degree+1 samples.
  std::vector<Complex> x(need), dd(need);
  for (size_t i = 0; i < need; ++i) {
    x[i] = samples[i].first;
    dd[i] = samples[i].second;
  }
  for (size_t level = 1; level < need; ++level)
    for (size_t i = need - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - level]);

  Polynomial coeff(need, Complex(0.0, 0.0));
  Polynomial basis{Complex(1.0, 0.0)};
  for (size_t level = 0; level < need; ++level) {
    for (size_t j = 0; j < basis.size(); ++j) coeff[j] += dd[level] * basis[j];
    if (level + 1 < need) {
      Polynomial next(basis.size() + 1, Complex(0.0, 0.0));
      for (size_t j = 0; j < basis.size(); ++j) {
        next[j + 1] += basis[j];
        next[j] -= x[level] * basis[j];
      }
      basis = std::move(next);
    }
  }

  double yscale = 1.0;
  for (const auto& s : samples) yscale = std::max(yscale, std::abs(s.second));
  for (size_t i = need; i < samples.size(); ++i) {
    const double r = std::abs(poly_eval(coeff, samples[i].first) - samples[i].second);
    if (r > 1e-8 * yscale)
      throw InconsistentSamples("extra sample " + fmt(double(i)) + " off by " + fmt(r));
  }
  return coeff;
}

std::vector<Complex> poly_roots(const Polynomial& p) {
  double cmax = 0.0;
  for (const auto& c : p) cmax = std::max(cmax, std::abs(c));
  if (!(cmax > 0.0)) throw ZeroPolynomial("all coefficients vanish");

  size_t deg = p.size() - 1;
  while (deg > 0 && std::abs(p[deg]) <= 1e-14 * cmax) --deg;
  if (deg == 0) return {};

  CMat C = CMat::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (size_t i = 1; i < deg; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (size_t i = 0; i < deg; ++i)
    C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -p[i] / p[deg];
  Eigen::ComplexEigenSolver<CMat> es(C);
  if (es.info() != Eigen::Success) throw NonGeneric("companion eigensolver failed");

  std::vector<Complex> roots(deg);
  for (size_t i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));

  // A few improvement-gated Newton corrections per root.
  Polynomial trimmed(p.begin(), p.begin() + static_cast<long>(deg) + 1);
  for (auto& r : roots) {
    for (int it = 0; it < 3; ++it) {
      Complex v = trimmed[deg], d(0.0, 0.0);
      for (size_t j = deg; j-- > 0;) {
        d = d * r + v;
        v = v * r + trimmed[j];
      }
      if (std::abs(d) == 0.0) break;
      const Complex rn = r - v / d;
      const double old_res = std::abs(v);
      if (std::abs(poly_eval(trimmed, rn)) < old_res)
        r = rn;
      else
        break;
    }
  }

  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

namespace {

template <typename V>
double projective_angle_impl(const V& u, const V& v) {
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 1.0;
  // Sine of the angle between the complex lines, computed as the norm of the
  // rejection; well conditioned near zero, unlike acos of the cosine.
  const V un = u / nu;
  const V vn = v / nv;
  const Complex c = vn.dot(un);
  return (un - c * vn).norm();
}

}  // namespace

double projective_angle(const CVec& u, const CVec& v) { return projective_angle_impl(u, v); }
double projective_angle(const CRow& u, const CRow& v) { return projective_angle_impl(u, v); }

}  // namespace rmf
