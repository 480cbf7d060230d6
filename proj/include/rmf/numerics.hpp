#pragma once

#include <algorithm>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rmf/errors.hpp"

namespace rmf {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CRow = Eigen::RowVectorXcd;
using CMat = Eigen::MatrixXcd;

// Relative threshold below which a configuration counts as degenerate.
inline constexpr double kGenericityTol = 1e-9;
// Absolute floor under which a matrix counts as zero.
inline constexpr double kZeroFloor = 1e-14;

// Rank-one factorization M = column * row with the row pivot-normalized:
// row[pivot_index] is exactly 1 and the column carries the magnitude.
struct RankOnePair {
  CVec column;
  CRow row;
  Eigen::Index pivot_index = 0;

  CMat matrix() const { return column * row; }
};

RankOnePair rank_one_decompose(const CMat& M, double rel_tol = kGenericityTol);

// Coefficients in ascending powers: p(z) = c[0] + c[1] z + ... + c[n] z^n.
using Polynomial = std::vector<Complex>;

Complex poly_eval(const Polynomial& p, Complex z);

// Interpolates the unique polynomial of the given degree through the first
// degree+1 samples and checks any extra samples against it.
Polynomial poly_from_samples(const std::vector<std::pair<Complex, Complex>>& samples,
                             int degree);

// All roots with multiplicity, sorted lexicographically by (re, im).
std::vector<Complex> poly_roots(const Polynomial& p);

inline double point_scale(Complex a, Complex b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool points_distinct(Complex a, Complex b, double tol = kGenericityTol) {
  return std::abs(a - b) >= tol * point_scale(a, b);
}

inline bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Separation of the complex lines spanned by u and v (sign and phase blind):
// the sine of the principal angle, well conditioned near parallel.
double projective_angle(const CVec& u, const CVec& v);
double projective_angle(const CRow& u, const CRow& v);

}  // namespace rmf
