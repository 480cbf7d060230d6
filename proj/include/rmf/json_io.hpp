#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "rmf/elementary_divisor.hpp"
#include "rmf/factorization.hpp"
#include "rmf/rational_matrix.hpp"
#include "rmf/spectral.hpp"
#include "rmf/verify.hpp"

namespace rmf {

using Json = nlohmann::json;

// Complex values serialize as [re, im]; bare numbers are accepted on input.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json cvec_to_json(const CVec& v);
CVec cvec_from_json(const Json& j);
Json crow_to_json(const CRow& v);
CRow crow_from_json(const Json& j);
Json points_to_json(const std::vector<Complex>& v);
std::vector<Complex> points_from_json(const Json& j);

// {"L0": [...], "poles": [...], "residues": [{"column": [...], "row": [...]}],
//  "zeros": [...]} with zeros in pairing order.
Json rmf_to_json(const RationalMatrixFunction& L);
RationalMatrixFunction rmf_from_json(const Json& j, double tol = kGenericityTol);

// {"z0": [re,im], "zeta0": [re,im], "p": [...], "q": [...]}.
Json divisor_to_json(const ElementaryDivisor& B);
ElementaryDivisor divisor_from_json(const Json& j, double tol = kGenericityTol);

// {"L0": [...], "factors": [...], "pairing": [[zeta, pole], ...]}.
Json factorization_to_json(const Factorization& F);
Factorization factorization_from_json(const Json& j, double tol = kGenericityTol);

// {"rho": [C,C], "z": [C,C], "zeta": [C,C], "k": [C,C], "mu": C,
//  "gamma": C, "pi": C}.
Json spectral_to_json(const SpectralType& T, const SpectralPoint& P);
std::pair<SpectralType, SpectralPoint> spectral_from_json(const Json& j);

Json report_to_json(const std::vector<InvariantReport>& reports);

bool looks_spectral(const Json& j);
bool looks_residue_form(const Json& j);

}  // namespace rmf
