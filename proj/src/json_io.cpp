#include "rmf/json_io.hpp"

namespace rmf {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw BadInput("expected a complex value as [re, im] or a bare number");
}

Json cvec_to_json(const CVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVec cvec_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw BadInput("expected a nonempty array of complex values");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Json crow_to_json(const CRow& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CRow crow_from_json(const Json& j) {
  const CVec v = cvec_from_json(j);
  return v.transpose();
}

Json points_to_json(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

std::vector<Complex> points_from_json(const Json& j) {
  if (!j.is_array()) throw BadInput("expected an array of complex values");
  std::vector<Complex> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

Json rmf_to_json(const RationalMatrixFunction& L) {
  Json out;
  out["L0"] = points_to_json(L.rho);
  out["poles"] = points_to_json(L.poles);
  Json res = Json::array();
  for (const auto& r : L.residues)
    res.push_back(Json{{"column", cvec_to_json(r.column)}, {"row", crow_to_json(r.row)}});
  out["residues"] = res;
  out["zeros"] = points_to_json(L.zeros);
  return out;
}

RationalMatrixFunction rmf_from_json(const Json& j, double tol) {
  if (!j.contains("L0") || !j.contains("poles") || !j.contains("residues"))
    throw BadInput("residue form needs L0, poles and residues");
  const auto rho = points_from_json(j.at("L0"));
  const auto poles = points_from_json(j.at("poles"));
  if (!j.at("residues").is_array()) throw BadInput("residues must be an array");
  std::vector<CMat> mats;
  std::vector<CVec> cols;
  std::vector<CRow> rows;
  for (const auto& e : j.at("residues")) {
    if (!e.contains("column") || !e.contains("row"))
      throw BadInput("each residue needs a column and a row");
    const CVec col = cvec_from_json(e.at("column"));
    const CRow row = crow_from_json(e.at("row"));
    if (col.size() != row.size()) throw BadInput("residue column and row sizes differ");
    mats.push_back(col * row);
    cols.push_back(col);
    rows.push_back(row);
  }
  std::optional<std::vector<Complex>> zeros;
  if (j.contains("zeros") && !j.at("zeros").is_null()) zeros = points_from_json(j.at("zeros"));
  auto L = construct(rho, poles, mats, zeros, tol);
  // A pair already in canonical shape (unit entry at the row's max-abs pivot)
  // is kept verbatim, making canonical files exact fixed points of reparsing.
  for (size_t i = 0; i < L.residues.size(); ++i) {
    Eigen::Index p = 0;
    rows[i].cwiseAbs().maxCoeff(&p);
    if (rows[i](p) == Complex(1.0, 0.0))
      L.residues[i] = RankOnePair{cols[i], rows[i], p};
  }
  return L;
}

Json divisor_to_json(const ElementaryDivisor& B) {
  return Json{{"z0", complex_to_json(B.z0)},
              {"zeta0", complex_to_json(B.zeta0)},
              {"p", cvec_to_json(B.p)},
              {"q", crow_to_json(B.q)}};
}

ElementaryDivisor divisor_from_json(const Json& j, double tol) {
  for (const char* key : {"z0", "zeta0", "p", "q"})
    if (!j.contains(key)) throw BadInput(std::string("elementary divisor needs ") + key);
  return make_divisor(complex_from_json(j.at("z0")), complex_from_json(j.at("zeta0")),
                      cvec_from_json(j.at("p")), crow_from_json(j.at("q")), tol);
}

Json factorization_to_json(const Factorization& F) {
  Json out;
  out["L0"] = points_to_json(F.rho);
  Json factors = Json::array();
  for (const auto& B : F.factors) factors.push_back(divisor_to_json(B));
  out["factors"] = factors;
  Json pairing = Json::array();
  for (const auto& [zeta, pole] : F.pairing)
    pairing.push_back(Json::array({complex_to_json(zeta), complex_to_json(pole)}));
  out["pairing"] = pairing;
  return out;
}

Factorization factorization_from_json(const Json& j, double tol) {
  for (const char* key : {"L0", "factors", "pairing"})
    if (!j.contains(key)) throw BadInput(std::string("factorization needs ") + key);
  Factorization F;
  F.rho = points_from_json(j.at("L0"));
  for (const auto& e : j.at("factors")) F.factors.push_back(divisor_from_json(e, tol));
  for (const auto& e : j.at("pairing")) {
    if (!e.is_array() || e.size() != 2) throw BadInput("each pairing entry is [zeta, pole]");
    F.pairing.emplace_back(complex_from_json(e[0]), complex_from_json(e[1]));
  }
  if (F.factors.size() != F.pairing.size())
    throw BadInput("factor and pairing counts differ");
  return F;
}

Json spectral_to_json(const SpectralType& T, const SpectralPoint& P) {
  return Json{{"rho", Json::array({complex_to_json(T.rho1), complex_to_json(T.rho2)})},
              {"z", Json::array({complex_to_json(T.z1), complex_to_json(T.z2)})},
              {"zeta", Json::array({complex_to_json(T.zeta1), complex_to_json(T.zeta2)})},
              {"k", Json::array({complex_to_json(T.k1), complex_to_json(T.k2)})},
              {"mu", complex_to_json(T.mu)},
              {"gamma", complex_to_json(P.gamma)},
              {"pi", complex_to_json(P.pi)}};
}

std::pair<SpectralType, SpectralPoint> spectral_from_json(const Json& j) {
  for (const char* key : {"rho", "z", "zeta", "k", "mu", "gamma", "pi"})
    if (!j.contains(key)) throw BadInput(std::string("spectral form needs ") + key);
  const auto pair_of = [&](const char* key) {
    const auto v = points_from_json(j.at(key));
    if (v.size() != 2) throw BadInput(std::string(key) + " must hold exactly two values");
    return v;
  };
  const auto rho = pair_of("rho");
  const auto z = pair_of("z");
  const auto zeta = pair_of("zeta");
  const auto k = pair_of("k");
  SpectralType T;
  T.rho1 = rho[0];
  T.rho2 = rho[1];
  T.z1 = z[0];
  T.z2 = z[1];
  T.zeta1 = zeta[0];
  T.zeta2 = zeta[1];
  T.k1 = k[0];
  T.k2 = k[1];
  T.mu = complex_from_json(j.at("mu"));
  SpectralPoint P{complex_from_json(j.at("gamma")), complex_from_json(j.at("pi"))};
  return {T, P};
}

Json report_to_json(const std::vector<InvariantReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports)
    out.push_back(Json{{"invariant", r.invariant},
                       {"max_residual", r.max_residual},
                       {"pass", r.pass}});
  return out;
}

bool looks_spectral(const Json& j) {
  return j.is_object() && j.contains("rho") && j.contains("gamma") && j.contains("pi");
}

bool looks_residue_form(const Json& j) {
  return j.is_object() && j.contains("L0") && j.contains("poles") && j.contains("residues");
}

}  // namespace rmf
