// Command-line front end: build, factorize, flow, verify.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmf/dpv.hpp"
#include "rmf/factorization.hpp"
#include "rmf/json_io.hpp"
#include "rmf/refactorization.hpp"
#include "rmf/spectral.hpp"
#include "rmf/verify.hpp"

namespace {

using namespace rmf;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// One CSV field per divisor point; the imaginary part is kept only when it
// is meaningful at double precision.
std::string fmt_point(Complex z) {
  if (std::abs(z.imag()) <= 1e-15 * std::max(1.0, std::abs(z))) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

Json load_json(const std::string& path) {
  std::istream* in = &std::cin;
  std::ifstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw BadInput("cannot open input file: " + path);
    in = &file;
  }
  try {
    return Json::parse(*in);
  } catch (const Json::parse_error& e) {
    throw BadInput(std::string("input is not valid JSON: ") + e.what());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadInput("cannot open output file: " + path);
  out << text;
}

RationalMatrixFunction instance_from_json(const Json& j, double tol) {
  if (looks_residue_form(j)) return rmf_from_json(j, tol);
  if (looks_spectral(j)) {
    const auto [T, P] = spectral_from_json(j);
    return from_spectral(T, P, tol);
  }
  throw BadInput("input is neither a residue form nor a spectral form");
}

std::string form_name(DpvForm f) {
  switch (f) {
    case DpvForm::printed: return "printed";
    case DpvForm::swapped: return "swapped";
    default: return "oracle_arbitrated";
  }
}

int run_build(const std::string& in, const std::string& out, double tol) {
  const Json j = load_json(in);
  const auto L = instance_from_json(j, tol);
  Json o = rmf_to_json(L);
  o["divisor"] = Json{{"poles", points_to_json(L.poles)}, {"zeros", points_to_json(L.zeros)}};
  o["spectral"] = nullptr;
  if (L.dim() == 2 && L.pole_count() == 2) {
    try {
      const auto [T, P] = extract_spectral(L, tol);
      o["spectral"] = spectral_to_json(T, P);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::validation) throw;
    }
  }
  emit(out, o.dump(2) + "\n");
  return 0;
}

int run_factorize(const std::string& in, const std::string& out, double tol) {
  const Json j = load_json(in);
  const auto L = instance_from_json(j, tol);
  Factorization F;
  if (j.contains("pairing") && !j.at("pairing").is_null()) {
    std::vector<std::pair<Complex, Complex>> pairing;
    for (const auto& e : j.at("pairing")) {
      if (!e.is_array() || e.size() != 2) throw BadInput("each pairing entry is [zeta, pole]");
      pairing.emplace_back(complex_from_json(e[0]), complex_from_json(e[1]));
    }
    F = full_factorization(L, pairing, tol);
  } else {
    F = full_factorization(L, tol);
  }
  emit(out, factorization_to_json(F).dump(2) + "\n");
  return 0;
}

int run_flow_dpv(const Json& j, const std::string& out, int steps, DpvForm form, double tol) {
  DpvState S;
  if (looks_spectral(j)) {
    const auto [T, P] = spectral_from_json(j);
    S = DpvState{T, P, 0};
  } else {
    const auto L = instance_from_json(j, tol);
    const auto [T, P] = extract_spectral(L, tol);
    S = DpvState{T, P, 0};
  }

  std::ostringstream csv;
  csv << "step,z1,zeta1,gamma_re,gamma_im,pi_re,pi_im,mu_re,mu_im,oracle_discrepancy,form_used\n";
  const auto row = [&csv](const DpvState& st, const std::string& disc, const std::string& fu) {
    csv << st.step << ',' << fmt_point(st.T.z1) << ',' << fmt_point(st.T.zeta1) << ','
        << fmt(st.P.gamma.real()) << ',' << fmt(st.P.gamma.imag()) << ','
        << fmt(st.P.pi.real()) << ',' << fmt(st.P.pi.imag()) << ','
        << fmt(st.T.mu.real()) << ',' << fmt(st.T.mu.imag()) << ',' << disc << ',' << fu
        << '\n';
  };
  row(S, "", "");
  for (int i = 1; i <= steps; ++i) {
    DpvStepReport rep;
    try {
      rep = dpv_step(S, form, tol);
    } catch (Error& e) {
      if (e.step_index < 0) e.step_index = i;
      throw;
    }
    S = rep.recurrence_result;
    row(S, rep.max_discrepancy ? fmt(*rep.max_discrepancy) : "", form_name(rep.form_used));
  }
  emit(out, csv.str());
  return 0;
}

// Pivot-normalized coordinate trajectory; each vector is scaled so a held
// pivot component stays at 1, re-pivoting when that component decays.
struct PivotTracker {
  Eigen::Index pivot = -1;
  CVec normalize(const CVec& v) {
    Eigen::Index best = 0;
    const double mx = v.cwiseAbs().maxCoeff(&best);
    if (pivot < 0 || std::abs(v(pivot)) < 0.1 * mx) pivot = best;
    return v / v(pivot);
  }
};

int run_flow_vectors(const Json& j, const std::string& out, FlowMode mode, int steps,
                     double tol) {
  auto L = instance_from_json(j, tol);
  if (L.pole_count() != 2)
    throw WrongPoleCount("flow requires exactly two poles");
  const Eigen::Index m = L.dim();

  std::ostringstream csv;
  csv << "step,z1,zeta1";
  for (const char* name : {"c2", "d1", "a2", "b1"})
    for (Eigen::Index c = 0; c < m; ++c)
      csv << ',' << name << '_' << c << "_re," << name << '_' << c << "_im";
  csv << '\n';

  PivotTracker pc2, pd1, pa2, pb1;
  const auto row = [&](long step, const RationalMatrixFunction& cur) {
    const auto C = coordinates_of(cur, invert(cur, tol));
    const CVec c2 = pc2.normalize(C.X.col);
    const CVec d1 = pd1.normalize(CVec(C.X.row.transpose()));
    const CVec a2 = pa2.normalize(C.Y.col);
    const CVec b1 = pb1.normalize(CVec(C.Y.row.transpose()));
    csv << step << ',' << fmt_point(cur.poles[0]) << ',' << fmt_point(cur.zeros[0]);
    for (const CVec* v : {&c2, &d1, &a2, &b1})
      for (Eigen::Index c = 0; c < m; ++c)
        csv << ',' << fmt((*v)(c).real()) << ',' << fmt((*v)(c).imag());
    csv << '\n';
  };

  try {
    row(0, L);
  } catch (Error& e) {
    if (e.step_index < 0) e.step_index = 0;
    throw;
  }
  for (int i = 1; i <= steps; ++i) {
    try {
      L = mode == FlowMode::isospectral ? isospectral_step(L, tol) : isomonodromic_step(L, tol);
      row(i, L);
    } catch (Error& e) {
      if (e.step_index < 0) e.step_index = i;
      throw;
    }
  }
  emit(out, csv.str());
  return 0;
}

int run_verify(const std::string& in, const std::string& out, int random_n, uint64_t seed,
               EtaForm eta_form, double tol) {
  (void)tol;
  std::vector<InvariantReport> reports;
  if (random_n > 0) {
    reports = verify_random_suite(scaled_options(random_n, seed, eta_form));
  } else {
    if (in.empty()) throw BadInput("verify needs --input or --random N");
    VerifyOptions opt;
    opt.seed = seed;
    opt.eta_form = eta_form;
    reports = verify_instance(instance_from_json(load_json(in), kGenericityTol), opt);
  }
  emit(out, report_to_json(reports).dump(2) + "\n");
  for (const auto& r : reports)
    if (!r.pass) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational matrix functions with simple poles: factorization, "
               "refactorization flows, and the rank-2 spectral reduction"};
  app.require_subcommand(1);

  std::string input, output;
  double tol = kGenericityTol;
  int steps = 1;
  std::string mode = "isospectral";
  std::string form = "oracle_arbitrated";
  std::string eta_form = "lemma33";
  int random_n = 0;
  uint64_t seed = 20240801;

  auto* build = app.add_subcommand("build", "validate an instance and echo canonical JSON");
  build->add_option("--input,-i", input, "instance JSON (residue or spectral form), - for stdin")
      ->required();
  build->add_option("--output,-o", output, "output path (default stdout)");
  build->add_option("--tol", tol, "genericity tolerance");

  auto* factorize = app.add_subcommand("factorize", "emit the elementary divisor factorization");
  factorize->add_option("--input,-i", input, "instance JSON, - for stdin")->required();
  factorize->add_option("--output,-o", output, "output path (default stdout)");
  factorize->add_option("--tol", tol, "genericity tolerance");

  auto* flow = app.add_subcommand("flow", "run a refactorization flow, writing a CSV trajectory");
  flow->add_option("--input,-i", input, "instance JSON, - for stdin")->required();
  flow->add_option("--output,-o", output, "output path (default stdout)");
  flow->add_option("--mode", mode, "isospectral | isomonodromic | dpv")
      ->check(CLI::IsMember({"isospectral", "isomonodromic", "dpv"}));
  flow->add_option("--steps", steps, "number of steps (>= 1)");
  flow->add_option("--form", form, "dpv recurrence variant")
      ->check(CLI::IsMember({"printed", "swapped", "oracle_arbitrated"}));
  flow->add_option("--tol", tol, "genericity tolerance");

  auto* verify = app.add_subcommand("verify", "run the invariant suite, writing a JSON report");
  verify->add_option("--input,-i", input, "instance JSON to verify, - for stdin");
  verify->add_option("--output,-o", output, "output path (default stdout)");
  verify->add_option("--random", random_n, "verify N randomly generated instances instead");
  verify->add_option("--seed", seed, "random suite seed");
  verify->add_option("--eta-form", eta_form, "reconstruction variant exercised by the suite")
      ->check(CLI::IsMember({"lemma33", "printed"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (build->parsed()) return run_build(input, output, tol);
    if (factorize->parsed()) return run_factorize(input, output, tol);
    if (flow->parsed()) {
      if (steps < 1) throw rmf::BadInput("--steps must be at least 1");
      const rmf::Json j = load_json(input);
      if (mode == "dpv") {
        const DpvForm f = form == "printed"   ? DpvForm::printed
                          : form == "swapped" ? DpvForm::swapped
                                              : DpvForm::oracle_arbitrated;
        return run_flow_dpv(j, output, steps, f, tol);
      }
      const FlowMode fm =
          mode == "isomonodromic" ? FlowMode::isomonodromic : FlowMode::isospectral;
      return run_flow_vectors(j, output, fm, steps, tol);
    }
    if (verify->parsed()) {
      const EtaForm ef = eta_form == "printed" ? EtaForm::printed : EtaForm::lemma33;
      return run_verify(input, output, random_n, seed, ef, tol);
    }
  } catch (const rmf::Error& e) {
    rmf::Json err{{"error", e.code()}, {"message", e.what()}};
    if (e.step_index >= 0) err["step"] = e.step_index;
    std::cerr << err.dump() << "\n";
    return e.kind() == rmf::ErrorKind::validation ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << rmf::Json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
