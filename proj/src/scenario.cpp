#include "cayley/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cayley {

namespace {

using Terms = std::vector<std::pair<std::string, double>>;
using Entries = std::vector<std::tuple<int, int, int, double>>;

// de^a = sum of v e^{jk}; c^a_jk = -v.
Entries from_differentials(const std::vector<std::pair<int, Terms>>& de) {
  Entries out;
  for (const auto& [a, terms] : de)
    for (const auto& [jk, v] : terms) out.emplace_back(jk[0] - '0', jk[1] - '0', a, -v);
  return out;
}

Scenario su3() {
  const double r = std::sqrt(3.0);
  Scenario s;
  s.name = "su3";
  s.structure_constants = from_differentials({
      {1, {{"26", -r / 6}, {"37", -r / 3}, {"48", -r / 6}}},
      {2, {{"16", r / 6}, {"34", r / 6}, {"56", 0.5}, {"78", r / 6}}},
      {3, {{"17", r / 3}, {"24", -r / 6}, {"68", r / 6}}},
      {4, {{"18", r / 6}, {"23", r / 6}, {"58", -0.5}, {"67", r / 6}}},
      {5, {{"26", -0.5}, {"48", 0.5}}},
      {6, {{"12", -r / 6}, {"25", 0.5}, {"38", -r / 6}, {"47", -r / 6}}},
      {7, {{"13", -r / 3}, {"28", -r / 6}, {"46", r / 6}}},
      {8, {{"14", -r / 6}, {"27", r / 6}, {"36", r / 6}, {"45", -0.5}}},
  });
  s.phi_terms = su3_cayley_form().terms(0.0);
  return s;
}

Scenario hk(double k) {
  if (k == 0.0) throw ValidationError("params.k: must be nonzero");
  Scenario s;
  s.name = "hk-t5";
  // de^6 = -k e^{68}, de^7 = k e^{78}
  s.structure_constants = {{6, 8, 6, k}, {7, 8, 7, -k}};
  s.phi_terms = hk_cayley_form().terms(0.0);
  s.params["k"] = k;
  return s;
}

Scenario torus() {
  Scenario s;
  s.name = "torus";
  s.phi_terms = reference_cayley_form().terms(0.0);
  return s;
}

std::string field_error(const std::string& field, const std::string& what) { return field + ": " + what; }

}  // namespace

Form su3_cayley_form() {
  return Form::from_terms(4, {{"1235", 1},  {"1248", 1},  {"1267", 1},  {"1346", 1},  {"1378", 1},
                              {"1457", 1},  {"1568", 1},  {"2347", 1},  {"2368", -1}, {"2456", -1},
                              {"2578", 1},  {"3458", 1},  {"3567", -1}, {"4678", -1}});
}

Form hk_cayley_form() {
  return Form::from_terms(4, {{"1234", 1},  {"1256", -1}, {"1278", -1}, {"1357", -1}, {"1368", 1},
                              {"1458", -1}, {"1467", -1}, {"5678", 1},  {"3478", -1}, {"3456", -1},
                              {"2468", -1}, {"2457", 1},  {"2367", -1}, {"2358", -1}});
}

LieAlgebra Scenario::algebra() const {
  Tensor3 c = zero_tensor3();
  std::vector<std::vector<std::vector<bool>>> seen(kDim, std::vector<std::vector<bool>>(kDim, std::vector<bool>(kDim)));
  for (std::size_t n = 0; n < structure_constants.size(); ++n) {
    auto [i, j, k, v] = structure_constants[n];
    std::string field = "structure_constants[" + std::to_string(n) + "]";
    if (i < 1 || i > kDim || j < 1 || j > kDim || k < 1 || k > kDim)
      throw ValidationError(field_error(field, "indices must lie in 1..8"));
    if (!std::isfinite(v)) throw ValidationError(field_error(field, "value must be finite"));
    --i, --j, --k;
    if (i == j) {
      if (v != 0.0) throw ValidationError(field_error(field, "c^k_ii must vanish (antisymmetry)"));
      continue;
    }
    double have = c[k](i, j);
    if (seen[k][i][j] && std::abs(have - v) > 1e-12 * (1.0 + std::abs(v)))
      throw ValidationError(field_error(field, "conflicts with an earlier entry (antisymmetry)"));
    c[k](i, j) = v;
    c[k](j, i) = -v;
    seen[k][i][j] = seen[k][j][i] = true;
  }
  return LieAlgebra(c);
}

Form Scenario::phi() const {
  for (std::size_t n = 0; n < phi_terms.size(); ++n) {
    const auto& [idx, v] = phi_terms[n];
    auto [mask, sign] = basis::parse(idx);
    if (idx.size() != 4 || sign == 0)
      throw ValidationError(field_error("phi_coeffs[" + std::to_string(n) + "]", "expected four distinct digits 1..8, got '" + idx + "'"));
    if (!std::isfinite(v)) throw ValidationError(field_error("phi_coeffs[" + std::to_string(n) + "]", "value must be finite"));
    (void)mask;
  }
  return Form::from_terms(4, phi_terms);
}

std::vector<std::string> builtin_names() { return {"su3", "hk-t5", "torus"}; }

Scenario builtin_scenario(const std::string& name, const std::map<std::string, double>& params) {
  auto reject_params = [&](const std::vector<std::string>& allowed) {
    for (const auto& [key, value] : params)
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ValidationError(field_error("params." + key, "not a parameter of builtin '" + name + "'"));
  };
  if (name == "su3") {
    reject_params({});
    return su3();
  }
  if (name == "hk-t5") {
    reject_params({"k"});
    auto it = params.find("k");
    return hk(it == params.end() ? 1.0 : it->second);
  }
  if (name == "torus") {
    reject_params({});
    return torus();
  }
  throw ValidationError("unknown builtin scenario '" + name + "'");
}

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("scenario: expected a JSON object");
  Scenario s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ValidationError("name: expected a string");
    s.name = j["name"].get<std::string>();
  }
  if (j.contains("structure_constants")) {
    const auto& sc = j["structure_constants"];
    if (!sc.is_array()) throw ValidationError("structure_constants: expected an array");
    for (std::size_t n = 0; n < sc.size(); ++n) {
      const auto& e = sc[n];
      std::string field = "structure_constants[" + std::to_string(n) + "]";
      if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number_integer() || !e[3].is_number())
        throw ValidationError(field_error(field, "expected [i, j, k, value]"));
      s.structure_constants.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<double>());
    }
  }
  // "phi" is accepted as a short alias
  std::string key = j.contains("phi_coeffs") ? "phi_coeffs" : "phi";
  if (!j.contains(key)) throw ValidationError("phi_coeffs: missing");
  const auto& p = j[key];
  if (p.is_object()) {
    for (const auto& [idx, value] : p.items()) {
      if (!value.is_number()) throw ValidationError(field_error(key + "." + idx, "expected a number"));
      s.phi_terms.emplace_back(idx, value.get<double>());
    }
  } else if (p.is_array()) {
    for (std::size_t n = 0; n < p.size(); ++n) {
      const auto& e = p[n];
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number())
        throw ValidationError(field_error(key + "[" + std::to_string(n) + "]", "expected [\"1234\", value]"));
      s.phi_terms.emplace_back(e[0].get<std::string>(), e[1].get<double>());
    }
  } else {
    throw ValidationError(key + ": expected an array of [multi-index, value] pairs");
  }
  if (j.contains("metric")) {
    const auto& g = j["metric"];
    if (!g.is_array() || g.size() != kDim) throw ValidationError("metric: expected an 8x8 array");
    for (int a = 0; a < kDim; ++a) {
      if (!g[a].is_array() || g[a].size() != kDim) throw ValidationError("metric[" + std::to_string(a) + "]: expected 8 numbers");
      for (int b = 0; b < kDim; ++b) {
        if (!g[a][b].is_number())
          throw ValidationError("metric[" + std::to_string(a) + "][" + std::to_string(b) + "]: expected a number");
        s.metric(a, b) = g[a][b].get<double>();
      }
    }
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ValidationError("params: expected an object");
    for (const auto& [key, value] : j["params"].items()) {
      if (!value.is_number()) throw ValidationError(field_error("params." + key, "expected a number"));
      s.params[key] = value.get<double>();
    }
  }
  return s;
}

nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["structure_constants"] = nlohmann::json::array();
  for (const auto& [i, jj, k, v] : s.structure_constants) j["structure_constants"].push_back({i, jj, k, v});
  j["phi_coeffs"] = nlohmann::json::array();
  for (const auto& [idx, v] : s.phi_terms) j["phi_coeffs"].push_back({idx, v});
  j["metric"] = nlohmann::json::array();
  for (int a = 0; a < kDim; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int b = 0; b < kDim; ++b) row.push_back(s.metric(a, b));
    j["metric"].push_back(row);
  }
  j["params"] = nlohmann::json::object();
  for (const auto& [key, v] : s.params) j["params"][key] = v;
  return j;
}

Scenario load_scenario(const std::string& source, const std::map<std::string, double>& params) {
  auto names = builtin_names();
  if (std::find(names.begin(), names.end(), source) != names.end()) return builtin_scenario(source, params);
  std::ifstream in(source);
  if (!in) throw ValidationError("scenario '" + source + "' is neither a builtin nor a readable file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("scenario '" + source + "': malformed JSON (" + e.what() + ")");
  }
  Scenario s = scenario_from_json(j);
  for (const auto& [key, v] : params) s.params[key] = v;
  if (s.name.empty()) s.name = source;
  return s;
}

ScenarioCheck validate_scenario(const Scenario& s, double tol) {
  ScenarioCheck r;
  LieAlgebra alg = s.algebra();
  r.antisymmetry_residual = alg.antisymmetry_residual();
  r.jacobi_residual = alg.jacobi_residual();
  r.unimodular = alg.unimodular();
  if (r.jacobi_residual > 1e-10) {
    std::ostringstream os;
    os << "structure_constants: Jacobi identity fails (residual " << r.jacobi_residual << ")";
    throw ValidationError(os.str());
  }
  if ((s.metric - s.metric.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("metric: not symmetric");
  Metric m;
  try {
    m = Metric(s.metric);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("metric: ") + e.what());
  }
  r.admissibility = check_admissible(CayleyForm(s.phi(), m), tol);
  if (!r.admissibility.pass) {
    std::ostringstream os;
    os << "phi_coeffs: not an admissible Cayley form for the given metric (self-duality " << r.admissibility.self_dual_residual
       << ", volume " << r.admissibility.volume_residual << ", norm " << r.admissibility.norm_residual << ", spectrum "
       << r.admissibility.spectrum_residual << ")";
    throw ValidationError(os.str());
  }
  return r;
}

double verification_tolerance() {
  const char* env = std::getenv("CAYLEY_FLOW_TOL");
  if (!env || !*env) return 1e-8;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
    throw ValidationError(std::string("CAYLEY_FLOW_TOL: expected a positive number, got '") + env + "'");
  return v;
}

}  // namespace cayley
