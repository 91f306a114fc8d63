#pragma once

#include "cayley/geometry.hpp"
#include "cayley/spin7.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace cayley {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structure constants are (i, j, k, value) with 1-based indices, meaning c^k_ij.
struct Scenario {
  std::string name;
  std::vector<std::tuple<int, int, int, double>> structure_constants;
  std::vector<std::pair<std::string, double>> phi_terms;
  Mat8 metric = Mat8::Identity();
  std::map<std::string, double> params;

  LieAlgebra algebra() const;
  Form phi() const;
  Metric metric_object() const { return Metric(metric); }
};

struct ScenarioCheck {
  double antisymmetry_residual = 0;
  double jacobi_residual = 0;
  bool unimodular = false;
  AdmissibilityReport admissibility;
};

std::vector<std::string> builtin_names();
Scenario builtin_scenario(const std::string& name, const std::map<std::string, double>& params = {});

// A builtin name or a path to a JSON file; params override the stored ones for builtins.
Scenario load_scenario(const std::string& source, const std::map<std::string, double>& params = {});
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

// Throws ValidationError when a structural invariant fails.
ScenarioCheck validate_scenario(const Scenario& s, double tol);

// Default verification tolerance, overridden by CAYLEY_FLOW_TOL.
double verification_tolerance();

Form su3_cayley_form();
Form hk_cayley_form();

}  // namespace cayley
