#pragma once

#include "cayley/dynamics.hpp"
#include "cayley/scenario.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace cayley {

nlohmann::json to_json(const Mat8& A);
nlohmann::json to_json(const Form& a, double tol = 1e-13);
nlohmann::json to_json(const AdmissibilityReport& r);
nlohmann::json to_json(const SolitonReport& r);
nlohmann::json to_json(const ProbeResult& r);

FlowState initial_state(const Scenario& s);

// Reports carry "ok"; for verify the CLI exits with 1 when it is false.
nlohmann::json report_verify(const Scenario& s, double tol);
nlohmann::json report_torsion(const Scenario& s);
nlohmann::json report_rhs(const Scenario& s, RhsKind kind);
nlohmann::json report_soliton(const Scenario& s, RhsKind kind);
// Without a family name every builtin family is probed.
nlohmann::json report_stability(const Scenario& s, const std::optional<std::string>& family, double lambda);
nlohmann::json report_reproduce(const Scenario& s);

struct IntegrateReport {
  nlohmann::json summary;
  std::string csv;
};
IntegrateReport report_integrate(const Scenario& s, const IntegrateOptions& opt, bool convergence_check = false);

// Flattens a report into "key,value" lines.
std::string flatten_csv(const nlohmann::json& j);

}  // namespace cayley
