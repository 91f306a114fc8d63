#include "cayley/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace cayley {

using nlohmann::json;

json to_json(const Mat8& A) {
  json out = json::array();
  for (int a = 0; a < kDim; ++a) {
    json row = json::array();
    for (int b = 0; b < kDim; ++b) row.push_back(A(a, b));
    out.push_back(row);
  }
  return out;
}

json to_json(const Form& a, double tol) {
  json out = json::object();
  for (const auto& [idx, v] : a.terms(tol)) out[idx.empty() ? "1" : idx] = v;
  return out;
}

json to_json(const AdmissibilityReport& r) {
  return {{"pass", r.pass},
          {"borderline", r.borderline},
          {"chirality", r.chirality},
          {"self_dual_residual", r.self_dual_residual},
          {"volume_residual", r.volume_residual},
          {"norm_residual", r.norm_residual},
          {"spectrum_residual", r.spectrum_residual}};
}

json to_json(const SolitonReport& r) {
  return {{"is_soliton_Y0", r.is_soliton}, {"lambda", r.lambda}, {"residual", r.residual}, {"kind", r.kind}};
}

json to_json(const ProbeResult& r) {
  return {{"inner", r.inner}, {"rate", r.rate}, {"step", r.step}, {"converged", r.converged}, {"verdict", r.verdict}};
}

FlowState initial_state(const Scenario& s) { return {s.phi(), s.metric_object(), 0.0}; }

namespace {

json check(double value, double tol) { return {{"value", value}, {"tol", tol}, {"pass", value <= tol}}; }

double scale_of(const Mat8& A) { return 1.0 + max_abs(A); }

Vec8 eigenvalues(const Metric& m) { return Eigen::SelfAdjointEigenSolver<Mat8>(m.g()).eigenvalues(); }

json vector_json(const Vec8& v) {
  json out = json::array();
  for (int i = 0; i < kDim; ++i) out.push_back(v[i]);
  return out;
}

json tensor_json(const Tensor3& T) {
  json out = json::array();
  for (const auto& t : T) out.push_back(to_json(t));
  return out;
}

double scalar_curvature(const Mat8& ric, const Metric& m) { return (m.inv() * ric).trace(); }

Tensor3 difference(const Tensor3& a, const Tensor3& b) {
  Tensor3 out;
  for (int k = 0; k < kDim; ++k) out[k] = a[k] - b[k];
  return out;
}

}  // namespace

json report_verify(const Scenario& s, double tol) {
  json r;
  r["command"] = "verify";
  r["scenario"] = s.name;
  r["tolerance"] = tol;
  ScenarioCheck sc = validate_scenario(s, tol);
  LieAlgebra alg = s.algebra();
  StateGeometry sg(s.phi(), s.metric_object(), alg);
  const CayleyForm& c = sg.cayley;
  const Metric& m = c.metric();
  const TorsionData& td = sg.torsion;
  json checks;
  checks["antisymmetry"] = check(sc.antisymmetry_residual, 1e-12);
  checks["jacobi"] = check(sc.jacobi_residual, 1e-10);
  checks["admissible"] = {{"pass", sc.admissibility.pass}, {"detail", to_json(sc.admissibility)}};
  Form dphi = exterior_derivative(c.phi(), alg);
  checks["d_squared"] = check(exterior_derivative(dphi, alg).max_abs(), tol);
  checks["levi_civita"] = check(std::max(sg.geo.compatibility_residual(), sg.geo.torsion_free_residual()), tol);
  checks["torsion_reconstruction"] = check(reconstruction_residual(c, td.T, sg.geo), tol);
  checks["torsion_lambda2_21"] = check(lambda21_residual(td.T, c), tol);
  TorsionData tf = torsion_tensor_from_forms(c, td.t1_8, td.t5_48);
  checks["torsion_routes"] = check(max_abs(difference(td.T, tf.T)), tol);
  checks["t8_relation"] = check((td.t8 + td.t1_8 * (7.0 / 16.0)).max_abs(), tol);
  double n2 = torsion_norm2(td.T, m);
  checks["torsion_norm_identity"] =
      check(std::abs(n2 - (7.0 / 32.0 * norm2(td.t1_8, m) + 0.25 * norm2(td.t5_48, m))), tol * (1 + n2));
  Mat8 ric = ricci_raw(td.T, sg.geo);
  checks["ricci_levi_civita"] = check(max_abs(Mat8(ric - ricci_levi_civita(sg.geo))), tol * scale_of(ric));
  checks["ricci_forms"] = check(max_abs(Mat8(ric - ricci_forms(c, td.t1_8, td.t5_48, alg))), tol * scale_of(ric));
  checks["scalar_curvature"] =
      check(std::abs(scalar_curvature(ric, m) - scal_forms(c, td.t1_8, td.t5_48, alg)), tol * scale_of(ric));
  FlowRHS raw = gradient_rhs_raw(sg);
  checks["rhs_routes"] = check(max_abs(Mat8(raw.A - gradient_rhs_forms(sg).A)), tol * scale_of(raw.A));
  checks["div_T_lambda2_7"] = check(max_abs(Mat8(div_T(td.T, sg.geo) - pi2_7_matrix(div_T(td.T, sg.geo), c))), tol);
  bool ok = true;
  for (const auto& [name, v] : checks.items()) ok = ok && v["pass"].get<bool>();
  r["checks"] = checks;
  r["unimodular"] = sc.unimodular;
  r["chirality"] = c.chirality();
  r["ok"] = ok;
  return r;
}

json report_torsion(const Scenario& s) {
  LieAlgebra alg = s.algebra();
  StateGeometry sg(s.phi(), s.metric_object(), alg);
  const Metric& m = sg.cayley.metric();
  const TorsionData& td = sg.torsion;
  json r;
  r["command"] = "torsion";
  r["scenario"] = s.name;
  Form dphi = exterior_derivative(s.phi(), alg);
  r["dphi"] = to_json(dphi);
  r["star_dphi"] = to_json(hodge_star(dphi, m));
  r["T1_8"] = to_json(td.t1_8);
  r["T5_48"] = to_json(td.t5_48);
  r["T8"] = to_json(td.t8);
  r["T"] = tensor_json(td.T);
  r["T_norm2"] = torsion_norm2(td.T, m);
  r["T1_8_norm2"] = norm2(td.t1_8, m);
  r["T5_48_norm2"] = norm2(td.t5_48, m);
  r["div_T"] = to_json(div_T(td.T, sg.geo));
  r["balanced"] = td.t1_8.max_abs() < 1e-12;
  r["locally_conformally_parallel"] = td.t5_48.max_abs() < 1e-12;
  r["ok"] = true;
  return r;
}

json report_rhs(const Scenario& s, RhsKind kind) {
  LieAlgebra alg = s.algebra();
  StateGeometry sg(s.phi(), s.metric_object(), alg);
  FlowRHS rhs = compute_rhs(kind, sg);
  json r;
  r["command"] = "rhs";
  r["scenario"] = s.name;
  r["rhs"] = to_string(kind);
  r["A"] = to_json(rhs.A);
  r["h"] = to_json(rhs.h);
  r["dphi"] = to_json(rhs.dphi);
  if (kind == RhsKind::Gradient) {
    const Metric& m = sg.cayley.metric();
    const Tensor3& T = sg.torsion.T;
    r["terms"] = {{"ricci", to_json(ricci_raw(T, sg.geo))},
                  {"lie_T8_g", to_json(lie_derivative_metric(m.inv() * Vec8(sg.torsion.t8.coeffs()), sg.geo))},
                  {"t_star_t", to_json(t_star_t(T, m))},
                  {"T_norm2", torsion_norm2(T, m)},
                  {"div_T", to_json(div_T(T, sg.geo))}};
    r["forms_route_difference"] = max_abs(Mat8(rhs.A - gradient_rhs_forms(sg).A));
  }
  r["ok"] = true;
  return r;
}

json report_soliton(const Scenario& s, RhsKind kind) {
  json r = to_json(soliton_check(initial_state(s), s.algebra(), kind));
  r["command"] = "soliton";
  r["scenario"] = s.name;
  r["rhs"] = to_string(kind);
  r["ok"] = true;
  return r;
}

json report_stability(const Scenario& s, const std::optional<std::string>& family, double lambda) {
  FlowState base = initial_state(s);
  LieAlgebra alg = s.algebra();
  std::vector<DeformationFamily> fams;
  if (family)
    fams.push_back(find_family(base, *family));
  else
    fams = builtin_families(base);
  json r;
  r["command"] = "stability";
  r["scenario"] = s.name;
  r["lambda"] = lambda;
  json probes = json::object();
  for (const auto& f : fams) {
    json p = to_json(stability_probe(base, f, alg, lambda));
    p["description"] = f.description;
    probes[f.name] = p;
  }
  if (family) {
    r["family"] = *family;
    for (const auto& [k, v] : probes[*family].items()) r[k] = v;
  } else {
    r["families"] = probes;
  }
  r["ok"] = true;
  return r;
}

json report_reproduce(const Scenario& s) {
  LieAlgebra alg = s.algebra();
  StateGeometry sg(s.phi(), s.metric_object(), alg);
  const Metric& m = sg.cayley.metric();
  const TorsionData& td = sg.torsion;
  FlowRHS rhs = gradient_rhs_raw(sg);
  Mat8 ric = ricci_raw(td.T, sg.geo);
  json r;
  r["command"] = "reproduce";
  r["scenario"] = s.name;
  r["Ric"] = to_json(ric);
  r["Scal"] = scalar_curvature(ric, m);
  r["T_star_T"] = to_json(t_star_t(td.T, m));
  r["T_norm2"] = torsion_norm2(td.T, m);
  r["L_T8_g"] = to_json(lie_derivative_metric(m.inv() * Vec8(td.t8.coeffs()), sg.geo));
  r["div_T"] = to_json(div_T(td.T, sg.geo));
  r["A"] = to_json(rhs.A);
  r["A_phi"] = to_json(rhs.dphi);
  r["T1_8"] = to_json(td.t1_8);
  r["star_dphi"] = to_json(hodge_star(exterior_derivative(s.phi(), alg), m));
  FlowState base = initial_state(s);
  r["soliton"] = {{"gradient", to_json(soliton_check(base, alg, RhsKind::Gradient))},
                  {"ricci-harmonic", to_json(soliton_check(base, alg, RhsKind::RicciHarmonic))},
                  {"harmonic", to_json(soliton_check(base, alg, RhsKind::Harmonic))}};
  if (s.name == "su3") {
    json st = json::object();
    for (const auto& f : builtin_families(base)) st[f.name] = to_json(stability_probe(base, f, alg, -3.0));
    r["stability_lambda"] = -3.0;
    r["stability"] = st;
  }
  r["ok"] = true;
  return r;
}

IntegrateReport report_integrate(const Scenario& s, const IntegrateOptions& opt, bool convergence_check) {
  LieAlgebra alg = s.algebra();
  FlowState s0 = initial_state(s);
  Trajectory traj = integrate(s0, alg, opt);
  std::vector<std::string> blades;
  std::vector<int> positions;
  for (int n = 0; n < s0.phi.coeffs().size(); ++n)
    if (s0.phi.coeffs()[n] != 0.0) {
      blades.push_back(basis::label(basis::mask(4, n)));
      positions.push_back(n);
    }
  std::ostringstream csv;
  csv << std::setprecision(17) << "t";
  for (const auto& b : blades) csv << ",phi_" << b;
  for (int i = 0; i < kDim; ++i) csv << ",g_eig_" << i + 1;
  csv << ",T_norm2,scal,lambda_residual\n";
  for (const auto& st : traj) {
    StateGeometry sg(st.phi, st.metric, alg);
    FlowRHS rhs = compute_rhs(opt.kind, sg);
    double lam = inner(rhs.dphi, st.phi, st.metric) / norm2(st.phi, st.metric);
    double res = std::sqrt(std::max(0.0, norm2(rhs.dphi - st.phi * lam, st.metric)));
    csv << st.time;
    for (int n : positions) csv << "," << st.phi.coeffs()[n];
    Vec8 ev = eigenvalues(st.metric);
    for (int i = 0; i < kDim; ++i) csv << "," << ev[i];
    csv << "," << torsion_norm2(sg.torsion.T, st.metric) << "," << scalar_curvature(ricci_raw(sg.torsion.T, sg.geo), st.metric)
        << "," << res << "\n";
  }
  const FlowState& last = traj.back();
  json r;
  r["command"] = "integrate";
  r["scenario"] = s.name;
  r["rhs"] = to_string(opt.kind);
  r["lambda"] = opt.lambda;
  r["t_end"] = last.time;
  r["dt"] = opt.dt;
  r["steps"] = traj.size() - 1;
  r["final_phi"] = to_json(last.phi);
  r["final_metric"] = to_json(last.metric.g());
  r["final_metric_eigenvalues"] = vector_json(eigenvalues(last.metric));
  if (opt.kind == RhsKind::Gradient && opt.lambda == 0.0 && (s.name == "su3" || s.name == "hk-t5")) {
    FlowState cf = s.name == "su3" ? su3_closed_form(s0, last.time) : hk_closed_form(s0, s.params.at("k"), last.time);
    double rel = 0.0;
    for (int n : positions) {
      double want = cf.phi.coeffs()[n];
      rel = std::max(rel, std::abs(last.phi.coeffs()[n] - want) / std::max(std::abs(want), 1e-300));
    }
    r["closed_form_relative_error"] = rel;
  }
  if (convergence_check) r["step_halving_error"] = step_halving_error(s0, alg, opt);
  r["ok"] = true;
  return {r, csv.str()};
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t n = 0; n < j.size(); ++n) flatten(j[n], prefix + "[" + std::to_string(n) + "]", os);
  } else {
    os << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string flatten_csv(const json& j) {
  std::ostringstream os;
  os << "key,value\n";
  flatten(j, "", os);
  return os.str();
}

}  // namespace cayley
