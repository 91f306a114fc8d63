#include "cayley/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using cayley::RhsKind;
using nlohmann::json;

struct Options {
  std::string scenario;
  std::vector<std::string> params;
  std::string rhs = "gradient";
  double t_end = 1.0;
  double dt = 1e-2;
  std::optional<double> lambda;
  std::optional<std::string> family;
  std::string out;
  std::string format = "json";
  std::string csv;
  std::string save;
  bool convergence = false;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw cayley::ValidationError("--param: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw cayley::ValidationError("--param " + key + ": not a number: '" + value + "'");
    out[key] = v;
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw cayley::ValidationError("--out: cannot write '" + path + "'");
  f << text;
}

std::string render(const json& j, const std::string& format) {
  return format == "csv" ? cayley::flatten_csv(j) : j.dump(2) + "\n";
}

cayley::Scenario scenario_from(const Options& o) {
  if (o.scenario.empty()) throw cayley::ValidationError("no scenario given (builtin su3, hk-t5, torus or a JSON path)");
  cayley::Scenario s = cayley::load_scenario(o.scenario, parse_params(o.params));
  cayley::validate_scenario(s, cayley::verification_tolerance());
  if (!o.save.empty()) emit(cayley::scenario_to_json(s).dump(2) + "\n", o.save);
  return s;
}

void add_common(CLI::App* cmd, Options& o) {
  auto* pos = cmd->add_option("SCENARIO", o.scenario, "builtin name (su3, hk-t5, torus) or scenario JSON path");
  auto* opt = cmd->add_option("-s,--scenario", o.scenario, "builtin name or scenario JSON path");
  pos->excludes(opt);
  cmd->add_option("--param", o.params, "scenario parameter key=value, e.g. k=2");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--save-scenario", o.save, "write the validated scenario as JSON");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_rhs(CLI::App* cmd, Options& o) {
  cmd->add_option("--rhs", o.rhs, "flow right-hand side")->check(CLI::IsMember({"gradient", "harmonic", "ricci-harmonic"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin(7)-structure flows on homogeneous 8-manifolds", "cayley-flow"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "check scenario invariants and identities");
  add_common(verify, o);
  auto* torsion = app.add_subcommand("torsion", "torsion forms and torsion tensor");
  add_common(torsion, o);
  auto* rhs = app.add_subcommand("rhs", "flow right-hand side at the initial state");
  add_common(rhs, o);
  add_rhs(rhs, o);
  auto* integrate = app.add_subcommand("integrate", "integrate a flow with RK4");
  add_common(integrate, o);
  add_rhs(integrate, o);
  integrate->add_option("--t-end", o.t_end, "final time");
  integrate->add_option("--dt", o.dt, "time step")->check(CLI::PositiveNumber);
  integrate->add_option("--lambda", o.lambda, "renormalise by -lambda phi");
  integrate->add_option("--csv", o.csv, "also write the trajectory CSV to this path");
  integrate->add_flag("--convergence", o.convergence, "compare against a run with dt/2");
  auto* soliton = app.add_subcommand("soliton", "test A.phi = lambda phi");
  add_common(soliton, o);
  add_rhs(soliton, o);
  auto* stability = app.add_subcommand("stability", "linear stability probe along deformation families");
  add_common(stability, o);
  stability->add_option("--family", o.family, "family name (default: all)");
  stability->add_option("--lambda", o.lambda, "renormalisation constant (default -3)");
  auto* reproduce = app.add_subcommand("reproduce", "golden table for a scenario (default: su3 and hk-t5)");
  add_common(reproduce, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (verify->parsed()) {
      json r = cayley::report_verify(scenario_from(o), cayley::verification_tolerance());
      emit(render(r, o.format), o.out);
      return r["ok"].get<bool>() ? 0 : 1;
    }
    if (torsion->parsed()) {
      emit(render(cayley::report_torsion(scenario_from(o)), o.format), o.out);
      return 0;
    }
    if (rhs->parsed()) {
      emit(render(cayley::report_rhs(scenario_from(o), cayley::parse_rhs_kind(o.rhs)), o.format), o.out);
      return 0;
    }
    if (integrate->parsed()) {
      cayley::IntegrateOptions io;
      io.kind = cayley::parse_rhs_kind(o.rhs);
      io.t_end = o.t_end;
      io.dt = o.dt;
      io.lambda = o.lambda.value_or(0.0);
      auto r = cayley::report_integrate(scenario_from(o), io, o.convergence);
      emit(o.format == "csv" ? r.csv : r.summary.dump(2) + "\n", o.out);
      if (!o.csv.empty()) emit(r.csv, o.csv);
      return 0;
    }
    if (soliton->parsed()) {
      emit(render(cayley::report_soliton(scenario_from(o), cayley::parse_rhs_kind(o.rhs)), o.format), o.out);
      return 0;
    }
    if (stability->parsed()) {
      emit(render(cayley::report_stability(scenario_from(o), o.family, o.lambda.value_or(-3.0)), o.format), o.out);
      return 0;
    }
    if (reproduce->parsed()) {
      json r;
      if (!o.scenario.empty()) {
        r = cayley::report_reproduce(scenario_from(o));
      } else {
        for (const char* name : {"su3", "hk-t5"}) {
          Options one = o;
          one.scenario = name;
          r[name] = cayley::report_reproduce(scenario_from(one));
        }
      }
      emit(render(r, o.format), o.out);
      return 0;
    }
  } catch (const cayley::NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << " (last accepted t = " << e.last_state().time << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
