#pragma once

#include "cayley/flow.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

struct FlowState {
  Form phi = Form(4);
  Metric metric;
  double time = 0.0;
};

class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, FlowState last) : std::runtime_error(what), last_(std::move(last)) {}
  const FlowState& last_state() const { return last_; }

 private:
  FlowState last_;
};

struct IntegrateOptions {
  RhsKind kind = RhsKind::Gradient;
  double t_end = 1.0;
  double dt = 1e-2;
  // Renormalised flow A - (lambda/4) g, i.e. d phi = A.phi - lambda phi.
  double lambda = 0.0;
  double admissibility_tol = 1e-6;
  double min_eigenvalue = 1e-6;
};

using Trajectory = std::vector<FlowState>;

// Classical RK4 on d phi/dt = A.phi, dg/dt = 2 sym(A). Throws NumericalAbort.
Trajectory integrate(const FlowState& s0, const LieAlgebra& alg, const IntegrateOptions& opt);
// Max coefficient difference of the final phi between dt and dt/2.
double step_halving_error(const FlowState& s0, const LieAlgebra& alg, const IntegrateOptions& opt);

struct SolitonReport {
  bool is_soliton = false;
  double lambda = 0.0;
  double residual = 0.0;
  std::string kind;  // shrinking, steady, expanding
};

SolitonReport soliton_check(const FlowState& s, const LieAlgebra& alg, RhsKind kind = RhsKind::Gradient);
Form renormalised_rhs(const FlowState& s, const LieAlgebra& alg, double lambda, RhsKind kind = RhsKind::Gradient);

struct DeformationFamily {
  std::string name;
  std::string description;
  std::function<FlowState(double)> at;
  Form direction;  // d/ds phi at s = 0
};

struct ProbeResult {
  double inner = 0.0;  // <d/ds V, Psi0>
  double rate = 0.0;   // 2 <d/ds V, Psi0>
  double step = 0.0;
  bool converged = false;
  std::string verdict;  // unstable, stable, zero mode
};

ProbeResult stability_probe(const FlowState& base, const DeformationFamily& fam, const LieAlgebra& alg, double lambda,
                            double h0 = 1e-4);

// Families at the su3 structure; throws std::invalid_argument for any other base.
std::vector<DeformationFamily> builtin_families(const FlowState& base);
DeformationFamily find_family(const FlowState& base, const std::string& name);

FlowState rescale(const FlowState& s, double c);

// Closed-form solutions of the gradient flow.
FlowState su3_closed_form(const FlowState& s0, double t);
FlowState hk_closed_form(const FlowState& s0, double k, double t);

}  // namespace cayley
