#pragma once

#include "cayley/torsion.hpp"

#include <string>

namespace cayley {

struct FlowRHS {
  Mat8 A;     // symmetric part plus Lambda^2_7 skew part
  Form dphi;  // A diamond phi
  Mat8 h;     // sym(A); the metric moves with velocity 2h
};

enum class RhsKind { Gradient, Harmonic, RicciHarmonic };

RhsKind parse_rhs_kind(const std::string& name);
std::string to_string(RhsKind kind);

// Everything needed to evaluate a right-hand side at one state.
struct StateGeometry {
  CayleyForm cayley;
  InvariantGeometry geo;
  TorsionData torsion;

  StateGeometry(const Form& phi, const Metric& m, const LieAlgebra& alg);
};

Mat8 ricci_raw(const Tensor3& T, const InvariantGeometry& geo);
Mat8 ricci_forms(const CayleyForm& c, const Form& t1, const Form& t5, const LieAlgebra& alg);
double scal_forms(const CayleyForm& c, const Form& t1, const Form& t5, const LieAlgebra& alg);

Mat8 t_star_t(const Tensor3& T, const Metric& m);
Mat8 t_star_t_forms(const CayleyForm& c, const Form& t1, const Form& t5);

// g(e_a _| *t5, e_b _| *t5)
Mat8 t5_square(const Form& t5, const Metric& m);
// j(sum g^{ik} (e_i _| *t5) ^ (e_k _| *t5))
Mat8 t5_quadratic_invariant(const CayleyForm& c, const Form& t5);

// Symmetric part plus the Lambda^2_7 part of the skew part.
FlowRHS normalize_rhs(const Mat8& A, const CayleyForm& c);

FlowRHS gradient_rhs_raw(const StateGeometry& s);
FlowRHS gradient_rhs_forms(const StateGeometry& s);
FlowRHS harmonic_rhs(const StateGeometry& s);
FlowRHS ricci_harmonic_rhs(const StateGeometry& s);
FlowRHS compute_rhs(RhsKind kind, const StateGeometry& s);

// d/dt T[m](a, b) along the flow generated by rhs.
Tensor3 torsion_evolution_rhs(const StateGeometry& s, const FlowRHS& rhs);

}  // namespace cayley
