#pragma once

#include "cayley/geometry.hpp"
#include "cayley/spin7.hpp"

namespace cayley {

struct TorsionData {
  Tensor3 T;    // T[m](a, b) = T_{m;ab}
  Form t1_8;    // 1-form part of d phi
  Form t5_48;   // Lambda^5_48 part of d phi, relative to the canonical form
  Form t8;      // (T_8)_j = T_{i;jk} g^{ik}
};

struct TorsionForms {
  Form t1_8;
  Form t5_48;
};

TorsionForms torsion_forms(const CayleyForm& c, const LieAlgebra& alg);

TorsionData torsion_tensor_nabla(const CayleyForm& c, const InvariantGeometry& geo);
TorsionData torsion_tensor_from_forms(const CayleyForm& c, const Form& t1, const Form& t5);

Form t8_of(const Tensor3& T, const Metric& m);
double torsion_norm2(const Tensor3& T, const Metric& m);
// g^{nm} nabla_n T_{m;jk}, as a skew matrix.
Mat8 div_T(const Tensor3& T, const InvariantGeometry& geo);
// max over m of |nabla_m phi - T_m diamond phi|.
double reconstruction_residual(const CayleyForm& c, const Tensor3& T, const InvariantGeometry& geo);
// max over m of the Lambda^2_21 part of T_m.
double lambda21_residual(const Tensor3& T, const CayleyForm& c);

// Componentwise multiple; phi -> c^4 phi, g -> c^2 g scales T by c^2.
Tensor3 scale(const Tensor3& T, double s);

}  // namespace cayley
