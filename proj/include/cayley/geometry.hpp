#pragma once

#include "cayley/exterior.hpp"

#include <tuple>
#include <vector>

namespace cayley {

// Structure constants [e_i, e_j] = c^k_ij e_k, stored as c[k](i, j).
class LieAlgebra {
 public:
  LieAlgebra();
  explicit LieAlgebra(const Tensor3& c);
  // Entries (i, j, k, value) with 0-based indices; the (j, i) entry is filled by antisymmetry.
  static LieAlgebra from_sparse(const std::vector<std::tuple<int, int, int, double>>& entries);

  const Tensor3& constants() const { return c_; }
  double c(int k, int i, int j) const { return c_[k](i, j); }
  const Form& de(int i) const { return de_[i]; }

  double antisymmetry_residual() const;
  double jacobi_residual() const;
  double trace_residual() const;  // max_i |sum_k c^k_ik|
  bool unimodular(double tol = 1e-12) const { return trace_residual() < tol; }

 private:
  Tensor3 c_;
  std::array<Form, kDim> de_;
};

Form exterior_derivative(const Form& a, const LieAlgebra& alg);
Form codifferential(const Form& a, const LieAlgebra& alg, const Metric& m);

class InvariantGeometry {
 public:
  InvariantGeometry(LieAlgebra alg, Metric metric);

  const LieAlgebra& algebra() const { return alg_; }
  const Metric& metric() const { return metric_; }
  // gamma()[i](j, k) = <nabla_{e_i} e_j, e_k>
  const Tensor3& gamma() const { return gamma_; }
  // up()[i](j, q): nabla_{e_i} e_j = up()[i](j, q) e_q
  const Tensor3& up() const { return up_; }

  double compatibility_residual() const;
  double torsion_free_residual() const;

 private:
  LieAlgebra alg_;
  Metric metric_;
  Tensor3 gamma_;
  Tensor3 up_;
};

InvariantGeometry levi_civita(const LieAlgebra& alg, const Metric& m);

// Component m is nabla_{e_m} a.
std::array<Form, kDim> covariant_derivative(const Form& a, const InvariantGeometry& geo);

// Covariant derivatives of invariant tensors; the new index comes first.
Mat8 nabla(const Vec8& a, const InvariantGeometry& geo);
Tensor3 nabla(const Mat8& a, const InvariantGeometry& geo);
std::array<Tensor3, kDim> nabla(const Tensor3& a, const InvariantGeometry& geo);

// (L_v g)(e_i, e_j) for v with frame components v^i.
Mat8 lie_derivative_metric(const Vec8& v, const InvariantGeometry& geo);

// Ricci tensor from the curvature of the Levi-Civita connection.
Mat8 ricci_levi_civita(const InvariantGeometry& geo);

}  // namespace cayley
