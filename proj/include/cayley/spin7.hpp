#pragma once

#include "cayley/exterior.hpp"

#include <memory>

namespace cayley {

// A 4-form together with the metric it is declared to induce. The chirality
// is +1 when alpha -> *(phi ^ alpha) has eigenvalue 3 on a 7-dimensional
// subspace and -1 when phi is minus such a form; projections use
// chirality * phi so that both conventions give the same splittings.
class CayleyForm {
 public:
  CayleyForm(Form phi, Metric metric);

  const Form& phi() const { return phi_; }
  const Metric& metric() const { return metric_; }
  int chirality() const { return chirality_; }
  Form canonical() const { return phi_ * double(chirality_); }

  // alpha -> *(phi ^ alpha) on 2-forms, as a 28x28 matrix on coefficients.
  const Eigen::MatrixXd& wedge_operator() const;

 private:
  Form phi_;
  Metric metric_;
  int chirality_;
  std::shared_ptr<Eigen::MatrixXd> op_;
};

struct AdmissibilityReport {
  bool pass = false;
  bool borderline = false;
  int chirality = 1;
  double self_dual_residual = 0;
  double volume_residual = 0;
  double spectrum_residual = 0;
  double norm_residual = 0;
  std::vector<double> eigenvalues;
};

Form reference_cayley_form();
CayleyForm reference_cayley();
AdmissibilityReport check_admissible(const CayleyForm& c, double tol = 1e-10);

enum class Component { L2_7, L2_21, L3_8, L3_48, L4_1, L4_7, L4_27, L4_35 };

int component_degree(Component which);
// Matrix of the projection on blade coefficients.
Eigen::MatrixXd projector(Component which, const CayleyForm& c);
Form project(Component which, const Form& a, const CayleyForm& c);

Form pi2_7(const Form& a, const CayleyForm& c);
Form pi2_21(const Form& a, const CayleyForm& c);
Form pi3_8(const Form& a, const CayleyForm& c);
Form pi3_48(const Form& a, const CayleyForm& c);
Form pi4_1(const Form& a, const CayleyForm& c);
Form pi4_7(const Form& a, const CayleyForm& c);
Form pi4_27(const Form& a, const CayleyForm& c);
Form pi4_35(const Form& a, const CayleyForm& c);

// Projects the skew matrix X, viewed as a 2-form, onto Lambda^2_7.
Mat8 pi2_7_matrix(const Mat8& X, const CayleyForm& c);

struct FiveFormSplit {
  Form eta;   // 1-form with s = eta ^ phi + rest
  Form rest;  // in Lambda^5_48
};
FiveFormSplit decompose_5form(const Form& s, const CayleyForm& c);

Form diamond(const Mat8& A, const Form& phi, const Metric& m);

// i(h) = 2 sum h_ab e^a ^ *(e^b ^ phi); j is its inverse on Lambda^4_1 + Lambda^4_35,
// extended by zero.
Form i_map(const Mat8& h, const CayleyForm& c);
Mat8 j_map(const Form& a, const CayleyForm& c);

}  // namespace cayley
