#include "cayley/torsion.hpp"

namespace cayley {

TorsionForms torsion_forms(const CayleyForm& c, const LieAlgebra& alg) {
  Form dphi = exterior_derivative(c.canonical(), alg);
  FiveFormSplit s = decompose_5form(dphi, c);
  return {s.eta, s.rest};
}

Form t8_of(const Tensor3& T, const Metric& m) {
  Form t8(1);
  const Mat8& gi = m.inv();
  for (int j = 0; j < kDim; ++j) {
    double s = 0.0;
    for (int i = 0; i < kDim; ++i)
      for (int k = 0; k < kDim; ++k) s += T[i](j, k) * gi(i, k);
    t8.coeffs()[j] = s;
  }
  return t8;
}

TorsionData torsion_tensor_nabla(const CayleyForm& c, const InvariantGeometry& geo) {
  const Metric& m = c.metric();
  const Form& phi = c.phi();
  auto nphi = covariant_derivative(phi, geo);
  const Eigen::MatrixXd& G3 = m.gram(3);
  Eigen::MatrixXd B(56, kDim);
  for (int b = 0; b < kDim; ++b) B.col(b) = interior(Vec8::Unit(b), phi).coeffs();
  Eigen::MatrixXd GB = G3 * B;
  TorsionData out;
  Eigen::MatrixXd A(56, kDim);
  for (int k = 0; k < kDim; ++k) {
    for (int a = 0; a < kDim; ++a) A.col(a) = interior(Vec8::Unit(a), nphi[k]).coeffs();
    // (1/96) full contraction of three indices = (6/96) <e_a _| nabla phi, e_b _| phi>
    out.T[k] = (A.transpose() * GB) / 16.0;
  }
  TorsionForms tf = torsion_forms(c, geo.algebra());
  out.t1_8 = tf.t1_8;
  out.t5_48 = tf.t5_48;
  out.t8 = t8_of(out.T, m);
  return out;
}

TorsionData torsion_tensor_from_forms(const CayleyForm& c, const Form& t1, const Form& t5) {
  const Metric& m = c.metric();
  Form phi = c.canonical();
  Form tc = hodge_star(wedge(t1, phi), m) * (-1.0 / 6.0) + hodge_star(t5, m);
  TorsionData out;
  for (int k = 0; k < kDim; ++k) out.T[k] = form2_to_matrix(pi2_7(interior(Vec8::Unit(k), tc), c)) * 0.5;
  out.t1_8 = t1;
  out.t5_48 = t5;
  out.t8 = t8_of(out.T, m);
  return out;
}

double torsion_norm2(const Tensor3& T, const Metric& m) {
  const Mat8& gi = m.inv();
  std::array<Mat8, kDim> raised;
  for (int n = 0; n < kDim; ++n) raised[n] = gi * T[n] * gi;
  double s = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int n = 0; n < kDim; ++n)
      if (gi(a, n) != 0.0) s += gi(a, n) * T[a].cwiseProduct(raised[n]).sum();
  return s;
}

Mat8 div_T(const Tensor3& T, const InvariantGeometry& geo) {
  auto nT = nabla(T, geo);
  const Mat8& gi = geo.metric().inv();
  Mat8 out = Mat8::Zero();
  for (int n = 0; n < kDim; ++n)
    for (int k = 0; k < kDim; ++k)
      if (gi(n, k) != 0.0) out += gi(n, k) * nT[n][k];
  return out;
}

double reconstruction_residual(const CayleyForm& c, const Tensor3& T, const InvariantGeometry& geo) {
  auto nphi = covariant_derivative(c.phi(), geo);
  double r = 0.0;
  for (int k = 0; k < kDim; ++k) r = std::max(r, (nphi[k] - diamond(T[k], c.phi(), c.metric())).max_abs());
  return r;
}

double lambda21_residual(const Tensor3& T, const CayleyForm& c) {
  double r = 0.0;
  for (const auto& t : T) r = std::max(r, pi2_21(matrix_to_form2(t), c).max_abs());
  return r;
}

Tensor3 scale(const Tensor3& T, double s) {
  Tensor3 out;
  for (int k = 0; k < kDim; ++k) out[k] = T[k] * s;
  return out;
}

}  // namespace cayley
