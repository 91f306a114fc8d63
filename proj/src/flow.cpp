#include "cayley/flow.hpp"

#include <stdexcept>

namespace cayley {

RhsKind parse_rhs_kind(const std::string& name) {
  if (name == "gradient") return RhsKind::Gradient;
  if (name == "harmonic") return RhsKind::Harmonic;
  if (name == "ricci-harmonic") return RhsKind::RicciHarmonic;
  throw std::invalid_argument("unknown rhs '" + name + "' (gradient, harmonic, ricci-harmonic)");
}

std::string to_string(RhsKind kind) {
  switch (kind) {
    case RhsKind::Gradient:
      return "gradient";
    case RhsKind::Harmonic:
      return "harmonic";
    case RhsKind::RicciHarmonic:
      return "ricci-harmonic";
  }
  return "?";
}

StateGeometry::StateGeometry(const Form& phi, const Metric& m, const LieAlgebra& alg)
    : cayley(phi, m), geo(levi_civita(alg, m)), torsion(torsion_tensor_nabla(cayley, geo)) {}

namespace {

// W_q = g^{ap} T_{a;qp}
Vec8 trace_vector(const Tensor3& T, const Mat8& gi) {
  Vec8 w = Vec8::Zero();
  for (int a = 0; a < kDim; ++a) w += (T[a] * gi).col(a);
  return w;
}

Vec8 raise(const Form& v, const Metric& m) { return m.inv() * Vec8(v.coeffs()); }

}  // namespace

Mat8 ricci_raw(const Tensor3& T, const InvariantGeometry& geo) {
  const Mat8& gi = geo.metric().inv();
  Vec8 t8 = t8_of(T, geo.metric()).coeffs();
  Mat8 nt8 = nabla(t8, geo);
  auto nT = nabla(T, geo);
  Vec8 w = trace_vector(T, gi);
  Mat8 R = 4.0 * nt8;
  for (int i = 0; i < kDim; ++i) {
    Vec8 second = Vec8::Zero();
    for (int a = 0; a < kDim; ++a) second += (nT[a][i] * gi).col(a);
    Vec8 third = T[i] * gi * w;
    Vec8 fourth = Vec8::Zero();
    for (int a = 0; a < kDim; ++a) fourth += (T[a] * gi * T[i] * gi).col(a);
    R.row(i) += (-4.0 * second - 8.0 * third + 8.0 * fourth).transpose();
  }
  return R;
}

Mat8 t5_square(const Form& t5, const Metric& m) {
  Form s = hodge_star(t5, m);
  Eigen::MatrixXd B(28, kDim);
  for (int a = 0; a < kDim; ++a) B.col(a) = interior(Vec8::Unit(a), s).coeffs();
  return B.transpose() * m.gram(2) * B;
}

Mat8 t5_quadratic_invariant(const CayleyForm& c, const Form& t5) {
  const Metric& m = c.metric();
  Form s = hodge_star(t5, m);
  std::array<Form, kDim> parts;
  for (int i = 0; i < kDim; ++i) parts[i] = interior(Vec8::Unit(i), s);
  Form q(4);
  for (int i = 0; i < kDim; ++i)
    for (int k = 0; k < kDim; ++k)
      if (m.inv()(i, k) != 0.0) q += wedge(parts[i], parts[k]) * m.inv()(i, k);
  return j_map(q, c);
}

namespace {

struct FormTerms {
  double dl1, n1, n5;
  Form dt1phi, dt5, t1_st5, st1phi_t1;
  Mat8 S;
};

FormTerms form_terms(const CayleyForm& c, const Form& t1, const Form& t5, const LieAlgebra& alg) {
  const Metric& m = c.metric();
  Form phi = c.canonical();
  Form t1phi = wedge(t1, phi);
  FormTerms f;
  f.dl1 = codifferential(t1, alg, m).coeffs()[0];
  f.n1 = norm2(t1, m);
  f.n5 = norm2(t5, m);
  f.dt1phi = codifferential(t1phi, alg, m);
  f.dt5 = codifferential(t5, alg, m);
  f.t1_st5 = wedge(t1, hodge_star(t5, m));
  f.st1phi_t1 = wedge(hodge_star(t1phi, m), t1);
  f.S = t5_square(t5, m);
  return f;
}

}  // namespace

Mat8 ricci_forms(const CayleyForm& c, const Form& t1, const Form& t5, const LieAlgebra& alg) {
  FormTerms f = form_terms(c, t1, t5, alg);
  Form q = f.dt1phi * -3.0 + f.dt5 * 4.0 + f.t1_st5 * 1.0 + f.st1phi_t1 * -2.25;
  return (5.0 / 8.0 * f.dl1 + 3.0 / 8.0 * f.n1 - 2.0 / 7.0 * f.n5) * c.metric().g() + j_map(q, c) + 0.5 * f.S;
}

double scal_forms(const CayleyForm& c, const Form& t1, const Form& t5, const LieAlgebra& alg) {
  const Metric& m = c.metric();
  return 3.5 * codifferential(t1, alg, m).coeffs()[0] + 21.0 / 8.0 * norm2(t1, m) - 0.5 * norm2(t5, m);
}

Mat8 t_star_t(const Tensor3& T, const Metric& m) {
  const Mat8& gi = m.inv();
  Vec8 w = trace_vector(T, gi);
  std::array<Mat8, kDim> Tg;
  for (int b = 0; b < kDim; ++b) Tg[b] = T[b] * gi;
  Mat8 t1, t3, t5;
  for (int j = 0; j < kDim; ++j) {
    Mat8 right = T[j] * gi;
    Vec8 col = Vec8::Zero();
    for (int b = 0; b < kDim; ++b) col += (Tg[b] * right).col(b);
    t1.col(j) = col;
    t3.col(j) = T[j] * gi * w;
  }
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) t5(i, j) = T[i].cwiseProduct(gi * T[j] * gi).sum();
  return 4.0 * (t1 + t1.transpose()) - 4.0 * (t3 + t3.transpose()) + 2.0 * t5;
}

Mat8 t_star_t_forms(const CayleyForm& c, const Form& t1, const Form& t5) {
  const Metric& m = c.metric();
  Form t1phi = wedge(t1, c.canonical());
  Form q = wedge(t1, hodge_star(t5, m)) * -7.0 + wedge(hodge_star(t1phi, m), t1) * (7.0 / 8.0);
  return 7.0 / 16.0 * norm2(t1, m) * m.g() + j_map(q, c);
}

FlowRHS normalize_rhs(const Mat8& A, const CayleyForm& c) {
  FlowRHS r;
  r.h = sym(A);
  r.A = r.h + pi2_7_matrix(skew(A), c);
  r.dphi = diamond(r.A, c.phi(), c.metric());
  return r;
}

FlowRHS gradient_rhs_raw(const StateGeometry& s) {
  const Tensor3& T = s.torsion.T;
  const Metric& m = s.cayley.metric();
  Mat8 A = -ricci_raw(T, s.geo) + 2.0 * lie_derivative_metric(raise(s.torsion.t8, m), s.geo) + t_star_t(T, m) -
           torsion_norm2(T, m) * m.g() + 2.0 * div_T(T, s.geo);
  return normalize_rhs(A, s.cayley);
}

FlowRHS gradient_rhs_forms(const StateGeometry& s) {
  const CayleyForm& c = s.cayley;
  const LieAlgebra& alg = s.geo.algebra();
  const Form& t1 = s.torsion.t1_8;
  const Form& t5 = s.torsion.t5_48;
  FormTerms f = form_terms(c, t1, t5, alg);
  Form q = f.dt1phi * -0.5 + f.dt5 * -4.0 + f.t1_st5 * -4.5 + f.st1phi_t1 * -0.375;
  Mat8 sym_part = (-3.0 / 16.0 * f.dl1 - 5.0 / 32.0 * f.n1 + 1.0 / 28.0 * f.n5) * c.metric().g() + j_map(q, c) -
                  0.5 * f.S;
  const Metric& m = c.metric();
  Form skew_form = pi2_7(exterior_derivative(t1, alg), c) * 3.5 + pi2_7(hodge_star(wedge(t1, t5), m), c) * -1.75;
  return normalize_rhs(sym_part + form2_to_matrix(skew_form), c);
}

FlowRHS harmonic_rhs(const StateGeometry& s) { return normalize_rhs(div_T(s.torsion.T, s.geo), s.cayley); }

FlowRHS ricci_harmonic_rhs(const StateGeometry& s) {
  return normalize_rhs(-ricci_raw(s.torsion.T, s.geo) + div_T(s.torsion.T, s.geo), s.cayley);
}

FlowRHS compute_rhs(RhsKind kind, const StateGeometry& s) {
  switch (kind) {
    case RhsKind::Gradient:
      return gradient_rhs_raw(s);
    case RhsKind::Harmonic:
      return harmonic_rhs(s);
    case RhsKind::RicciHarmonic:
      return ricci_harmonic_rhs(s);
  }
  throw std::logic_error("unknown rhs kind");
}

Tensor3 torsion_evolution_rhs(const StateGeometry& s, const FlowRHS& rhs) {
  const Tensor3& T = s.torsion.T;
  const Mat8& gi = s.cayley.metric().inv();
  Mat8 X = rhs.A - rhs.h;
  Tensor3 nh = nabla(rhs.h, s.geo);
  Tensor3 nX = nabla(X, s.geo);
  Mat8 Ag = rhs.A * gi;
  Tensor3 out;
  for (int mi = 0; mi < kDim; ++mi) {
    Mat8 lin = Ag * T[mi];
    lin -= lin.transpose().eval();
    // inner(a, b) = nabla_b h_{a m} - nabla_a h_{b m} + nabla_m X_{ab}
    Mat8 inner = nX[mi];
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b) inner(a, b) += nh[b](a, mi) - nh[a](b, mi);
    out[mi] = lin + pi2_7_matrix(inner, s.cayley);
  }
  return out;
}

}  // namespace cayley
