#include "cayley/spin7.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cayley {

namespace {

Eigen::MatrixXd wedge_operator_matrix(const Form& phi, const Metric& m) {
  Eigen::MatrixXd M(28, 28);
  for (int n = 0; n < 28; ++n) {
    Form e(2);
    e.coeffs()[n] = 1.0;
    M.col(n) = hodge_star(wedge(phi, e), m).coeffs();
  }
  return M;
}

// Projector onto the span of the columns of B, orthogonal for the Gram matrix G.
Eigen::MatrixXd span_projector(const Eigen::MatrixXd& B, const Eigen::MatrixXd& G) {
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd W = L.transpose() * B;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  double cut = 1e-10 * (s.size() ? s[0] : 0.0);
  while (r < s.size() && s[r] > cut) ++r;
  Eigen::MatrixXd U = svd.matrixU().leftCols(r);
  Eigen::MatrixXd Pe = U * U.transpose();
  Eigen::MatrixXd LinvT = L.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(L.rows(), L.cols()));
  return LinvT * Pe * L.transpose();
}

void require_degree(const Form& a, int k) {
  if (a.degree() != k) throw std::invalid_argument("expected a " + std::to_string(k) + "-form");
}

std::vector<std::pair<int, int>> sym_pairs() {
  std::vector<std::pair<int, int>> p;
  for (int a = 0; a < kDim; ++a)
    for (int b = a; b < kDim; ++b) p.emplace_back(a, b);
  return p;
}

Eigen::MatrixXd i_matrix(const CayleyForm& c) {
  Form phi = c.canonical();
  std::array<Form, kDim> star_e;
  for (int b = 0; b < kDim; ++b) star_e[b] = hodge_star(wedge(Form::basis1(b), phi), c.metric());
  auto pairs = sym_pairs();
  Eigen::MatrixXd I(70, pairs.size());
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    auto [a, b] = pairs[n];
    Form col = wedge(Form::basis1(a), star_e[b]);
    if (a != b) col += wedge(Form::basis1(b), star_e[a]);
    I.col(n) = 2.0 * col.coeffs();
  }
  return I;
}

}  // namespace

CayleyForm::CayleyForm(Form phi, Metric metric) : phi_(std::move(phi)), metric_(std::move(metric)), chirality_(1) {
  require_degree(phi_, 4);
  op_ = std::make_shared<Eigen::MatrixXd>(wedge_operator_matrix(phi_, metric_));
  Eigen::MatrixXd M3 = (*op_) * (*op_) * (*op_);
  chirality_ = M3.trace() < 0 ? -1 : 1;
}

const Eigen::MatrixXd& CayleyForm::wedge_operator() const { return *op_; }

Form reference_cayley_form() {
  return Form::from_terms(4, {{"1234", 1},  {"1256", 1},  {"1278", 1},  {"1357", 1},  {"1368", -1},
                              {"1458", -1}, {"1467", -1}, {"5678", 1},  {"3478", 1},  {"3456", 1},
                              {"2468", 1},  {"2457", -1}, {"2367", -1}, {"2358", -1}});
}

CayleyForm reference_cayley() { return CayleyForm(reference_cayley_form(), Metric()); }

AdmissibilityReport check_admissible(const CayleyForm& c, double tol) {
  AdmissibilityReport r;
  const Form& phi = c.phi();
  const Metric& m = c.metric();
  r.chirality = c.chirality();
  r.self_dual_residual = (hodge_star(phi, m) - phi).max_abs();
  r.volume_residual = (wedge(phi, phi) - volume(m) * 14.0).max_abs();
  r.norm_residual = std::abs(norm2(phi, m) - 14.0);

  Eigen::EigenSolver<Eigen::MatrixXd> es(c.wedge_operator(), false);
  std::vector<double> ev;
  double imag = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    ev.push_back(es.eigenvalues()[i].real());
    imag = std::max(imag, std::abs(es.eigenvalues()[i].imag()));
  }
  std::sort(ev.begin(), ev.end());
  std::vector<double> expect;
  if (c.chirality() > 0) {
    expect.assign(21, -1.0);
    expect.insert(expect.end(), 7, 3.0);
  } else {
    expect.assign(7, -3.0);
    expect.insert(expect.end(), 21, 1.0);
  }
  double sr = imag;
  for (int i = 0; i < 28; ++i) sr = std::max(sr, std::abs(ev[i] - expect[i]));
  r.spectrum_residual = sr;
  r.eigenvalues = ev;

  double spec_tol = std::max(tol, 1e-8);
  double worst = std::max({r.self_dual_residual / tol, r.volume_residual / tol, r.norm_residual / tol,
                           r.spectrum_residual / spec_tol});
  r.pass = worst <= 1.0;
  r.borderline = worst > 1e-3 && worst < 1e3;
  return r;
}

int component_degree(Component which) {
  switch (which) {
    case Component::L2_7:
    case Component::L2_21:
      return 2;
    case Component::L3_8:
    case Component::L3_48:
      return 3;
    default:
      return 4;
  }
}

Eigen::MatrixXd projector(Component which, const CayleyForm& c) {
  const Metric& m = c.metric();
  const Eigen::MatrixXd& M = c.wedge_operator();
  double eps = c.chirality();
  switch (which) {
    case Component::L2_7:
      return 0.25 * (Eigen::MatrixXd::Identity(28, 28) + eps * M);
    case Component::L2_21:
      return 0.25 * (3.0 * Eigen::MatrixXd::Identity(28, 28) - eps * M);
    case Component::L3_8:
    case Component::L3_48: {
      Eigen::MatrixXd B(56, kDim);
      for (int i = 0; i < kDim; ++i) B.col(i) = hodge_star(wedge(Form::basis1(i), c.phi()), m).coeffs();
      Eigen::MatrixXd P = span_projector(B, m.gram(3));
      if (which == Component::L3_8) return P;
      return Eigen::MatrixXd::Identity(56, 56) - P;
    }
    case Component::L4_1: {
      const Eigen::VectorXd& p = c.phi().coeffs();
      Eigen::RowVectorXd pg = p.transpose() * m.gram(4);
      return p * pg / pg.dot(p);
    }
    case Component::L4_35:
      return 0.5 * (Eigen::MatrixXd::Identity(70, 70) - m.star_matrix(4));
    case Component::L4_7: {
      Eigen::MatrixXd B(70, 28);
      for (int n = 0; n < 28; ++n) {
        Form e(2);
        e.coeffs()[n] = 1.0;
        B.col(n) = diamond(form2_to_matrix(e), c.phi(), m).coeffs();
      }
      return span_projector(B, m.gram(4));
    }
    case Component::L4_27:
      return Eigen::MatrixXd::Identity(70, 70) - projector(Component::L4_1, c) - projector(Component::L4_7, c) -
             projector(Component::L4_35, c);
  }
  throw std::logic_error("unknown component");
}

Form project(Component which, const Form& a, const CayleyForm& c) {
  require_degree(a, component_degree(which));
  return Form(a.degree(), projector(which, c) * a.coeffs());
}

Form pi2_7(const Form& a, const CayleyForm& c) {
  require_degree(a, 2);
  return Form(2, 0.25 * (a.coeffs() + c.chirality() * (c.wedge_operator() * a.coeffs())));
}

Form pi2_21(const Form& a, const CayleyForm& c) {
  require_degree(a, 2);
  return Form(2, 0.25 * (3.0 * a.coeffs() - c.chirality() * (c.wedge_operator() * a.coeffs())));
}

Form pi3_8(const Form& a, const CayleyForm& c) { return project(Component::L3_8, a, c); }
Form pi3_48(const Form& a, const CayleyForm& c) { return project(Component::L3_48, a, c); }

Form pi4_1(const Form& a, const CayleyForm& c) {
  require_degree(a, 4);
  return c.phi() * (inner(a, c.phi(), c.metric()) / norm2(c.phi(), c.metric()));
}

Form pi4_35(const Form& a, const CayleyForm& c) {
  require_degree(a, 4);
  return (a - hodge_star(a, c.metric())) * 0.5;
}

Form pi4_7(const Form& a, const CayleyForm& c) { return project(Component::L4_7, a, c); }
Form pi4_27(const Form& a, const CayleyForm& c) { return project(Component::L4_27, a, c); }

Mat8 pi2_7_matrix(const Mat8& X, const CayleyForm& c) { return form2_to_matrix(pi2_7(matrix_to_form2(X), c)); }

FiveFormSplit decompose_5form(const Form& s, const CayleyForm& c) {
  require_degree(s, 5);
  Form phi = c.canonical();
  const Metric& m = c.metric();
  Form eta = hodge_star(wedge(phi, hodge_star(s, m)), m) * (-1.0 / 7.0);
  Form rest = s - wedge(eta, phi);
  return {eta, rest};
}

Form diamond(const Mat8& A, const Form& phi, const Metric& m) { return derivation(A * m.inv(), phi); }

Form i_map(const Mat8& h, const CayleyForm& c) {
  auto pairs = sym_pairs();
  Eigen::VectorXd x(pairs.size());
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    auto [a, b] = pairs[n];
    x[n] = a == b ? h(a, a) : 0.5 * (h(a, b) + h(b, a));
  }
  return Form(4, i_matrix(c) * x);
}

Mat8 j_map(const Form& a, const CayleyForm& c) {
  require_degree(a, 4);
  Form target = pi4_1(a, c) + pi4_35(a, c);
  Eigen::MatrixXd I = i_matrix(c);
  Eigen::VectorXd x = I.colPivHouseholderQr().solve(target.coeffs());
  auto pairs = sym_pairs();
  Mat8 h = Mat8::Zero();
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    auto [p, q] = pairs[n];
    h(p, q) = x[n];
    h(q, p) = x[n];
  }
  return h;
}

}  // namespace cayley
