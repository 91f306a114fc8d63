#pragma once

#include "cayley/dynamics.hpp"
#include "cayley/scenario.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using namespace cayley;

inline const double s3 = std::sqrt(3.0);

// Printed SU(3) torsion tensor: e^m (x) prefix * (sum of coefficient e^{ab}).
struct PrintedBlock {
  int m;
  double prefix;
  std::vector<std::pair<std::string, double>> terms;
};

inline std::vector<PrintedBlock> printed_su3_torsion() {
  return {
      {1, s3 / 48, {{"12", 1.0}, {"17", 1.0}, {"18", 2}, {"24", -2}, {"26", 1.0}, {"35", -1.0}, {"37", 2}, {"38", 1.0}, {"45", -1.0}, {"48", 1.0}, {"56", -2}, {"67", -1.0}}},
      {2, 1.0, {{"13", -s3 / 48}, {"16", -s3 / 24}, {"18", -1.0 / 16}, {"24", 1.0 / 16}, {"25", -s3 / 48}, {"34", -s3 / 24}, {"37", 1.0 / 16}, {"46", s3 / 48}, {"56", -1.0 / 16}, {"78", -s3 / 48}}},
      {3, s3 / 48, {{"15", -1.0}, {"17", -2}, {"18", 1.0}, {"23", 1.0}, {"24", 1.0}, {"26", -2}, {"37", -1.0}, {"38", 2}, {"45", -2}, {"47", -1.0}, {"56", -1.0}, {"68", -1.0}}},
      {4, s3 / 48, {{"12", -1.0}, {"15", -1.0}, {"16", -s3}, {"18", -1.0}, {"23", -1.0}, {"24", -1.0}, {"27", -s3}, {"34", s3}, {"35", 1.0}, {"37", -1.0}, {"47", -1.0}, {"48", 1.0}, {"56", -1.0}, {"58", s3}, {"67", -1.0}, {"68", 1.0}}},
      {5, 1.0 / 16, {{"12", -1.0}, {"17", 1.0}, {"26", 1.0}, {"35", 1.0}, {"38", 1.0}, {"45", -1.0}, {"48", -1.0}, {"67", 1.0}}},
      {6, s3 / 48, {{"12", 1.0}, {"13", s3}, {"15", -1.0}, {"17", -1.0}, {"23", 1.0}, {"25", -s3}, {"26", 1.0}, {"35", 1.0}, {"38", 1.0}, {"45", 1.0}, {"46", -s3}, {"47", 1.0}, {"48", 1.0}, {"67", 1.0}, {"68", 1.0}, {"78", -s3}}},
      {7, s3 / 48, {{"13", 1.0}, {"14", -1.0}, {"25", -3}, {"28", 1.0}, {"36", -1.0}, {"46", 1.0}, {"57", 1.0}, {"78", 3}}},
      {8, s3 / 48, {{"14", 2}, {"16", 1.0}, {"17", s3}, {"26", -s3}, {"27", -1.0}, {"34", -1.0}, {"36", -2}, {"38", s3}, {"45", s3}, {"58", 1.0}}},
  };
}

inline Tensor3 printed_su3_torsion_tensor() {
  Tensor3 T = zero_tensor3();
  for (const auto& b : printed_su3_torsion())
    for (const auto& [ab, v] : b.terms) {
      int a = ab[0] - '1', c = ab[1] - '1';
      T[b.m - 1](a, c) += b.prefix * v;
      T[b.m - 1](c, a) -= b.prefix * v;
    }
  return T;
}

inline Form printed_su3_dphi() {
  return Form::from_terms(
      5, {{"12345", -1.0 / 2}, {"12348", -1.0 / 2}, {"12358", s3 / 3},  {"12457", -s3 / 6}, {"12458", s3 / 6},
          {"12467", 1.0 / 2},  {"12567", -s3 / 6},  {"12678", s3 / 2},  {"13457", 1.0 / 2},  {"13468", s3 / 2},
          {"13568", 1.0 / 2},  {"13578", -s3 / 6},  {"14568", -1.0 / 2}, {"14578", s3 / 2},  {"15678", -s3 / 6},
          {"23456", -1.0 / 2}, {"23457", s3 / 6},   {"23468", -1.0 / 2}, {"23478", s3 / 2},  {"23567", s3 / 6},
          {"23568", s3 / 6},   {"23578", 1.0 / 2},  {"24568", -s3 / 6}, {"24578", -1.0 / 2}, {"34567", 1.0 / 2},
          {"34578", s3 / 6},   {"34678", 1.0 / 2},  {"35678", -s3 / 2}, {"45678", -s3 / 6}});
}

inline Form printed_su3_t1() {
  return Form::from_terms(1, {{"3", -3.0 / 7}, {"4", 3.0 / 7}, {"5", -s3 / 7}, {"8", 3 * s3 / 7}});
}

inline Form printed_hk_star_dphi() {
  return Form::from_terms(3, {{"347", 1}, {"246", -1}, {"127", 1}, {"136", -1}});
}

inline Form printed_hk_dphi() {
  return Form::from_terms(5, {{"12568", -1}, {"13578", 1}, {"34568", -1}, {"24578", -1}});
}

// Printed H(1) right-hand side: -4 on blades without e^8, -2 on blades with e^8.
inline Form printed_hk_rhs(const Form& phi) {
  Form out = phi;
  for (int n = 0; n < out.coeffs().size(); ++n) out.coeffs()[n] *= (basis::mask(4, n) >> 7 & 1) ? -2.0 : -4.0;
  return out;
}

struct Sample {
  std::string label;
  LieAlgebra alg;
  Form phi;
  Metric metric;
};

inline Mat8 random_matrix(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat8 M;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) M(i, j) = scale * n(rng);
  return M;
}

inline Sample pulled_back(const std::string& label, const LieAlgebra& alg, const Form& phi, const Mat8& P) {
  return {label, alg, pullback(phi, P), Metric(P.transpose() * P)};
}

// R^7 semidirect R with [e_8, e_i] = sum_j D(j, i) e_j; unimodular iff tr D = 0.
inline LieAlgebra random_solvable(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Tensor3 c = zero_tensor3();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      double v = 0.5 * n(rng);
      c[j](7, i) = v;
      c[j](i, 7) = -v;
    }
  return LieAlgebra(c);
}

inline Sample builtin_sample(const std::string& name, const std::map<std::string, double>& params = {}) {
  Scenario s = builtin_scenario(name, params);
  return {name, s.algebra(), s.phi(), s.metric_object()};
}

// Ten generic admissible states: GL(8) pullbacks of su3 and hk-t5, plus solvable algebras.
inline std::vector<Sample> random_states(unsigned seed, int count = 10, bool unimodular_only = false) {
  std::mt19937_64 rng(seed);
  Scenario su3 = builtin_scenario("su3");
  Scenario hk = builtin_scenario("hk-t5");
  std::vector<Sample> out;
  for (int n = 0; n < count; ++n) {
    Mat8 P = random_matrix(rng, 0.15).exp();
    switch (unimodular_only ? n % 2 : n % 3) {
      case 0:
        out.push_back(pulled_back("su3/rand" + std::to_string(n), su3.algebra(), su3.phi(), P));
        break;
      case 1:
        out.push_back(pulled_back("hk/rand" + std::to_string(n), hk.algebra(), hk.phi(), P));
        break;
      default:
        out.push_back(pulled_back("solvable/rand" + std::to_string(n), random_solvable(rng), reference_cayley_form(), P));
    }
  }
  return out;
}

inline Form random_form(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> n(0.0, 1.0);
  Form f(degree);
  for (int i = 0; i < f.coeffs().size(); ++i) f.coeffs()[i] = n(rng);
  return f;
}

inline Metric random_metric(std::mt19937_64& rng) {
  Mat8 P = random_matrix(rng, 0.3).exp();
  return Metric(P.transpose() * P);
}

inline double max_diff(const Tensor3& a, const Tensor3& b) {
  double r = 0;
  for (int k = 0; k < kDim; ++k) r = std::max(r, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return r;
}

// Ricci of a left-invariant metric from brackets alone, in an orthonormal frame:
// Ric(X,X) = -1/2 sum|[X,X_i]|^2 - 1/2 B(X,X) + 1/4 sum <[X_i,X_j],X>^2 - <[Z,X],X>,
// with <Z,W> = tr ad_W. Returned in the original frame.
inline Mat8 ricci_from_brackets(const LieAlgebra& alg, const Metric& m) {
  Eigen::LLT<Mat8> llt(m.g());
  Mat8 L = llt.matrixL();
  Mat8 Q = L.transpose().inverse();  // columns are an orthonormal frame
  Mat8 Qi = Q.inverse();
  const Tensor3& c = alg.constants();
  // bracket of frame vectors a, b in frame coordinates
  std::array<std::array<Vec8, kDim>, kDim> br;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      Vec8 v = Vec8::Zero();
      for (int k = 0; k < kDim; ++k) v[k] = Q.col(a).dot(c[k] * Q.col(b));
      br[a][b] = Qi * v;
    }
  auto ad = [&](const Vec8& x) {
    Mat8 A = Mat8::Zero();
    for (int b = 0; b < kDim; ++b)
      for (int a = 0; a < kDim; ++a) A.col(b) += x[a] * br[a][b];
    return A;
  };
  Vec8 Z;
  for (int w = 0; w < kDim; ++w) Z[w] = ad(Vec8::Unit(w)).trace();
  auto ric = [&](const Vec8& x) {
    Mat8 adx = ad(x);
    double s = -0.5 * adx.squaredNorm() - 0.5 * (adx * adx).trace();
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        double p = br[i][j].dot(x);
        s += 0.25 * p * p;
      }
    s -= (ad(Z) * x).dot(x);
    return s;
  };
  Mat8 R;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      Vec8 ea = Vec8::Unit(a), eb = Vec8::Unit(b);
      R(a, b) = 0.25 * (ric(ea + eb) - ric(ea - eb));
    }
  return Qi.transpose() * R * Qi;
}

inline double torsion_energy(const LieAlgebra& alg, const Form& phi, const Metric& m) {
  StateGeometry s(phi, m, alg);
  return torsion_norm2(s.torsion.T, m) * m.sqrt_det();
}

// A with d/ds E(exp(s B g^{-1})^* state) = -<A, B> sqrt(det g); valid on unimodular algebras.
inline Mat8 energy_gradient(const LieAlgebra& alg, const Form& phi, const Metric& m, double h = 1e-4) {
  Mat8 Aup;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      Mat8 B = Mat8::Zero();
      B(a, b) = 1;
      Mat8 M = B * m.inv();
      double e[2];
      for (int k = 0; k < 2; ++k) {
        Mat8 P = ((k ? -h : h) * M.transpose()).exp();
        e[k] = torsion_energy(alg, pullback(phi, P), Metric(P.transpose() * m.g() * P));
      }
      Aup(a, b) = -(e[0] - e[1]) / (2 * h) / m.sqrt_det();
    }
  return m.g() * Aup * m.g();
}

// Richardson-extrapolated central difference of T along the flow generated by rhs; the
// default step is 1e-2 of the time scale set by the size of the right-hand side.
inline Tensor3 torsion_rate_fd(const LieAlgebra& alg, const Form& phi, const Metric& m, const FlowRHS& rhs, double h = 0) {
  if (h == 0) h = 1e-2 / (1 + rhs.dphi.max_abs());
  auto central = [&](double e) {
    Tensor3 Tp = StateGeometry(phi + rhs.dphi * e, Metric(m.g() + 2 * e * rhs.h), alg).torsion.T;
    Tensor3 Tm = StateGeometry(phi - rhs.dphi * e, Metric(m.g() - 2 * e * rhs.h), alg).torsion.T;
    Tensor3 out;
    for (int k = 0; k < kDim; ++k) out[k] = (Tp[k] - Tm[k]) / (2 * e);
    return out;
  };
  Tensor3 a = central(h), b = central(h / 2);
  for (int k = 0; k < kDim; ++k) a[k] = (4 * b[k] - a[k]) / 3;
  return a;
}

}  // namespace fixtures
