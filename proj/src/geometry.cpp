#include "cayley/geometry.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace cayley {

LieAlgebra::LieAlgebra() : LieAlgebra(zero_tensor3()) {}

LieAlgebra::LieAlgebra(const Tensor3& c) : c_(c) {
  for (int i = 0; i < kDim; ++i) {
    Form d(2);
    for (int n = 0; n < 28; ++n) {
      std::uint8_t m = basis::mask(2, n);
      int j = std::countr_zero(m);
      int k = kDim - 1 - std::countl_zero(m);
      d.coeffs()[n] = -c_[i](j, k);
    }
    de_[i] = d;
  }
}

LieAlgebra LieAlgebra::from_sparse(const std::vector<std::tuple<int, int, int, double>>& entries) {
  Tensor3 c = zero_tensor3();
  for (const auto& [i, j, k, v] : entries) {
    if (i < 0 || i >= kDim || j < 0 || j >= kDim || k < 0 || k >= kDim)
      throw std::invalid_argument("structure constant index out of range");
    if (i == j) {
      if (v != 0.0) throw std::invalid_argument("structure constant c^k_ii must vanish");
      continue;
    }
    c[k](i, j) = v;
    c[k](j, i) = -v;
  }
  return LieAlgebra(c);
}

double LieAlgebra::antisymmetry_residual() const {
  double r = 0.0;
  for (const auto& ck : c_) r = std::max(r, max_abs(ck + ck.transpose()));
  return r;
}

double LieAlgebra::jacobi_residual() const {
  // [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]
  double r = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int l = 0; l < kDim; ++l)
        for (int n = 0; n < kDim; ++n) {
          double s = 0.0;
          for (int m = 0; m < kDim; ++m)
            s += c_[m](i, j) * c_[n](m, l) + c_[m](j, l) * c_[n](m, i) + c_[m](l, i) * c_[n](m, j);
          r = std::max(r, std::abs(s));
        }
  return r;
}

double LieAlgebra::trace_residual() const {
  double r = 0.0;
  for (int i = 0; i < kDim; ++i) {
    double s = 0.0;
    for (int k = 0; k < kDim; ++k) s += c_[k](i, k);
    r = std::max(r, std::abs(s));
  }
  return r;
}

Form exterior_derivative(const Form& a, const LieAlgebra& alg) {
  if (a.degree() >= kDim) throw std::domain_error("degree exceeds 8");
  Form out(a.degree() + 1);
  const auto& c = a.coeffs();
  for (int n = 0; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    std::uint8_t m = basis::mask(a.degree(), n);
    int s = 0;
    for (int i = 0; i < kDim; ++i) {
      if (!(m >> i & 1)) continue;
      std::uint8_t rest = std::uint8_t(m ^ (1u << i));
      std::uint8_t pre = std::uint8_t(rest & ((1u << i) - 1u));
      std::uint8_t post = std::uint8_t(rest & ~((1u << i) - 1u));
      const auto& d = alg.de(i).coeffs();
      for (int q = 0; q < 28; ++q) {
        if (d[q] == 0.0) continue;
        std::uint8_t jk = basis::mask(2, q);
        if (jk & rest) continue;
        int sign = basis::wedge_sign(pre, jk) * basis::wedge_sign(std::uint8_t(pre | jk), post);
        double w = (s & 1) ? -1.0 : 1.0;
        out.coeffs()[basis::position(std::uint8_t(rest | jk))] += w * sign * d[q] * c[n];
      }
      ++s;
    }
  }
  return out;
}

Form codifferential(const Form& a, const LieAlgebra& alg, const Metric& m) {
  if (a.degree() == 0) throw std::domain_error("codifferential of a 0-form");
  return -hodge_star(exterior_derivative(hodge_star(a, m), alg), m);
}

InvariantGeometry::InvariantGeometry(LieAlgebra alg, Metric metric) : alg_(std::move(alg)), metric_(std::move(metric)) {
  const Tensor3& c = alg_.constants();
  const Mat8& g = metric_.g();
  // cl[i](j, k) = <[e_i, e_j], e_k>
  Tensor3 cl = zero_tensor3();
  for (int m = 0; m < kDim; ++m)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        double v = c[m](i, j);
        if (v != 0.0) cl[i].row(j) += v * g.row(m);
      }
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) gamma_[i](j, k) = 0.5 * (cl[i](j, k) - cl[j](k, i) + cl[k](i, j));
  for (int i = 0; i < kDim; ++i) up_[i] = gamma_[i] * metric_.inv();
}

double InvariantGeometry::compatibility_residual() const {
  double r = 0.0;
  for (const auto& G : gamma_) r = std::max(r, max_abs(G + G.transpose()));
  return r;
}

double InvariantGeometry::torsion_free_residual() const {
  const Tensor3& c = alg_.constants();
  const Mat8& g = metric_.g();
  double r = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        double br = 0.0;
        for (int m = 0; m < kDim; ++m) br += c[m](i, j) * g(m, k);
        r = std::max(r, std::abs(gamma_[i](j, k) - gamma_[j](i, k) - br));
      }
  return r;
}

InvariantGeometry levi_civita(const LieAlgebra& alg, const Metric& m) {
  InvariantGeometry geo(alg, m);
  double scale = 1.0 + max_abs(alg.constants()) * max_abs(m.g());
  if (geo.compatibility_residual() > 1e-12 * scale || geo.torsion_free_residual() > 1e-12 * scale)
    throw std::runtime_error("Levi-Civita connection failed its consistency checks");
  return geo;
}

std::array<Form, kDim> covariant_derivative(const Form& a, const InvariantGeometry& geo) {
  std::array<Form, kDim> out;
  for (int m = 0; m < kDim; ++m) out[m] = derivation(-geo.up()[m], a);
  return out;
}

Mat8 nabla(const Vec8& a, const InvariantGeometry& geo) {
  Mat8 out;
  for (int n = 0; n < kDim; ++n) out.row(n) = -(geo.up()[n] * a).transpose();
  return out;
}

Tensor3 nabla(const Mat8& a, const InvariantGeometry& geo) {
  Tensor3 out;
  for (int n = 0; n < kDim; ++n) {
    const Mat8& U = geo.up()[n];
    out[n] = -(U * a + a * U.transpose());
  }
  return out;
}

std::array<Tensor3, kDim> nabla(const Tensor3& a, const InvariantGeometry& geo) {
  std::array<Tensor3, kDim> out;
  for (int n = 0; n < kDim; ++n) {
    const Mat8& U = geo.up()[n];
    for (int i = 0; i < kDim; ++i) {
      Mat8 t = -(U * a[i] + a[i] * U.transpose());
      for (int q = 0; q < kDim; ++q)
        if (U(i, q) != 0.0) t -= U(i, q) * a[q];
      out[n][i] = t;
    }
  }
  return out;
}

Mat8 lie_derivative_metric(const Vec8& v, const InvariantGeometry& geo) {
  Mat8 L = Mat8::Zero();
  for (int j = 0; j < kDim; ++j)
    if (v[j] != 0.0)
      for (int i = 0; i < kDim; ++i) L.row(i) += v[j] * geo.gamma()[i].row(j);
  return L + L.transpose();
}

Mat8 ricci_levi_civita(const InvariantGeometry& geo) {
  const Tensor3& U = geo.up();
  const Tensor3& c = geo.algebra().constants();
  // R(e_i, e_j) e_k = (U_j U_i - U_i U_j - c^m_ij U_m)(k, .)
  Mat8 ric = Mat8::Zero();
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      Mat8 R = U[j] * U[i] - U[i] * U[j];
      for (int m = 0; m < kDim; ++m)
        if (c[m](i, j) != 0.0) R -= c[m](i, j) * U[m];
      for (int k = 0; k < kDim; ++k) ric(j, k) += R(k, i);
    }
  return ric;
}

}  // namespace cayley
