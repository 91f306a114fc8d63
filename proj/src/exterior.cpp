#include "cayley/exterior.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace cayley {

namespace {

struct Tables {
  std::array<std::vector<std::uint8_t>, kDim + 1> masks;
  std::array<int, 256> pos{};
  Tables() {
    // Lexicographic order of ascending index lists within each degree.
    for (int k = 0; k <= kDim; ++k) {
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        std::uint8_t m = 0;
        for (int i : idx) m |= std::uint8_t(1u << i);
        pos[m] = int(masks[k].size());
        masks[k].push_back(m);
        int j = k - 1;
        while (j >= 0 && idx[j] == kDim - k + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

double small_det(const Mat8& a, std::uint8_t rows, std::uint8_t cols) {
  int n = std::popcount(rows);
  if (n == 0) return 1.0;
  double m[kDim][kDim];
  int r = 0;
  for (int i = 0; i < kDim; ++i) {
    if (!(rows >> i & 1)) continue;
    int c = 0;
    for (int j = 0; j < kDim; ++j)
      if (cols >> j & 1) m[r][c++] = a(i, j);
    ++r;
  }
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    if (m[p][k] == 0.0) return 0.0;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m[p][j], m[k][j]);
      det = -det;
    }
    det *= m[k][k];
    for (int i = k + 1; i < n; ++i) {
      double f = m[i][k] / m[k][k];
      for (int j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

}  // namespace

namespace basis {

int size(int degree) {
  if (degree < 0 || degree > kDim) throw std::out_of_range("degree out of range");
  return int(tables().masks[degree].size());
}

std::uint8_t mask(int degree, int position) { return tables().masks.at(degree).at(position); }

int position(std::uint8_t mask) { return tables().pos[mask]; }

std::string label(std::uint8_t mask) {
  std::string s;
  for (int i = 0; i < kDim; ++i)
    if (mask >> i & 1) s.push_back(char('1' + i));
  return s;
}

std::pair<std::uint8_t, int> parse(std::string_view digits) {
  std::vector<int> idx;
  for (char ch : digits) {
    if (ch < '1' || ch > '8') throw std::invalid_argument("bad multi-index \"" + std::string(digits) + "\"");
    idx.push_back(ch - '1');
  }
  int sign = 1;
  std::uint8_t m = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (m >> idx[i] & 1) return {m, 0};
    m |= std::uint8_t(1u << idx[i]);
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (idx[i] > idx[j]) sign = -sign;
  }
  return {m, sign};
}

int wedge_sign(std::uint8_t a, std::uint8_t b) {
  if (a & b) return 0;
  int swaps = 0;
  for (int y = 0; y < kDim; ++y)
    if (b >> y & 1) swaps += std::popcount(std::uint8_t(a >> (y + 1)));
  return (swaps & 1) ? -1 : 1;
}

}  // namespace basis

Form::Form(int degree) : degree_(degree) {
  if (degree < 0 || degree > kDim) throw std::domain_error("degree exceeds 8");
  coeffs_ = Eigen::VectorXd::Zero(basis::size(degree));
}

Form::Form(int degree, Eigen::VectorXd coeffs) : Form(degree) {
  if (coeffs.size() != coeffs_.size()) throw std::invalid_argument("coefficient vector has wrong length");
  coeffs_ = std::move(coeffs);
}

Form Form::scalar(double v) {
  Form f(0);
  f.coeffs_[0] = v;
  return f;
}

Form Form::basis1(int i, double v) {
  Form f(1);
  f.coeffs_[i] = v;
  return f;
}

Form Form::blade(std::string_view digits, double v) {
  auto [m, s] = basis::parse(digits);
  Form f(int(digits.size()));
  if (s != 0) f.coeffs_[basis::position(m)] = s * v;
  return f;
}

Form Form::from_terms(int degree, const std::vector<std::pair<std::string, double>>& terms) {
  Form f(degree);
  for (const auto& [idx, v] : terms) {
    if (int(idx.size()) != degree)
      throw std::invalid_argument("multi-index \"" + idx + "\" does not have degree " + std::to_string(degree));
    auto [m, s] = basis::parse(idx);
    if (s == 0) throw std::invalid_argument("repeated index in \"" + idx + "\"");
    f.coeffs_[basis::position(m)] += s * v;
  }
  return f;
}

double Form::coeff(std::string_view digits) const {
  if (int(digits.size()) != degree_) throw std::invalid_argument("multi-index degree mismatch");
  auto [m, s] = basis::parse(digits);
  if (s == 0) return 0.0;
  return s * coeffs_[basis::position(m)];
}

std::vector<std::pair<std::string, double>> Form::terms(double tol) const {
  std::vector<std::pair<std::string, double>> out;
  for (int i = 0; i < coeffs_.size(); ++i)
    if (std::abs(coeffs_[i]) > tol) out.emplace_back(basis::label(basis::mask(degree_, i)), coeffs_[i]);
  return out;
}

Form& Form::operator+=(const Form& o) {
  if (o.degree_ != degree_) throw std::invalid_argument("degree mismatch");
  coeffs_ += o.coeffs_;
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (o.degree_ != degree_) throw std::invalid_argument("degree mismatch");
  coeffs_ -= o.coeffs_;
  return *this;
}

Form& Form::operator*=(double s) {
  coeffs_ *= s;
  return *this;
}

Form Form::operator-() const { return Form(degree_, -coeffs_); }

Form operator+(Form a, const Form& b) { return a += b; }
Form operator-(Form a, const Form& b) { return a -= b; }
Form operator*(Form a, double s) { return a *= s; }
Form operator*(double s, Form a) { return a *= s; }

struct Metric::Cache {
  std::array<std::once_flag, kDim + 1> gram_once;
  std::array<std::once_flag, kDim + 1> star_once;
  std::array<Eigen::MatrixXd, kDim + 1> gram;
  std::array<Eigen::MatrixXd, kDim + 1> star;
};

Metric::Metric() : Metric(Mat8::Identity()) {}

Metric::Metric(const Mat8& g) : g_(g), cache_(std::make_shared<Cache>()) {
  if (!g.allFinite()) throw std::invalid_argument("metric has non-finite entries");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("metric is not symmetric");
  g_ = sym(g);
  Eigen::LLT<Mat8> llt(g_);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("metric is not positive definite");
  inv_ = llt.solve(Mat8::Identity());
  inv_ = sym(inv_);
  double logdet = 0.0;
  for (int i = 0; i < kDim; ++i) logdet += std::log(llt.matrixL()(i, i));
  sqrt_det_ = std::exp(logdet);
  identity_ = (g_ - Mat8::Identity()).cwiseAbs().maxCoeff() == 0.0;
}

const Eigen::MatrixXd& Metric::gram(int degree) const {
  std::call_once(cache_->gram_once.at(degree), [&] {
    int n = basis::size(degree);
    if (identity_) {
      cache_->gram[degree] = Eigen::MatrixXd::Identity(n, n);
      return;
    }
    Eigen::MatrixXd G(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        double v = small_det(inv_, basis::mask(degree, a), basis::mask(degree, b));
        G(a, b) = v;
        G(b, a) = v;
      }
    cache_->gram[degree] = std::move(G);
  });
  return cache_->gram[degree];
}

const Eigen::MatrixXd& Metric::star_matrix(int degree) const {
  std::call_once(cache_->star_once.at(degree), [&] {
    const Eigen::MatrixXd& G = gram(degree);
    int n = basis::size(degree);
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(basis::size(kDim - degree), n);
    const std::uint8_t full = 0xff;
    for (int a = 0; a < n; ++a) {
      std::uint8_t I = basis::mask(degree, a);
      std::uint8_t C = full ^ I;
      S.row(basis::position(C)) += sqrt_det_ * basis::wedge_sign(I, C) * G.row(a);
    }
    cache_->star[degree] = std::move(S);
  });
  return cache_->star[degree];
}

Form wedge(const Form& a, const Form& b) {
  int k = a.degree() + b.degree();
  if (k > kDim) throw std::domain_error("degree exceeds 8");
  Form out(k);
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (int i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0.0) continue;
    std::uint8_t ma = basis::mask(a.degree(), i);
    for (int j = 0; j < cb.size(); ++j) {
      if (cb[j] == 0.0) continue;
      std::uint8_t mb = basis::mask(b.degree(), j);
      int s = basis::wedge_sign(ma, mb);
      if (s) out.coeffs()[basis::position(ma | mb)] += s * ca[i] * cb[j];
    }
  }
  return out;
}

Form hodge_star(const Form& a, const Metric& m) {
  return Form(kDim - a.degree(), m.star_matrix(a.degree()) * a.coeffs());
}

Form interior(const Vec8& v, const Form& a) {
  if (a.degree() == 0) throw std::domain_error("interior product of a 0-form");
  Form out(a.degree() - 1);
  const auto& c = a.coeffs();
  for (int n = 0; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    std::uint8_t m = basis::mask(a.degree(), n);
    int p = 0;
    for (int i = 0; i < kDim; ++i) {
      if (!(m >> i & 1)) continue;
      if (v[i] != 0.0) {
        double s = (p & 1) ? -1.0 : 1.0;
        out.coeffs()[basis::position(std::uint8_t(m ^ (1u << i)))] += s * v[i] * c[n];
      }
      ++p;
    }
  }
  return out;
}

double inner(const Form& a, const Form& b, const Metric& m) {
  if (a.degree() != b.degree()) throw std::invalid_argument("inner product of forms of different degree");
  if (m.is_identity()) return a.coeffs().dot(b.coeffs());
  return a.coeffs().dot(m.gram(a.degree()) * b.coeffs());
}

double norm2(const Form& a, const Metric& m) { return inner(a, a, m); }

Form volume(const Metric& m) {
  Form v(kDim);
  v.coeffs()[0] = m.sqrt_det();
  return v;
}

Form derivation(const Mat8& M, const Form& a) {
  Form out(a.degree());
  const auto& c = a.coeffs();
  for (int n = 0; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    std::uint8_t m = basis::mask(a.degree(), n);
    for (int s = 0; s < kDim; ++s) {
      if (!(m >> s & 1)) continue;
      std::uint8_t rest = std::uint8_t(m ^ (1u << s));
      for (int i = 0; i < kDim; ++i) {
        double w = M(i, s);
        if (w == 0.0) continue;
        if (i == s) {
          out.coeffs()[n] += w * c[n];
          continue;
        }
        if (rest >> i & 1) continue;
        int lo = std::min(i, s), hi = std::max(i, s);
        std::uint8_t between = std::uint8_t(rest & ((1u << hi) - 1u) & ~((1u << (lo + 1)) - 1u));
        double sign = (std::popcount(between) & 1) ? -1.0 : 1.0;
        out.coeffs()[basis::position(std::uint8_t(rest | (1u << i)))] += sign * w * c[n];
      }
    }
  }
  return out;
}

Form pullback(const Form& a, const Mat8& P) {
  std::array<Form, kDim> img;
  for (int i = 0; i < kDim; ++i) img[i] = Form(1, Eigen::VectorXd(P.row(i).transpose()));
  Form out(a.degree());
  const auto& c = a.coeffs();
  for (int n = 0; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    std::uint8_t m = basis::mask(a.degree(), n);
    Form t = Form::scalar(c[n]);
    for (int i = 0; i < kDim; ++i)
      if (m >> i & 1) t = wedge(t, img[i]);
    out += t;
  }
  return out;
}

Mat8 form2_to_matrix(const Form& a) {
  if (a.degree() != 2) throw std::invalid_argument("expected a 2-form");
  Mat8 X = Mat8::Zero();
  for (int n = 0; n < a.coeffs().size(); ++n) {
    std::uint8_t m = basis::mask(2, n);
    int i = std::countr_zero(m);
    int j = kDim - 1 - std::countl_zero(m);
    X(i, j) = a.coeffs()[n];
    X(j, i) = -a.coeffs()[n];
  }
  return X;
}

Form matrix_to_form2(const Mat8& X) {
  Form f(2);
  for (int n = 0; n < f.coeffs().size(); ++n) {
    std::uint8_t m = basis::mask(2, n);
    int i = std::countr_zero(m);
    int j = kDim - 1 - std::countl_zero(m);
    f.coeffs()[n] = 0.5 * (X(i, j) - X(j, i));
  }
  return f;
}

Mat8 sym(const Mat8& A) { return 0.5 * (A + A.transpose()); }
Mat8 skew(const Mat8& A) { return 0.5 * (A - A.transpose()); }

double max_abs(const Mat8& A) { return A.cwiseAbs().maxCoeff(); }

double max_abs(const Tensor3& T) {
  double m = 0.0;
  for (const auto& t : T) m = std::max(m, max_abs(t));
  return m;
}

Tensor3 zero_tensor3() {
  Tensor3 T;
  for (auto& t : T) t.setZero();
  return T;
}

}  // namespace cayley
