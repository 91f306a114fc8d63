#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cayley {

constexpr int kDim = 8;

using Mat8 = Eigen::Matrix<double, kDim, kDim>;
using Vec8 = Eigen::Matrix<double, kDim, 1>;
using Tensor3 = std::array<Mat8, kDim>;

// Blades of each degree are stored in lexicographic order of their ascending
// index lists; a blade is identified by its bitmask (bit i <-> e^{i+1}).
namespace basis {
int size(int degree);
std::uint8_t mask(int degree, int position);
int position(std::uint8_t mask);
std::string label(std::uint8_t mask);
// Parses "1234" into a mask and the sign of the sorting permutation.
// Returns sign 0 for repeated indices.
std::pair<std::uint8_t, int> parse(std::string_view digits);
// Sign of e^A ^ e^B relative to e^{A|B}; 0 when A and B overlap.
int wedge_sign(std::uint8_t a, std::uint8_t b);
}  // namespace basis

class Form {
 public:
  Form() : Form(0) {}
  explicit Form(int degree);
  Form(int degree, Eigen::VectorXd coeffs);

  static Form scalar(double v);
  static Form basis1(int i, double v = 1.0);
  static Form blade(std::string_view digits, double v = 1.0);
  static Form from_terms(int degree, const std::vector<std::pair<std::string, double>>& terms);

  int degree() const { return degree_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  Eigen::VectorXd& coeffs() { return coeffs_; }

  // Coefficient of e^{digits}, including the sign of sorting the digits.
  double coeff(std::string_view digits) const;
  double max_abs() const { return coeffs_.size() ? coeffs_.cwiseAbs().maxCoeff() : 0.0; }
  std::vector<std::pair<std::string, double>> terms(double tol = 1e-14) const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(double s);
  Form operator-() const;

 private:
  int degree_;
  Eigen::VectorXd coeffs_;
};

Form operator+(Form a, const Form& b);
Form operator-(Form a, const Form& b);
Form operator*(Form a, double s);
Form operator*(double s, Form a);

class Metric {
 public:
  Metric();
  explicit Metric(const Mat8& g);

  const Mat8& g() const { return g_; }
  const Mat8& inv() const { return inv_; }
  double sqrt_det() const { return sqrt_det_; }
  bool is_identity() const { return identity_; }

  // Gram matrix of the blade basis of the given degree: det(g^{-1}[I,J]).
  const Eigen::MatrixXd& gram(int degree) const;
  // Matrix of the Hodge star from degree k to degree 8-k.
  const Eigen::MatrixXd& star_matrix(int degree) const;

 private:
  struct Cache;
  Mat8 g_;
  Mat8 inv_;
  double sqrt_det_;
  bool identity_;
  std::shared_ptr<Cache> cache_;
};

Form wedge(const Form& a, const Form& b);
Form hodge_star(const Form& a, const Metric& m);
Form interior(const Vec8& v, const Form& a);
double inner(const Form& a, const Form& b, const Metric& m);
double norm2(const Form& a, const Metric& m);
Form volume(const Metric& m);

// Extends e^a -> sum_i M(i,a) e^i to a derivation of the exterior algebra.
Form derivation(const Mat8& M, const Form& a);
// Pullback along the linear map e^a -> sum_i P(a,i) e^i; the metric pulls back to P^T g P.
Form pullback(const Form& a, const Mat8& P);

Mat8 form2_to_matrix(const Form& a);
Form matrix_to_form2(const Mat8& X);
Mat8 sym(const Mat8& A);
Mat8 skew(const Mat8& A);

double max_abs(const Mat8& A);
double max_abs(const Tensor3& T);
Tensor3 zero_tensor3();

}  // namespace cayley
