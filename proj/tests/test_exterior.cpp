#include "fixtures.hpp"

#include <doctest.h>

using namespace cayley;
using fixtures::random_form;
using fixtures::random_metric;

TEST_CASE("blade bookkeeping") {
  CHECK(basis::size(0) == 1);
  CHECK(basis::size(4) == 70);
  CHECK(basis::size(8) == 1);
  for (int k = 0; k <= 8; ++k)
    for (int n = 0; n < basis::size(k); ++n) CHECK(basis::position(basis::mask(k, n)) == n);
  CHECK(basis::label(basis::mask(4, 0)) == "1234");
  CHECK(basis::parse("21").second == -1);
  CHECK(basis::parse("11").second == 0);
  CHECK(Form::blade("21").coeff("12") == -1.0);
  CHECK(Form::blade("12").coeff("21") == -1.0);
  CHECK(basis::wedge_sign(basis::parse("2").first, basis::parse("1").first) == -1);
}

TEST_CASE("wedge is associative and graded commutative") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    Form a = random_form(rng, 1), b = random_form(rng, 2), c = random_form(rng, 3);
    CHECK((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).max_abs() < 1e-12);
    CHECK((wedge(a, c) + wedge(c, a)).max_abs() < 1e-12);
    CHECK((wedge(b, c) - wedge(c, b)).max_abs() < 1e-12);
    CHECK(wedge(a, a).max_abs() < 1e-12);
  }
}

TEST_CASE("hodge star") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 3; ++trial) {
    Metric m = random_metric(rng);
    for (int k = 0; k <= 8; ++k) {
      Form a = random_form(rng, k), b = random_form(rng, k);
      Form ss = hodge_star(hodge_star(a, m), m);
      CHECK((ss - a * double(k % 2 ? -1 : 1)).max_abs() < 1e-9 * (1 + a.max_abs()));
      Form lhs = wedge(a, hodge_star(b, m));
      Form rhs = volume(m) * inner(a, b, m);
      CHECK((lhs - rhs).max_abs() < 1e-9 * (1 + rhs.max_abs()));
    }
  }
  Metric d(Vec8::Constant(4.0).asDiagonal().toDenseMatrix());
  CHECK(norm2(Form::basis1(0), d) == doctest::Approx(0.25));
  CHECK(volume(d).coeff("12345678") == doctest::Approx(256.0));
  CHECK(hodge_star(Form::blade("1234"), Metric()).coeff("5678") == doctest::Approx(1.0));
}

TEST_CASE("interior product is an antiderivation") {
  std::mt19937_64 rng(3);
  Vec8 v = Vec8::Random();
  Form a = random_form(rng, 2), b = random_form(rng, 3);
  Form lhs = interior(v, wedge(a, b));
  Form rhs = wedge(interior(v, a), b) + wedge(a, interior(v, b));
  CHECK((lhs - rhs).max_abs() < 1e-12);
  CHECK(interior(Vec8::Unit(1), Form::blade("123")).coeff("13") == doctest::Approx(-1.0));
}

TEST_CASE("derivations and pullbacks") {
  std::mt19937_64 rng(4);
  Form a = random_form(rng, 4);
  CHECK((derivation(Mat8::Identity(), a) - a * 4.0).max_abs() < 1e-12);

  Mat8 M = fixtures::random_matrix(rng, 1.0);
  Form b = random_form(rng, 2);
  CHECK((derivation(M, wedge(a, b)) - wedge(derivation(M, a), b) - wedge(a, derivation(M, b))).max_abs() < 1e-10);

  double h = 1e-5;
  Form fd = (pullback(a, (h * M.transpose()).exp()) - pullback(a, (-h * M.transpose()).exp())) * (0.5 / h);
  CHECK((fd - derivation(M, a)).max_abs() < 1e-7);

  Mat8 P = fixtures::random_matrix(rng, 0.3).exp(), Q = fixtures::random_matrix(rng, 0.3).exp();
  CHECK((pullback(pullback(a, P), Q) - pullback(a, P * Q)).max_abs() < 1e-10);
  CHECK((pullback(wedge(a, b), P) - wedge(pullback(a, P), pullback(b, P))).max_abs() < 1e-10);

  Metric g = random_metric(rng);
  Metric pg(P.transpose() * g.g() * P);
  CHECK((hodge_star(pullback(b, P), pg) - pullback(hodge_star(b, g), P)).max_abs() < 1e-9);

  Vec8 d;
  d << 1, 2, 3, 4, 5, 6, 7, 8;
  CHECK(pullback(Form::blade("1357"), Mat8(d.asDiagonal())).coeff("1357") == doctest::Approx(105.0));
}

TEST_CASE("two-forms and matrices") {
  std::mt19937_64 rng(5);
  Form a = random_form(rng, 2);
  CHECK((matrix_to_form2(form2_to_matrix(a)) - a).max_abs() < 1e-14);
  Mat8 X = form2_to_matrix(Form::blade("13", 2.0));
  CHECK(X(0, 2) == 2.0);
  CHECK(X(2, 0) == -2.0);
  Mat8 A = fixtures::random_matrix(rng, 1.0);
  CHECK(max_abs(Mat8(sym(A) + skew(A) - A)) < 1e-14);
}

TEST_CASE("degree mismatches are rejected") {
  CHECK_THROWS(Form(2) + Form(3));
  CHECK_THROWS(Form(9));
}
