#include "fixtures.hpp"

#include <doctest.h>

using namespace cayley;

TEST_CASE("rhs names") {
  for (auto k : {RhsKind::Gradient, RhsKind::Harmonic, RhsKind::RicciHarmonic}) CHECK(parse_rhs_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_rhs_kind("heat"), std::invalid_argument);
}

TEST_CASE("su3 curvature quantities") {
  auto s = fixtures::builtin_sample("su3");
  StateGeometry sg(s.phi, s.metric, s.alg);
  Mat8 ric = ricci_raw(sg.torsion.T, sg.geo);
  CHECK(max_abs(Mat8(ric - 0.25 * Mat8::Identity())) < 1e-14);
  CHECK(scal_forms(sg.cayley, sg.torsion.t1_8, sg.torsion.t5_48, s.alg) == doctest::Approx(2.0));
  Vec8 tt;
  tt << 0.375, 0.25, 0.375, 0.375, 0.375, 0.375, 0.625, 0.25;
  CHECK(max_abs(Mat8(t_star_t(sg.torsion.T, s.metric).diagonal().asDiagonal().toDenseMatrix() - Mat8(tt.asDiagonal()))) < 1e-14);
  FlowRHS rh = ricci_harmonic_rhs(sg);
  CHECK(max_abs(Mat8(rh.A + 0.25 * Mat8::Identity())) < 1e-14);
  CHECK((rh.dphi + s.phi).max_abs() < 1e-14);
  FlowRHS harm = harmonic_rhs(sg);
  CHECK(harm.dphi.max_abs() < 1e-14);
}

TEST_CASE("H(1) gradient rhs") {
  auto s = fixtures::builtin_sample("hk-t5");
  StateGeometry sg(s.phi, s.metric, s.alg);
  Vec8 d = Vec8::Constant(-1.0);
  d[7] = 1.0;
  Mat8 ric = ricci_raw(sg.torsion.T, sg.geo);
  Vec8 rd = Vec8::Zero();
  rd[7] = -2;
  CHECK(max_abs(Mat8(ric - Mat8(rd.asDiagonal()))) < 1e-14);
  CHECK(max_abs(t_star_t(sg.torsion.T, s.metric)) < 1e-14);
  FlowRHS g = gradient_rhs_raw(sg);
  CHECK(max_abs(Mat8(g.A - Mat8(d.asDiagonal()))) < 1e-14);
  CHECK((g.dphi - fixtures::printed_hk_rhs(s.phi)).max_abs() < 1e-14);
}

TEST_CASE("raw and forms routes agree on generic structures") {
  for (const auto& s : fixtures::random_states(41, 9)) {
    CAPTURE(s.label);
    StateGeometry sg(s.phi, s.metric, s.alg);
    const TorsionData& td = sg.torsion;
    Mat8 ric = ricci_raw(td.T, sg.geo);
    double sc = 1 + max_abs(ric);
    CHECK(max_abs(Mat8(ric - ricci_levi_civita(sg.geo))) < 1e-10 * sc);
    CHECK(max_abs(Mat8(ric - ricci_forms(sg.cayley, td.t1_8, td.t5_48, s.alg))) < 1e-10 * sc);
    CHECK(scal_forms(sg.cayley, td.t1_8, td.t5_48, s.alg) == doctest::Approx((s.metric.inv() * ric).trace()).epsilon(1e-10));
    CHECK(max_abs(Mat8(t_star_t(td.T, s.metric) - t_star_t_forms(sg.cayley, td.t1_8, td.t5_48))) < 1e-10 * sc);
    FlowRHS raw = gradient_rhs_raw(sg), forms = gradient_rhs_forms(sg);
    CHECK(max_abs(Mat8(raw.A - forms.A)) < 1e-10 * (1 + max_abs(raw.A)));
    CHECK((raw.dphi - forms.dphi).max_abs() < 1e-10 * (1 + raw.dphi.max_abs()));
  }
}

TEST_CASE("normalised rhs has no Lambda^2_21 part") {
  std::mt19937_64 rng(45);
  for (const auto& s : fixtures::random_states(42, 3)) {
    StateGeometry sg(s.phi, s.metric, s.alg);
    for (auto kind : {RhsKind::Gradient, RhsKind::Harmonic, RhsKind::RicciHarmonic}) {
      FlowRHS r = compute_rhs(kind, sg);
      Mat8 X = skew(r.A);
      CHECK(max_abs(Mat8(X - pi2_7_matrix(X, sg.cayley))) < 1e-10);
      CHECK(max_abs(Mat8(r.h - sym(r.A))) < 1e-15);
      CHECK((r.dphi - diamond(r.A, s.phi, s.metric)).max_abs() < 1e-12);
      Mat8 A21 = skew(fixtures::random_matrix(rng, 1.0));
      A21 -= pi2_7_matrix(A21, sg.cayley);
      CHECK(diamond(A21, s.phi, s.metric).max_abs() < 1e-10);
    }
  }
}

TEST_CASE("harmonic flow preserves the metric") {
  for (const auto& s : fixtures::random_states(43, 3)) {
    StateGeometry sg(s.phi, s.metric, s.alg);
    CHECK(max_abs(harmonic_rhs(sg).h) < 1e-12);
  }
}

TEST_CASE("T5 quadratic terms") {
  for (const auto& s : fixtures::random_states(44, 3)) {
    StateGeometry sg(s.phi, s.metric, s.alg);
    Mat8 S = t5_square(sg.torsion.t5_48, s.metric);
    CHECK(max_abs(Mat8(S - S.transpose())) < 1e-12);
    // contracting g(e_a _| *t5, e_b _| *t5) with g^{ab} gives 3 |t5|^2
    CHECK((s.metric.inv() * S).trace() == doctest::Approx(3 * norm2(sg.torsion.t5_48, s.metric)).epsilon(1e-10));
  }
}

TEST_CASE("rhs scales under rescaling") {
  for (const auto& name : {"su3", "hk-t5"}) {
    auto s = fixtures::builtin_sample(name);
    FlowRHS r = gradient_rhs_raw(StateGeometry(s.phi, s.metric, s.alg));
    for (double c : {0.5, 2.0}) {
      FlowRHS rc = gradient_rhs_raw(StateGeometry(s.phi * std::pow(c, 4), Metric(c * c * s.metric.g()), s.alg));
      CHECK(max_abs(Mat8(rc.A - r.A)) < 1e-13);
      CHECK((rc.dphi - r.dphi * std::pow(c, 2)).max_abs() < 1e-12);
    }
  }
}
