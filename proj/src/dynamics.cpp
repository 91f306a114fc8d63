#include "cayley/dynamics.hpp"

#include "cayley/scenario.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

namespace cayley {

namespace {

struct Velocity {
  Form dphi;
  Mat8 dg;
};

Velocity velocity(const Form& phi, const Mat8& g, const LieAlgebra& alg, const IntegrateOptions& opt) {
  StateGeometry s(phi, Metric(g), alg);
  FlowRHS r = compute_rhs(opt.kind, s);
  return {r.dphi - phi * opt.lambda, 2.0 * r.h - 0.5 * opt.lambda * g};
}

double min_eigenvalue(const Mat8& g) { return Eigen::SelfAdjointEigenSolver<Mat8>(g).eigenvalues().minCoeff(); }

std::string degenerate_message(double t, double ev) {
  std::ostringstream os;
  os << "metric degenerate (possible finite-time singularity) at t = " << t << ", smallest eigenvalue " << ev;
  return os.str();
}

Mat8 symmetrize(const Mat8& g) { return 0.5 * (g + g.transpose()); }

}  // namespace

Trajectory integrate(const FlowState& s0, const LieAlgebra& alg, const IntegrateOptions& opt) {
  if (!(opt.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(opt.t_end >= s0.time)) throw std::invalid_argument("t_end must not precede the initial time");
  Trajectory out{s0};
  Form phi = s0.phi;
  Mat8 g = s0.metric.g();
  double t = s0.time;
  auto stage = [&](const Form& p, const Mat8& gg) -> Velocity {
    double ev = min_eigenvalue(gg);
    if (!(ev > opt.min_eigenvalue)) throw NumericalAbort(degenerate_message(t, ev), out.back());
    return velocity(p, symmetrize(gg), alg, opt);
  };
  const long steps = std::lround(std::ceil((opt.t_end - s0.time) / opt.dt - 1e-9));
  for (long n = 0; n < steps; ++n) {
    double h = std::min(opt.dt, opt.t_end - t);
    Velocity k1 = stage(phi, g);
    Velocity k2 = stage(phi + k1.dphi * (h / 2), g + (h / 2) * k1.dg);
    Velocity k3 = stage(phi + k2.dphi * (h / 2), g + (h / 2) * k2.dg);
    Velocity k4 = stage(phi + k3.dphi * h, g + h * k3.dg);
    phi = phi + (k1.dphi + k2.dphi * 2.0 + k3.dphi * 2.0 + k4.dphi) * (h / 6);
    g = symmetrize(g + (h / 6) * (k1.dg + 2.0 * k2.dg + 2.0 * k3.dg + k4.dg));
    t = s0.time + (n + 1 == steps ? opt.t_end - s0.time : (n + 1) * opt.dt);
    double ev = min_eigenvalue(g);
    if (!(ev > opt.min_eigenvalue)) throw NumericalAbort(degenerate_message(t, ev), out.back());
    FlowState next{phi, Metric(g), t};
    // Admissibility is scale-covariant; compare residuals relative to the size of phi.
    double scale = std::max(1e-300, phi.max_abs());
    AdmissibilityReport adm = check_admissible(CayleyForm(phi, next.metric), opt.admissibility_tol * scale);
    double worst = std::max({adm.self_dual_residual / scale, adm.volume_residual / (scale * scale),
                             adm.norm_residual / 14.0, adm.spectrum_residual});
    if (worst > opt.admissibility_tol) {
      std::ostringstream os;
      os << "admissibility lost at t = " << t << " (self-duality " << adm.self_dual_residual << ", volume "
         << adm.volume_residual << ", norm " << adm.norm_residual << ", spectrum " << adm.spectrum_residual << ")";
      throw NumericalAbort(os.str(), out.back());
    }
    out.push_back(std::move(next));
  }
  return out;
}

double step_halving_error(const FlowState& s0, const LieAlgebra& alg, const IntegrateOptions& opt) {
  IntegrateOptions half = opt;
  half.dt = opt.dt / 2;
  Form a = integrate(s0, alg, opt).back().phi;
  Form b = integrate(s0, alg, half).back().phi;
  return (a - b).max_abs();
}

SolitonReport soliton_check(const FlowState& s, const LieAlgebra& alg, RhsKind kind) {
  StateGeometry sg(s.phi, s.metric, alg);
  FlowRHS r = compute_rhs(kind, sg);
  double n2 = norm2(s.phi, s.metric);
  SolitonReport out;
  out.lambda = inner(r.dphi, s.phi, s.metric) / n2;
  out.residual = std::sqrt(std::max(0.0, norm2(r.dphi - s.phi * out.lambda, s.metric)));
  out.is_soliton = out.residual < 1e-8 * std::sqrt(n2);
  if (std::abs(out.lambda) < 1e-8)
    out.kind = "steady";
  else
    out.kind = out.lambda < 0 ? "shrinking" : "expanding";
  return out;
}

Form renormalised_rhs(const FlowState& s, const LieAlgebra& alg, double lambda, RhsKind kind) {
  StateGeometry sg(s.phi, s.metric, alg);
  return compute_rhs(kind, sg).dphi - s.phi * lambda;
}

ProbeResult stability_probe(const FlowState& base, const DeformationFamily& fam, const LieAlgebra& alg, double lambda,
                            double h0) {
  FlowState s0 = fam.at(0.0);
  double mismatch = std::max((s0.phi - base.phi).max_abs(), max_abs(s0.metric.g() - base.metric.g()));
  if (mismatch > 1e-12) throw std::invalid_argument("family mismatch at s = 0 for '" + fam.name + "'");
  auto V = [&](double s) { return renormalised_rhs(fam.at(s), alg, lambda); };
  auto D = [&](double h) { return inner((V(h) - V(-h)) * (0.5 / h), fam.direction, base.metric); };
  auto R = [&](double h) { return (4.0 * D(h / 2) - D(h)) / 3.0; };
  ProbeResult out;
  double h = h0;
  double prev = R(h);
  double cur = prev;
  for (int n = 0; n < 8; ++n) {
    h /= 2;
    cur = R(h);
    if (std::abs(cur - prev) <= 1e-6) {
      out.converged = true;
      break;
    }
    prev = cur;
  }
  out.inner = cur;
  out.rate = 2.0 * cur;
  out.step = h;
  if (std::abs(cur) < 1e-6)
    out.verdict = "zero mode";
  else
    out.verdict = cur > 0 ? "unstable" : "stable";
  return out;
}

namespace {

FlowState pulled_back(const FlowState& base, const Mat8& P, double s) {
  return {pullback(base.phi, P), Metric(P.transpose() * base.metric.g() * P), s};
}

}  // namespace

std::vector<DeformationFamily> builtin_families(const FlowState& base) {
  if ((base.phi - su3_cayley_form()).max_abs() > 1e-12 || !base.metric.is_identity())
    throw std::invalid_argument("unsupported base: deformation families are defined at the su3 structure");
  std::vector<DeformationFamily> out;
  const std::vector<std::pair<std::string, std::string>> pairs = {{"1235", "4678"}, {"1248", "3567"}, {"1267", "3458"},
                                                                  {"1346", "2578"}, {"1378", "2456"}, {"1457", "2368"},
                                                                  {"1568", "2347"}};
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const std::string first = pairs[n].first;
    Mat8 gen = Mat8::Zero();
    for (int i = 0; i < kDim; ++i) gen(i, i) = first.find(char('1' + i)) != std::string::npos ? 0.25 : -0.25;
    DeformationFamily f;
    f.name = "asd-exp-" + std::to_string(n);
    f.description = "exponential pair e^s e^{" + pairs[n].first + "} ... e^{-s} e^{" + pairs[n].second + "}";
    f.at = [base, gen](double s) { return pulled_back(base, (s * gen).exp(), s); };
    f.direction = derivation(gen.transpose(), base.phi);
    out.push_back(std::move(f));
  }
  {
    Form psi = Form::from_terms(4, {{"1234", 1}, {"5678", -1}});
    Mat8 S = Mat8::Zero();
    for (auto [i, j, v] : {std::tuple{0, 6, -1.0}, {1, 5, 1.0}, {2, 7, -1.0}, {3, 4, 1.0}}) {
      S(i, j) += v / 2;
      S(j, i) += v / 2;
    }
    DeformationFamily f;
    f.name = "asd-first-order";
    f.description = "phi + s (e^{1234} - e^{5678}), g + s(-e^1 e^7 + e^2 e^6 - e^3 e^8 + e^4 e^5)";
    f.at = [base, psi, S](double s) { return FlowState{base.phi + psi * s, Metric(base.metric.g() + s * S), s}; };
    f.direction = psi;
    out.push_back(std::move(f));
  }
  {
    Form U = Form::from_terms(4, {{"2347", -1}, {"2368", 1}, {"2456", 1}, {"2578", -1},
                                  {"1346", -1}, {"1378", 1}, {"1457", 1}, {"1568", 1}});
    Form W = Form::from_terms(4, {{"2346", 1}, {"2378", 1}, {"2457", 1}, {"2568", 1},
                                  {"1347", -1}, {"1368", -1}, {"1456", -1}, {"1578", 1}});
    DeformationFamily f;
    f.name = "omega7";
    f.description = "phi + (1 - cos s) U + sin s W with fixed metric";
    f.at = [base, U, W](double s) { return FlowState{base.phi + U * (1 - std::cos(s)) + W * std::sin(s), base.metric, s}; };
    f.direction = W;
    out.push_back(std::move(f));
  }
  {
    CayleyForm c(base.phi, base.metric);
    Mat8 X = pi2_7_matrix(form2_to_matrix(Form::blade("12")), c);
    DeformationFamily f;
    f.name = "omega7-rot";
    f.description = "pullback of phi by exp(s X), X the Lambda^2_7 part of e^{12}; metric preserved";
    f.at = [base, X](double s) { return pulled_back(base, (s * X).exp(), s); };
    f.direction = derivation(X.transpose(), base.phi);
    out.push_back(std::move(f));
  }
  return out;
}

DeformationFamily find_family(const FlowState& base, const std::string& name) {
  std::string known;
  for (auto& f : builtin_families(base)) {
    if (f.name == name) return f;
    known += (known.empty() ? "" : ", ") + f.name;
  }
  throw std::invalid_argument("unknown family '" + name + "' (" + known + ")");
}

FlowState rescale(const FlowState& s, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("rescale factor must be positive");
  return {s.phi * std::pow(c, 4), Metric(c * c * s.metric.g()), s.time};
}

FlowState su3_closed_form(const FlowState& s0, double t) {
  double f = 0.25 * (2 - 3 * t) * (2 - 3 * t);
  return {s0.phi * f, Metric(std::sqrt(f) * s0.metric.g()), s0.time + t};
}

FlowState hk_closed_form(const FlowState& s0, double k, double t) {
  double u = 2 * k * k * t + 1;
  Form phi = s0.phi;
  for (int n = 0; n < phi.coeffs().size(); ++n) {
    bool has8 = basis::mask(4, n) >> 7 & 1;
    phi.coeffs()[n] *= has8 ? 1.0 / u : 1.0 / (u * u);
  }
  Mat8 g = s0.metric.g();
  Mat8 D = Mat8::Identity() / std::sqrt(u);
  D(7, 7) = std::sqrt(u);
  return {phi, Metric(D * g * D), s0.time + t};
}

}  // namespace cayley
