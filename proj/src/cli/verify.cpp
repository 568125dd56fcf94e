#include "dirac/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "dirac/constraints.hpp"
#include "dirac/dynamics.hpp"
#include "dirac/errors.hpp"
#include "dirac/models/klauder.hpp"
#include "dirac/models/maxwell.hpp"
#include "dirac/models/particle.hpp"
#include "dirac/polynomial.hpp"
#include "dirac/quantum_circle.hpp"
#include "dirac/sampling.hpp"

namespace dirac::cli {

namespace {

class Checks {
 public:
  Checks(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  void below(const std::string& name, double value, double tol) {
    out_.push_back({suite_, name, value, tol, false, value <= tol});
  }
  void at_least(const std::string& name, double value, double min) {
    out_.push_back({suite_, name, value, min, true, value >= min});
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

double max_abs_diff(double acc, double a, double b) { return std::max(acc, std::abs(a - b)); }

ScalarField random_poly(const ChartPtr& chart, Sampler& rng, const std::string& name,
                        std::size_t terms = 4, unsigned max_power = 2) {
  return MultiPolynomial::random(chart->dim(), terms, max_power, rng).field(chart, name);
}

void suite_core(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Checks c("core", out);
  Sampler rng(o.seed);
  const ChartPtr chart = make_canonical_chart(2);
  auto random_point = [&](double lo, double hi) {
    std::vector<double> z(chart->dim());
    for (auto& v : z) v = rng.uniform(lo, hi);
    return PhaseSpacePoint(chart, std::move(z));
  };

  double canon = 0.0;
  const PhaseSpacePoint x0 = random_point(-2, 2);
  for (std::size_t i = 0; i < chart->dim(); ++i) {
    for (std::size_t j = 0; j < chart->dim(); ++j) {
      const double oracle = (i < 2 && j == i + 2) ? 1.0 : (j < 2 && i == j + 2 ? -1.0 : 0.0);
      canon = max_abs_diff(canon,
                           poisson_bracket(ScalarField::coordinate(chart, i),
                                           ScalarField::coordinate(chart, j), x0),
                           oracle + o.oracle_perturbation);
    }
  }
  c.below("canonical_relations", canon, 0.0);

  double anti = 0.0;
  double leibniz = 0.0;
  double jacobi = 0.0;
  for (int n = 0; n < 50; ++n) {
    const MultiPolynomial pa = MultiPolynomial::random(4, 3, 2, rng);
    const MultiPolynomial pb = MultiPolynomial::random(4, 3, 2, rng);
    const ScalarField a = pa.field(chart, "a");
    const ScalarField b = pb.field(chart, "b");
    const ScalarField cf = random_poly(chart, rng, "c", 3, 2);
    const ScalarField ab = (pa * pb).field(chart, "ab");
    const PhaseSpacePoint x = random_point(-1, 1);
    anti = std::max(anti, std::abs(poisson_bracket(a, b, x) + poisson_bracket(b, a, x)));
    const double lhs = poisson_bracket(ab, cf, x);
    const double rhs = a(x) * poisson_bracket(b, cf, x) + b(x) * poisson_bracket(a, cf, x);
    leibniz = std::max(leibniz, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

    auto bracket_field = [&](const ScalarField& f, const ScalarField& g) {
      return ScalarField::numerical(chart, "{f,g}", [f, g](std::span<const double> z) {
        std::vector<double> gf(z.size());
        std::vector<double> gg(z.size());
        f.gradient(z, gf);
        g.gradient(z, gg);
        return poisson_bracket(gf, gg);
      });
    };
    const double cyc = poisson_bracket(bracket_field(a, b), cf, x) +
                       poisson_bracket(bracket_field(b, cf), a, x) +
                       poisson_bracket(bracket_field(cf, a), b, x);
    jacobi = std::max(jacobi, std::abs(cyc));
  }
  c.below("antisymmetry", anti, 1e-12);
  c.below("leibniz", leibniz, 1e-10);
  c.below("jacobi", jacobi, 1e-8);

  const KlauderModel k(1.0, 1.0);
  const PhaseSpacePoint kx(KlauderModel::polar_chart(), {1.0, 0.0, 1.0, 0.0});
  c.below("klauder_chi_C_bracket",
          std::abs(poisson_bracket(k.gauge_condition(), k.constraint(), kx) -
                   (2.0 + o.oracle_perturbation)),
          1e-12);
  double grad = 0.0;
  for (int n = 0; n < 20; ++n) {
    grad = std::max(grad, gradient_consistency_check(k.constraint(), k.sample_point(rng)).max_rel_err);
  }
  c.below("gradient_consistency", grad, 1e-6);
  const ScalarField cfield = k.constraint();
  const ScalarField wrong = ScalarField::with_gradient(
      KlauderModel::polar_chart(), "wrong",
      [cfield](std::span<const double> z) { return cfield.value(z); },
      [cfield](std::span<const double> z, std::span<double> g) {
        cfield.gradient(z, g);
        for (auto& v : g) v += 1.0;
      });
  c.at_least("gradient_negative_control", gradient_consistency_check(wrong, kx).max_rel_err, 0.1);
}

void suite_constraints(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Checks c("constraints", out);
  Sampler rng(o.seed + 1);
  const KlauderModel k(1.0, 1.0);
  const ChartPtr& polar = KlauderModel::polar_chart();
  const ConstraintSet cs = k.second_class_set();

  const PhaseSpacePoint x(polar, {1.0, 0.0, 1.0, 0.0});
  const Eigen::MatrixXd m = constraint_matrix(cs, x);
  c.below("klauder_matrix", std::max({std::abs(m(0, 1) - (2.0 + o.oracle_perturbation)),
                                      std::abs(m(1, 0) + 2.0), std::abs(m(0, 0)), std::abs(m(1, 1))}),
          1e-12);

  std::vector<PhaseSpacePoint> surface;
  for (int n = 0; n < 20; ++n) surface.push_back(k.sample_surface_point(rng));
  const auto second = classify(cs, surface);
  c.below("classify_second_class", second.kind == ConstraintClass::second_class ? 0.0 : 1.0, 0.0);
  double det_err = 0.0;
  for (std::size_t i = 0; i < surface.size(); ++i) {
    const double r = surface[i][0];
    const double oracle = 4.0 * r * r * r * r + o.oracle_perturbation;
    det_err = std::max(det_err, std::abs(second.sample_dets[i] - oracle) / oracle);
  }
  c.below("classify_det", det_err, 1e-12);
  const auto first = classify(k.first_class_set(), surface);
  c.below("classify_first_class", first.kind == ConstraintClass::first_class ? 0.0 : 1.0, 0.0);

  const ChartPtr chart = make_canonical_chart(2);
  const ConstraintSet empty = ConstraintSet::empty(chart);
  double reduce = 0.0;
  for (int n = 0; n < 20; ++n) {
    std::vector<double> z(4);
    for (auto& v : z) v = rng.uniform(-2, 2);
    const PhaseSpacePoint y(chart, z);
    const ScalarField a = random_poly(chart, rng, "a");
    const ScalarField b = random_poly(chart, rng, "b");
    reduce = max_abs_diff(reduce, dirac_bracket(a, b, empty, y), poisson_bracket(a, b, y));
  }
  c.below("empty_set_is_poisson", reduce, 1e-12);

  std::vector<PhaseSpacePoint> points;
  for (int n = 0; n < 30; ++n) points.push_back(k.sample_point(rng));
  double observable = 0.0;
  for (int n = 0; n < 10; ++n) {
    observable = std::max(observable, observable_check(random_poly(polar, rng, "A"), cs, points).max_abs);
  }
  c.below("observable_property", observable, 1e-9);

  const SurfaceParametrization param = k.surface();
  double mn = 0.0;
  for (int n = 0; n < 10; ++n) {
    const ScalarField a = random_poly(polar, rng, "a");
    const ScalarField b = random_poly(polar, rng, "b");
    mn = std::max(mn, maskawa_nakajima_check(a, b, cs, param, k.sample_reduced_point(rng)).abs_diff);
  }
  c.below("maskawa_nakajima", mn, 1e-8);

  double jac = 0.0;
  for (int n = 0; n < 20; ++n) {
    jac = std::max(jac, fp_jacobian_check(k.gauge_condition(), k.constraint(), 0,
                                          k.sample_point(rng)).abs_diff);
  }
  c.below("fp_jacobian", jac, 1e-9);
  const std::vector<ScalarField> chis{k.gauge_condition()};
  const std::vector<ScalarField> cons{k.constraint()};
  c.below("fp_determinant", std::abs(fp_determinant(chis, cons, x) - (2.0 + o.oracle_perturbation)),
          1e-12);
}

void suite_klauder(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Checks c("klauder", out);
  Sampler rng(o.seed + 2);
  const ChartPtr& polar = KlauderModel::polar_chart();
  const double eps = o.oracle_perturbation;
  for (const double alpha : {1.0, 0.7}) {
    const KlauderModel k(alpha, 1.3);
    const ConstraintSet cs = k.second_class_set();
    std::vector<ScalarField> coords;
    for (std::size_t i = 0; i < 4; ++i) coords.push_back(ScalarField::coordinate(polar, i));
    double table = 0.0;
    for (int n = 0; n < 200; ++n) {
      const PhaseSpacePoint x = k.sample_point(rng);
      const DiracStructure db(cs, x);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
          table = max_abs_diff(table, db.bracket(coords[i], coords[j]),
                               k.dirac_oracle(polar->label(i), polar->label(j), x) + eps);
        }
      }
    }
    const std::string tag = alpha == 1.0 ? "" : "_alpha0.7";
    c.below("dirac_table" + tag, table, 1e-9);

    double denom = 0.0;
    double r_phi = 0.0;
    double rate = 0.0;
    double residual = 0.0;
    Polynomial1D u({0.2, -0.3, 0.5, 0.1});
    const KlauderModel kp(alpha, 1.3, 0.0, 1.0, u);
    const ScalarField phi = ScalarField::coordinate(polar, 1);
    const ScalarField r = ScalarField::coordinate(polar, 0);
    for (int n = 0; n < 100; ++n) {
      const PhaseSpacePoint y = kp.sample_reduced_point(rng);
      const double pphi = y[1];
      const PhaseSpacePoint x = kp.embedded_point(y[0], pphi);
      const double kk = kp.k();
      denom = max_abs_diff(denom, kp.bracket_denominator(x), 2.0 * (kk * kk + pphi * pphi) + eps);
      const DiracStructure db(kp.second_class_set(), x);
      r_phi = max_abs_diff(r_phi, db.bracket(r, phi),
                           -x[0] * pphi / (2.0 * (pphi * pphi + kk * kk)) + eps);
      rate = max_abs_diff(rate, db.bracket(phi, kp.physical_hamiltonian()),
                          kp.phi_rate(pphi) + eps);
      for (double v : kp.second_class_set().values(x)) residual = std::max(residual, std::abs(v));
    }
    c.below("surface_denominator" + tag, denom, 1e-9);
    c.below("surface_r_phi" + tag, r_phi, 1e-9);
    c.below("phi_rate" + tag, rate, 1e-9);
    c.below("reduced_point_on_surface" + tag, residual, 1e-12);

    double rot = 0.0;
    for (int n = 0; n < 20; ++n) {
      const MultiPolynomial pr = MultiPolynomial::random(4, 4, 2, rng);
      // Drop phi dependence: rotation-invariant field of (r, p_r, p_phi).
      std::vector<Monomial> terms = pr.terms();
      for (auto& t : terms) t.powers[1] = 0;
      const ScalarField f = MultiPolynomial(4, terms).field(polar, "f");
      const PhaseSpacePoint x = k.sample_point(rng);
      rot = std::max(rot, std::abs(DiracStructure(cs, x).bracket(f, coords[3])));
    }
    c.below("rotational_invariance" + tag, rot, 1e-9);
  }
  const KlauderModel k(1.0, 1.0);
  const auto rp = k.reduced_point(0.0);
  c.below("reduced_point_example", std::max(std::abs(rp.r_star - 1.0 - eps), std::abs(rp.pr_star - 1.0)),
          1e-12);
}

void suite_dynamics(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Checks c("dynamics", out);
  const double eps = o.oracle_perturbation;
  const KlauderModel k(1.0, 1.0);
  const ScalarField gen = k.cartesian_constraint();
  const ConstraintSet monitor(KlauderModel::cartesian_chart(), {gen});
  const PhaseSpacePoint g0(KlauderModel::cartesian_chart(), {1.0, 0.0, 1.0, 0.0});
  const FlowSpec gauge = GaugeFlow{gen, [](double) { return 1.0; }};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.steps = 1000;
  const Trajectory tr = evolve(g0, gauge, cfg, &monitor);
  const auto closed = gauge_closed_form_klauder({1.0, 0.0}, {1.0, 0.0}, 1.0, 1.0);
  const auto& end = tr.points.back();
  c.below("gauge_closed_form",
          std::max({std::abs(end[0] - closed.q[0] - eps), std::abs(end[1] - closed.q[1]),
                    std::abs(end[2] - closed.p[0]), std::abs(end[3] - closed.p[1])}),
          1e-8);
  c.below("gauge_constraint_residual", constraint_drift(tr).front().max_residual, 1e-10);

  // RK4 keeps C = 0 exactly on this linear flow, so the dt^4 scaling is seen
  // in the drift of C from an off-surface start.
  const PhaseSpacePoint off(KlauderModel::cartesian_chart(), {1.0, 0.0, 0.3, 0.5});
  const double c_off = gen(off);
  const ConstraintSet shifted(
      KlauderModel::cartesian_chart(),
      {ScalarField::with_gradient(
          KlauderModel::cartesian_chart(), "C-C0",
          [gen, c_off](std::span<const double> z) { return gen.value(z) - c_off; },
          [gen](std::span<const double> z, std::span<double> g) { gen.gradient(z, g); })});
  auto coarse_residual = [&](double dt) {
    IntegratorConfig cc;
    cc.dt = dt;
    cc.steps = static_cast<std::size_t>(std::lround(1.0 / dt));
    return constraint_drift(evolve(off, gauge, cc, &shifted)).front().max_residual;
  };
  c.at_least("gauge_residual_order", coarse_residual(0.1) / coarse_residual(0.05), 15.0);

  const KlauderModel kp(1.0, 1.0, 0.0, 1.0, Polynomial1D({0.0, 0.0, 0.5}));
  const PhaseSpacePoint x0 = kp.embedded_point(0.3, 1.0);
  IntegratorConfig dc;
  dc.dt = 1e-3;
  dc.steps = 2000;
  dc.record_every = 100;
  const Trajectory dt = evolve(x0, DiracFlow{kp.physical_hamiltonian(), kp.second_class_set(), std::nullopt}, dc);
  const double rate = kp.phi_rate(1.0);
  double constant = 0.0;
  double phi_err = 0.0;
  for (std::size_t i = 0; i < dt.points.size(); ++i) {
    const auto& x = dt.points[i];
    for (std::size_t j : {0u, 2u, 3u}) constant = max_abs_diff(constant, x[j], x0[j]);
    phi_err = max_abs_diff(phi_err, x[1], x0[1] + (rate + eps) * dt.times[i]);
  }
  c.below("dirac_flow_circular", constant, 1e-8);
  c.below("dirac_flow_phi", phi_err, 1e-8);
  double drift = 0.0;
  for (const auto& d : constraint_drift(dt)) drift = std::max(drift, d.max_residual);
  c.below("dirac_flow_residual", drift, 1e-8);

  const ChartPtr chart = make_canonical_chart(2);
  const ScalarField h = ScalarField::expression(chart, "H", [](auto z) {
    using T = std::remove_cv_t<typename decltype(z)::element_type>;
    return T(0.5) * (z[2] * z[2] + z[3] * z[3] + z[0] * z[0] + z[1] * z[1]) +
           T(0.1) * z[0] * z[0] * z[1] * z[1];
  });
  IntegratorConfig ec;
  ec.dt = 1e-3;
  ec.steps = 10000;
  ec.record_every = 100;
  const PhaseSpacePoint e0(chart, {0.5, -0.3, 0.2, 0.7});
  const Trajectory et = evolve(e0, PoissonFlow{h}, ec);
  double energy = 0.0;
  const double h0 = h(e0);
  for (const auto& x : et.points) energy = std::max(energy, std::abs(h(x) - h0) / std::max(1.0, std::abs(h0)));
  c.below("energy_conservation", energy, 1e-8);

  const PhaseSpacePoint mx(KlauderModel::cartesian_chart(), {1.0, 0.0, 2.0, 0.0});
  c.below("multiplier_example", std::abs(multiplier_from_gauge(mx, 5.0, 1.0) - 1.0 - eps), 1e-15);
}

void suite_particle(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Checks c("particle", out);
  Sampler rng(o.seed + 3);
  const double eps = o.oracle_perturbation;
  const RelativisticParticle particle(1.3, 3);
  std::vector<PhaseSpacePoint> samples;
  for (int n = 0; n < 50; ++n) samples.push_back(particle.sample_on_shell(rng));
  const auto rep = particle.bracket_suite(samples);
  c.below("chi_C_equals_p0", rep.chi_c_err + eps, 1e-10);
  c.below("x_p_delta", rep.xp_err + eps, 1e-9);
  c.below("x_x_zero", rep.xx_max, 1e-9);
  c.below("p_p_zero", rep.pp_max, 1e-9);

  const RelativisticParticle p4(4.0, 3);
  const std::vector<double> x{0.0, 0.0, 0.0};
  const std::vector<double> p{3.0, 0.0, 0.0};
  c.below("trajectory_example", std::abs(p4.trajectory(x, p, 10.0)[0] - 6.0 - eps), 1e-12);

  const std::vector<double> xs{0.5, -1.0, 2.0};
  const std::vector<double> ps{0.7, -0.4, 1.1};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.steps = 2000;
  cfg.record_every = 200;
  const PhaseSpacePoint start = particle.on_shell_point(xs, ps, 0.0);
  const Trajectory tr =
      evolve(start, DiracFlow{ScalarField::constant(particle.chart(), 0.0), particle.second_class_set(0.0),
                              particle.time_dependence()},
             cfg);
  double traj = 0.0;
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    const auto closed = particle.trajectory(xs, ps, tr.times[i]);
    for (std::size_t j = 0; j < 3; ++j) traj = max_abs_diff(traj, tr.points[i][1 + j], closed[j] + eps);
  }
  c.below("trajectory_rk4", traj, 1e-8);
}

void suite_maxwell(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Checks c("maxwell", out);
  const double eps = o.oracle_perturbation;
  const LatticeMaxwell lat(2);
  const Eigen::MatrixXd p = lat.transverse_projector();
  const auto blocks = lat.dirac_matrix();
  c.below("dirac_equals_projector", (blocks.ae - p).cwiseAbs().maxCoeff() + eps, 1e-8);
  c.below("dirac_aa_zero", blocks.aa.cwiseAbs().maxCoeff(), 1e-8);
  c.below("dirac_ee_zero", blocks.ee.cwiseAbs().maxCoeff(), 1e-8);
  c.below("projector_idempotent", (p * p - p).cwiseAbs().maxCoeff(), 1e-10);
  c.below("projector_symmetric", (p - p.transpose()).cwiseAbs().maxCoeff(), 1e-10);
  const double n = static_cast<double>(lat.sites());
  c.below("projector_trace", std::abs(p.trace() - (2.0 * n + 1.0) - eps), 1e-10);

  const LatticeMaxwell lat4(4);
  const Eigen::VectorXd a0 = lat4.eigenmode(1);
  const Eigen::VectorXd e0 = Eigen::VectorXd::Zero(a0.size());
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.steps = 2000;
  cfg.record_every = 100;
  const Trajectory tr = lat4.evolve(a0, e0, cfg);
  const double omega = std::sqrt(lat4.eigenmode_omega2(1));
  const double e_start = lat4.energy(a0, e0);
  double energy = 0.0;
  double gauss = 0.0;
  double mode = 0.0;
  const auto m = static_cast<Eigen::Index>(lat4.components());
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    const auto z = tr.points[i].coords();
    const Eigen::Map<const Eigen::VectorXd> a(z.data(), m);
    const Eigen::Map<const Eigen::VectorXd> e(z.data() + m, m);
    energy = std::max(energy, std::abs(lat4.energy(a, e) - e_start) / e_start);
    gauss = std::max(gauss, tr.residuals[i][0]);
    mode = max_abs_diff(mode, a.dot(a0) / a0.squaredNorm(), std::cos(omega * tr.times[i]) + eps);
  }
  c.below("energy_conservation", energy, 1e-8);
  c.below("gauss_residual", gauss, 1e-9);
  c.below("eigenmode_oscillation", mode, 1e-8);

  Eigen::VectorXd longitudinal = lat4.gradient_operator() * lat4.eigenmode(1).head(static_cast<Eigen::Index>(lat4.sites()));
  bool rejected = false;
  try {
    lat4.evolve(longitudinal, e0, cfg);
  } catch (const UsageError&) {
    rejected = true;
  }
  c.below("longitudinal_rejected", rejected ? 0.0 : 1.0, 0.0);
}

CircleState random_state(Sampler& rng, int m_max, int modes) {
  std::vector<Complex> coeffs(static_cast<std::size_t>(2 * m_max + 1));
  for (int i = 0; i < modes; ++i) {
    const auto idx = rng.below(coeffs.size());
    coeffs[idx] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  return normalize(CircleState(m_max, std::move(coeffs)));
}

void suite_quantum(const VerifyOptions& o, std::vector<CheckResult>& out) {
  Checks c("quantum", out);
  Sampler rng(o.seed + 4);
  const double eps = o.oracle_perturbation;
  const KlauderModel k(1.0, 1.0, 0.0, 1.0, Polynomial1D({0.0, 0.3, 0.5}));
  const SpectrumTable table(k, 8);

  double phi = 0.0;
  double norm = 0.0;
  double td = 0.0;
  for (int n = 0; n < 20; ++n) {
    const CircleState s = random_state(rng, 8, 5);
    const double t = rng.uniform(0, 10);
    phi = max_abs_diff(phi, expect_phi(s, table, t).value, expect_phi_quadrature(s, table, t) + eps);
    norm = std::max(norm, std::abs(evolve_static(s, table, t).norm2() - 1.0));
    const CircleState a = evolve_static(s, table, t);
    const CircleState b = evolve_time_dependent(s, k, 0.0, t, 64);
    norm = std::max(norm, std::abs(b.norm2() - 1.0));
    for (int m = -8; m <= 8; ++m) td = std::max(td, std::abs(a.coeff(m) - b.coeff(m)));
  }
  c.below("phi_analytic_vs_quadrature", phi, 1e-6);
  c.below("norm_preserved", norm, 1e-14);
  c.below("constant_k_reduces_to_static", td, 1e-12);
  c.below("single_mode_phi_is_pi",
          std::abs(expect_phi(CircleState::single_mode(8, 3), table, 2.0).value - std::numbers::pi - eps),
          0.0);

  const KlauderModel k0(1.0, 0.0);
  const auto red = expect_reduced(CircleState::single_mode(4, 1), SpectrumTable(k0, 4));
  c.below("expect_reduced_example",
          std::max({std::abs(red.r - 1.0 - eps), std::abs(red.pr), std::abs(red.pphi - 1.0)}), 1e-12);

  const KlauderModel ramp(1.0, 0.0, 1.0, 1.0, Polynomial1D({0.0, 1.0}));
  c.below("ramp_phase_integral", std::abs(phase_integral(ramp, 0, 0.0, 1.0, 1u << 22) - 2.0 / 3.0 - eps),
          1e-10);

  std::vector<Complex> two(3);
  two[1] = two[2] = 1.0 / std::sqrt(2.0);
  const auto cart = expect_cartesian(CircleState(1, two), SpectrumTable(KlauderModel(1.0, 1.0), 1), 0.0);
  c.below("cartesian_example", std::abs(cart.xy - Complex(0.5 + eps, 0.0)), 1e-12);
}

using SuiteFn = void (*)(const VerifyOptions&, std::vector<CheckResult>&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"core", &suite_core},         {"constraints", &suite_constraints},
      {"klauder", &suite_klauder},   {"dynamics", &suite_dynamics},
      {"particle", &suite_particle}, {"maxwell", &suite_maxwell},
      {"quantum", &suite_quantum}};
  return r;
}

}  // namespace

std::vector<std::string> verify_suites() {
  std::vector<std::string> names{"all"};
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::vector<CheckResult> run_verify(std::string_view suite, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  bool found = false;
  for (const auto& [name, fn] : registry()) {
    if (suite == "all" || suite == name) {
      fn(opts, out);
      found = true;
    }
  }
  if (!found) throw UsageError("unknown verify suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace dirac::cli
