#include <cmath>
#include <vector>

#include "doctest.h"

#include "dirac/dynamics.hpp"
#include "dirac/errors.hpp"
#include "dirac/models/klauder.hpp"
#include "dirac/polynomial.hpp"

using namespace dirac;

namespace {

IntegratorConfig config(double dt, std::size_t steps) {
  IntegratorConfig c;
  c.dt = dt;
  c.steps = steps;
  return c;
}

// r* written out independently of the model class.
double radius(double k, double pphi, double alpha) {
  return std::pow((k * k + pphi * pphi) / (alpha * alpha), 0.25);
}

}  // namespace

TEST_CASE("integrator config validation") {
  auto c = config(0.0, 10);
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = config(1e-3, 10);
  c.record_every = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  CHECK_NOTHROW(config(1e-3, 0).validate());
}

TEST_CASE("gauge closed form examples") {
  auto s = gauge_closed_form_klauder({1.0, 0.0}, {0.0, 0.0}, 1.0, 0.0);
  CHECK(s.q[0] == 1.0);
  CHECK(s.p[0] == 0.0);
  auto u = gauge_closed_form_klauder({1.0, 0.0}, {0.0, 0.0}, 2.0, 0.5);
  CHECK(u.q[0] == doctest::Approx(std::cosh(1.0)));
  CHECK(u.p[0] == doctest::Approx(2.0 * std::sinh(1.0)));
  CHECK_THROWS_AS(gauge_closed_form_klauder({1.0, 0.0}, {0.0, 0.0}, 0.0, 1.0), UsageError);
}

TEST_CASE("gauge flow follows the hyperbolic closed form") {
  Sampler rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const double alpha = rng.uniform(0.5, 1.5);
    KlauderModel m(alpha, 1.0);
    std::array<double, 2> q{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    std::array<double, 2> p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    PhaseSpacePoint x0(KlauderModel::cartesian_chart(), {q[0], q[1], p[0], p[1]});
    GaugeFlow flow{m.cartesian_constraint(), [](double) { return 1.0; }};
    auto traj = evolve(x0, flow, config(1e-3, 1000));
    auto ref = gauge_closed_form_klauder(q, p, alpha, 1.0);
    const auto& end = traj.points.back();
    CHECK(traj.times.back() == doctest::Approx(1.0));
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(end.q(i) - ref.q[i]) < 1e-8);
      CHECK(std::abs(end.p(i) - ref.p[i]) < 1e-8);
    }
  }
}

TEST_CASE("RK4 error falls by sixteen when the step halves") {
  KlauderModel m(1.0, 1.0);
  PhaseSpacePoint x0(KlauderModel::cartesian_chart(), {0.3, -0.2, 0.5, 0.1});
  GaugeFlow flow{m.cartesian_constraint(), [](double) { return 1.0; }};
  auto ref = gauge_closed_form_klauder({0.3, -0.2}, {0.5, 0.1}, 1.0, 2.0);
  auto err = [&](double dt, std::size_t steps) {
    auto end = evolve(x0, flow, config(dt, steps)).points.back();
    return std::abs(end.q(0) - ref.q[0]);
  };
  const double ratio = err(0.1, 20) / err(0.05, 40);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("a zero Hamiltonian leaves the start point fixed") {
  auto c = make_canonical_chart(2);
  PhaseSpacePoint x0(c, {0.1, 0.2, 0.3, 0.4});
  auto zero = ScalarField::constant(c, 0.0);
  auto traj = evolve(x0, PoissonFlow{zero}, config(0.1, 5));
  CHECK(traj.points.size() == 6);
  for (const auto& p : traj.points) {
    for (std::size_t i = 0; i < 4; ++i) CHECK(p[i] == x0[i]);
  }
}

TEST_CASE("zero steps records only the start") {
  auto c = make_canonical_chart(1);
  PhaseSpacePoint x0(c, {1.0, 0.0});
  auto h = ScalarField::expression(c, "H", [](auto x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); });
  auto traj = evolve(x0, PoissonFlow{h}, config(0.1, 0));
  CHECK(traj.points.size() == 1);
  CHECK(traj.times == std::vector<double>{0.0});
}

TEST_CASE("record_every thins the trajectory and keeps the final step") {
  auto c = make_canonical_chart(1);
  PhaseSpacePoint x0(c, {1.0, 0.0});
  auto h = ScalarField::expression(c, "H", [](auto x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); });
  auto cfg = config(0.01, 25);
  cfg.record_every = 10;
  auto traj = evolve(x0, PoissonFlow{h}, cfg);
  REQUIRE(traj.times.size() == 4);
  CHECK(traj.times[1] == doctest::Approx(0.1));
  CHECK(traj.times.back() == doctest::Approx(0.25));
  for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
}

TEST_CASE("harmonic oscillator conserves energy over many steps") {
  auto c = make_canonical_chart(1);
  auto h = ScalarField::expression(c, "H", [](auto x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); });
  PhaseSpacePoint x0(c, {1.0, 0.0});
  auto cfg = config(1e-2, 10000);
  cfg.record_every = 100;
  auto traj = evolve(x0, PoissonFlow{h}, cfg);
  const auto& end = traj.points.back();
  CHECK(std::abs(end.q(0) - std::cos(100.0)) < 1e-6);
  CHECK(std::abs(h(end) - 0.5) < 1e-8);
}

TEST_CASE("Klauder Dirac flow keeps r fixed and rotates phi at the reduced rate") {
  Polynomial1D u({0.0, 0.2, 0.5});
  KlauderModel m(1.1, 0.7, 0.0, 1.0, u);
  const double pphi = 1.3;
  auto x0 = m.embedded_point(0.4, pphi);
  DiracFlow flow{m.physical_hamiltonian(), m.second_class_set(), std::nullopt};
  auto traj = evolve(x0, flow, config(1e-3, 2000));
  const auto& end = traj.points.back();

  // Oracle: dphi/dt = d U(r*(p_phi)) / d p_phi, by central differences.
  const double h = 1e-5;
  const double rate =
      (u(radius(0.7, pphi + h, 1.1)) - u(radius(0.7, pphi - h, 1.1))) / (2 * h);
  CHECK(end.at("r") == doctest::Approx(radius(0.7, pphi, 1.1)).epsilon(1e-10));
  CHECK(end.at("p_phi") == doctest::Approx(pphi).epsilon(1e-12));
  CHECK(std::abs(end.at("phi") - (0.4 + 2.0 * rate)) < 1e-8);
  CHECK(m.phi_rate(pphi) == doctest::Approx(rate).epsilon(1e-8));
  for (const auto& r : traj.residuals) {
    CHECK(r[0] < 1e-10);
    CHECK(r[1] < 1e-10);
  }
}

TEST_CASE("Dirac flow must start on the surface") {
  KlauderModel m(1.0, 1.0);
  PhaseSpacePoint off(KlauderModel::polar_chart(), {1.0, 0.0, 2.0, 0.5});
  DiracFlow flow{m.physical_hamiltonian(), m.second_class_set(), std::nullopt};
  CHECK_THROWS_AS(evolve(off, flow, config(1e-3, 10)), UsageError);
}

TEST_CASE("time-dependent gauge tracks k(t)") {
  KlauderModel m(1.0, 1.0, 0.5, 1.0, Polynomial1D({0.0, 0.0, 0.5}));
  auto x0 = m.embedded_point(0.0, 0.8, 0.0);
  DiracFlow flow{m.physical_hamiltonian(), m.second_class_set(0.0), m.time_dependence()};
  auto traj = evolve(x0, flow, config(1e-3, 2000));
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    const double t = traj.times[i];
    CHECK(traj.residuals[i][0] < 1e-8);
    CHECK(traj.points[i].at("r") == doctest::Approx(radius(1.0 + 0.5 * t, 0.8, 1.0)).epsilon(1e-8));
  }
}

TEST_CASE("mid-flow degeneracy interrupts with the partial trajectory") {
  // Phi1 = q1, Phi2 = p1 q2: {Phi1, Phi2} = q2, which H = p2 drives through zero.
  auto c = make_canonical_chart(2);
  ConstraintSet cs(c, {ScalarField::coordinate(c, 0),
                       ScalarField::expression(c, "p1q2", [](auto x) { return x[2] * x[1]; })});
  PhaseSpacePoint x0(c, {0.0, -0.5, 0.0, 0.0});
  DiracFlow flow{ScalarField::coordinate(c, 3), cs, std::nullopt};
  try {
    evolve(x0, flow, config(0.1, 10));
    FAIL("expected an interruption");
  } catch (const FlowInterrupted& e) {
    CHECK(e.cause() == FlowInterrupted::Cause::degeneracy);
    CHECK(e.partial().points.size() >= 4);
    CHECK(e.partial().points.size() <= 6);
    CHECK(e.partial().points.front()[1] == -0.5);
  }
}

TEST_CASE("runaway solutions are reported as blow-up") {
  auto c = make_canonical_chart(1);
  auto h = ScalarField::expression(c, "H", [](auto x) { return 0.5 * x[1] * x[1] - x[0] * x[0] * x[0] * x[0]; });
  PhaseSpacePoint x0(c, {1.0, 1.0});
  try {
    evolve(x0, PoissonFlow{h}, config(1e-3, 100000));
    FAIL("expected an interruption");
  } catch (const FlowInterrupted& e) {
    CHECK(e.cause() == FlowInterrupted::Cause::blow_up);
    CHECK_FALSE(e.partial().points.empty());
  }
}

TEST_CASE("constraint drift on a static trajectory") {
  auto c = make_canonical_chart(1);
  PhaseSpacePoint x0(c, {0.25, 0.0});
  ConstraintSet cs(c, {ScalarField::coordinate(c, 0)});
  auto traj = evolve(x0, PoissonFlow{ScalarField::constant(c, 0.0)}, config(0.1, 10), &cs);
  auto d = constraint_drift(traj);
  REQUIRE(d.size() == 1);
  CHECK(d[0].name == "q1");
  CHECK(d[0].max_residual == 0.25);
  CHECK(std::abs(d[0].growth_rate) < 1e-14);

  // q1 grows linearly under H = p1.
  auto lin = evolve(x0, PoissonFlow{ScalarField::coordinate(c, 1)}, config(0.1, 10));
  auto g = constraint_drift(lin, cs);
  CHECK(g[0].growth_rate == doctest::Approx(1.0));
  CHECK(g[0].max_residual == doctest::Approx(1.25));
}

TEST_CASE("multiplier from the gauge condition") {
  auto chart = KlauderModel::cartesian_chart();
  CHECK(multiplier_from_gauge(PhaseSpacePoint(chart, {1.0, 0.0, 0.0, 1.0}), 2.0, 1.0) == 1.0);
  CHECK(multiplier_from_gauge(PhaseSpacePoint(chart, {1.0, 0.0, 0.0, 0.0}), 0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(multiplier_from_gauge(PhaseSpacePoint(chart, {0.0, 0.0, 0.0, 0.0}), 1.0, 1.0),
                  DegeneracyError);
}

TEST_CASE("Newton projection lands on the surface") {
  KlauderModel m(1.0, 1.0);
  auto cs = m.second_class_set();
  Sampler rng(31);
  for (int i = 0; i < 20; ++i) {
    auto x = m.sample_surface_point(rng);
    std::vector<double> z(x.coords().begin(), x.coords().end());
    for (auto& v : z) v += rng.uniform(-1e-3, 1e-3);
    auto y = project_to_surface(cs, z, NewtonProjection{});
    for (double r : cs.values(y)) CHECK(std::abs(r) < 1e-12);
  }
}
