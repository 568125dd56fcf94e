#include <cmath>
#include <vector>

#include "doctest.h"

#include "dirac/constraints.hpp"
#include "dirac/dynamics.hpp"
#include "dirac/errors.hpp"
#include "dirac/models/particle.hpp"

using namespace dirac;

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(RelativisticParticle(0.0, 3), UsageError);
  CHECK_THROWS_AS(RelativisticParticle(-1.0, 3), UsageError);
  CHECK_THROWS_AS(RelativisticParticle(1.0, 0), UsageError);
  RelativisticParticle p(1.0, 2);
  CHECK(p.chart()->labels() == std::vector<std::string>{"x0", "x1", "x2", "p0", "p1", "p2"});
  CHECK(p.reduced_chart()->dim() == 4);
}

TEST_CASE("closed-form trajectory example") {
  RelativisticParticle p(4.0, 3);
  std::vector<double> x{0.0, 0.0, 0.0}, mom{3.0, 0.0, 0.0};
  CHECK(p.energy(mom) == 5.0);
  auto xt = p.trajectory(x, mom, 10.0);
  CHECK(xt[0] == doctest::Approx(6.0));
  CHECK(xt[1] == 0.0);
}

TEST_CASE("on-shell point lies on both constraints") {
  RelativisticParticle p(1.3, 3);
  Sampler rng(4);
  for (int i = 0; i < 100; ++i) {
    auto x = p.sample_on_shell(rng);
    const double tau = x[0];
    for (double r : p.second_class_set(tau).values(x)) CHECK(std::abs(r) < 1e-9);
    CHECK(x[4] > 0.0);
  }
  std::vector<double> xs{1.0, 2.0, 3.0}, ps{0.5, 0.0, -0.5};
  auto pt = p.on_shell_point(xs, ps, 2.0);
  CHECK(pt.at("x0") == 2.0);
  CHECK(pt.at("p1") == -0.5);  // covariant component
  CHECK(pt.at("p3") == 0.5);
}

TEST_CASE("bracket examples at rest and in motion") {
  RelativisticParticle p1(1.0, 3);
  std::vector<double> zero{0.0, 0.0, 0.0};
  std::vector<PhaseSpacePoint> rest{p1.on_shell_point(zero, zero, 0.0)};
  auto chi = p1.time_gauge(0.0);
  CHECK(poisson_bracket(chi, p1.mass_shell(), rest[0]) == doctest::Approx(1.0));
  CHECK(p1.bracket_suite(rest).chi_c_err < 1e-14);

  RelativisticParticle p4(4.0, 3);
  std::vector<double> mom{3.0, 0.0, 0.0};
  auto x = p4.on_shell_point(zero, mom, 0.0);
  CHECK(poisson_bracket(p4.time_gauge(0.0), p4.mass_shell(), x) == doctest::Approx(5.0));
}

TEST_CASE("reduced brackets are canonical on random on-shell points") {
  for (std::size_t d : {1u, 2u, 3u}) {
    RelativisticParticle p(0.7, d);
    Sampler rng(40 + d);
    std::vector<PhaseSpacePoint> s;
    for (int i = 0; i < 30; ++i) s.push_back(p.sample_on_shell(rng));
    auto rep = p.bracket_suite(s);
    CHECK(rep.chi_c_err < 1e-10);
    CHECK(rep.xp_err < 1e-9);
    CHECK(rep.xx_max < 1e-9);
    CHECK(rep.pp_max < 1e-9);
  }
}

TEST_CASE("off-shell samples are rejected") {
  RelativisticParticle p(1.0, 3);
  PhaseSpacePoint off(p.chart(), {0, 0, 0, 0, 3, 0, 0, 0});
  std::vector<PhaseSpacePoint> s{off};
  CHECK_THROWS_AS(p.bracket_suite(s), UsageError);
}

TEST_CASE("gauge-fixed flow reproduces straight-line motion") {
  RelativisticParticle p(1.3, 3);
  std::vector<double> xs{0.5, -1.0, 2.0}, ps{0.7, -0.4, 1.1};
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.steps = 500;
  cfg.record_every = 50;
  auto tr = evolve(p.on_shell_point(xs, ps, 0.0),
                   DiracFlow{ScalarField::constant(p.chart(), 0.0), p.second_class_set(0.0),
                             p.time_dependence()},
                   cfg);
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    auto ref = p.trajectory(xs, ps, tr.times[i]);
    CHECK(tr.points[i].at("x0") == doctest::Approx(tr.times[i]).epsilon(1e-12));
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(tr.points[i][1 + j] - ref[j]) < 1e-8);
    CHECK(tr.residuals[i][1] < 1e-10);
  }
}

TEST_CASE("reduced Hamiltonian flow agrees with the constrained one") {
  RelativisticParticle p(2.0, 2);
  std::vector<double> xs{0.0, 1.0}, ps{1.5, -0.5};
  PhaseSpacePoint y(p.reduced_chart(), {xs[0], xs[1], ps[0], ps[1]});
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.steps = 300;
  auto tr = evolve(y, PoissonFlow{p.reduced_hamiltonian()}, cfg);
  auto ref = p.trajectory(xs, ps, 3.0);
  CHECK(std::abs(tr.points.back()[0] - ref[0]) < 1e-10);
  CHECK(std::abs(tr.points.back()[1] - ref[1]) < 1e-10);
  CHECK(tr.points.back()[2] == 1.5);
}
