#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "oracles.hpp"

#include "dirac/constraints.hpp"
#include "dirac/errors.hpp"
#include "dirac/models/klauder.hpp"

using namespace dirac;

namespace {

const char* kLabels[] = {"r", "phi", "p_r", "p_phi"};

PhaseSpacePoint polar(double r, double phi, double pr, double pphi) {
  return {KlauderModel::polar_chart(), {r, phi, pr, pphi}};
}

}  // namespace

TEST_CASE("reduced point examples") {
  KlauderModel m(1.0, 1.0);
  auto v = m.reduced_point(0.0);
  CHECK(v.r_star == 1.0);
  CHECK(v.pr_star == 1.0);
  KlauderModel m2(2.0, 0.0);
  CHECK(m2.reduced_point(4.0).r_star == doctest::Approx(std::sqrt(2.0)));
  CHECK(m2.reduced_point(4.0).pr_star == 0.0);
  KlauderModel m0(1.0, 0.0);
  CHECK_THROWS_AS(m0.reduced_point(0.0), DomainError);
}

TEST_CASE("embedded points satisfy both constraints") {
  Sampler rng(1);
  for (int i = 0; i < 100; ++i) {
    KlauderModel m(rng.uniform(0.2, 3.0), rng.uniform(-2, 2));
    auto x = m.sample_surface_point(rng);
    for (double r : m.second_class_set().values(x)) CHECK(std::abs(r) < 1e-12);
  }
}

TEST_CASE("oracle examples") {
  KlauderModel m(1.0, 0.0);
  auto x = polar(std::sqrt(2.0), 0.0, 0.0, 2.0);
  CHECK(m.bracket_denominator(x) == doctest::Approx(8.0));
  CHECK(m.dirac_oracle("r", "phi", x) == doctest::Approx(-std::sqrt(2.0) / 4));
  CHECK(m.dirac_oracle("phi", "r", x) == doctest::Approx(std::sqrt(2.0) / 4));
  CHECK(m.dirac_oracle("phi", "p_phi", x) == 1.0);
  CHECK(m.dirac_oracle("r", "p_r", x) == 0.0);
  CHECK(m.dirac_oracle("r", "r", x) == 0.0);
  CHECK_THROWS_AS(m.dirac_oracle("r", "theta", x), UsageError);
}

TEST_CASE("generic engine matches the independent table at random points") {
  Sampler rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const double alpha = rng.uniform(0.2, 3.0);
    KlauderModel m(alpha, rng.uniform(-3, 3));
    auto x = m.sample_point(rng);
    DiracStructure ds(m.second_class_set(), x);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        auto a = ScalarField::coordinate(KlauderModel::polar_chart(), kLabels[i]);
        auto b = ScalarField::coordinate(KlauderModel::polar_chart(), kLabels[j]);
        const double ref =
            oracle::klauder_table(i, j, x.at("r"), x.at("p_r"), x.at("p_phi"), alpha);
        CHECK(std::abs(ds.bracket(a, b) - ref) < 1e-9);
        CHECK(m.dirac_oracle(kLabels[i], kLabels[j], x) == doctest::Approx(ref).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("Cartesian and polar constraints agree under the point transformation") {
  Sampler rng(77);
  KlauderModel m(1.4, 0.0);
  for (int i = 0; i < 100; ++i) {
    const double r = rng.uniform(0.1, 5), phi = rng.uniform(-3, 3);
    const double pr = rng.uniform(-5, 5), pphi = rng.uniform(-5, 5);
    const double c = std::cos(phi), s = std::sin(phi);
    // p_x, p_y from p_r = x.p/r and p_phi = x p_y - y p_x.
    const double px = pr * c - pphi * s / r;
    const double py = pr * s + pphi * c / r;
    PhaseSpacePoint cart(KlauderModel::cartesian_chart(), {r * c, r * s, px, py});
    CHECK(m.cartesian_constraint()(cart) ==
          doctest::Approx(m.constraint()(polar(r, phi, pr, pphi))).epsilon(1e-12));
  }
}

TEST_CASE("gauge condition and constraint bracket is 2 alpha^2 r^2 on the surface") {
  Sampler rng(5);
  for (int i = 0; i < 50; ++i) {
    KlauderModel m(rng.uniform(0.3, 2.0), rng.uniform(-1, 1));
    auto x = m.sample_surface_point(rng);
    const double r = x.at("r");
    CHECK(poisson_bracket(m.gauge_condition(), m.constraint(), x) ==
          doctest::Approx(2 * m.alpha() * m.alpha() * r * r).epsilon(1e-12));
  }
}

TEST_CASE("phi rate") {
  KlauderModel flat(1.0, 0.0);
  CHECK(flat.phi_rate(2.0) == 0.0);
  KlauderModel harmonic(1.0, 0.0, 0.0, 1.0, Polynomial1D({0.0, 0.0, 0.5}));
  // U(r*) = r*^2 / 2 = |p_phi| / 2 when alpha = 1 and k = 0.
  CHECK(harmonic.phi_rate(2.0) == doctest::Approx(0.5));
  CHECK(harmonic.phi_rate(-2.0) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(harmonic.phi_rate(0.0), DomainError);
}

TEST_CASE("time-dependent gauge condition") {
  KlauderModel m(1.0, 1.0, 2.0);
  CHECK(m.k(0.5) == 2.0);
  CHECK(m.time_dependent());
  auto td = m.time_dependence();
  auto x = polar(1.0, 0.0, 1.0, 0.0);
  auto rate = td.rate(x.coords(), 0.3);
  CHECK(rate(0) == -2.0);
  CHECK(rate(1) == 0.0);
  CHECK(td.at(0.5)[0](x) == doctest::Approx(1.0 - 2.0));
}

TEST_CASE("samplers respect their ranges") {
  KlauderModel m(1.0, 0.0);
  Sampler rng(3);
  for (int i = 0; i < 500; ++i) {
    auto x = m.sample_point(rng);
    CHECK(x.at("r") >= 0.1);
    CHECK(x.at("r") <= 5.0);
    CHECK(std::abs(x.at("p_phi")) <= 5.0);
    auto y = m.sample_reduced_point(rng);
    CHECK(m.reduced_point(y.at("p_phi")).r_star >= 0.05);
  }
}
