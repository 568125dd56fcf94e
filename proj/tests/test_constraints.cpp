#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "dirac/constraints.hpp"
#include "dirac/errors.hpp"
#include "dirac/models/klauder.hpp"
#include "dirac/polynomial.hpp"

using namespace dirac;

namespace {

ScalarField coord(std::string_view label) {
  return ScalarField::coordinate(KlauderModel::polar_chart(), label);
}

PhaseSpacePoint polar(double r, double phi, double pr, double pphi) {
  return {KlauderModel::polar_chart(), {r, phi, pr, pphi}};
}

oracle::Fn values_of(const ScalarField& f) {
  return [f](std::span<const double> x) { return f.value(x); };
}

}  // namespace

TEST_CASE("constraint matrix examples") {
  KlauderModel m(1.0, 1.0);
  auto M = constraint_matrix(m.second_class_set(), polar(1.0, 0.0, 1.0, 0.0));
  CHECK(M(0, 0) == 0.0);
  CHECK(M(0, 1) == doctest::Approx(2.0));
  CHECK(M(1, 0) == -M(0, 1));

  auto c = make_canonical_chart(1);
  PhaseSpacePoint x(c, {0.0, 0.0});
  ConstraintSet one(c, {ScalarField::coordinate(c, 0)});
  CHECK(constraint_matrix(one, x).isZero());
  ConstraintSet pair(c, {ScalarField::coordinate(c, 0), ScalarField::coordinate(c, 1)});
  auto P = constraint_matrix(pair, x);
  CHECK(P(0, 1) == 1.0);
  CHECK(P(1, 0) == -1.0);
}

TEST_CASE("classification of the Klauder sets") {
  KlauderModel m(1.0, 0.5);
  Sampler rng(8);
  std::vector<PhaseSpacePoint> samples;
  for (int i = 0; i < 10; ++i) samples.push_back(m.sample_surface_point(rng));

  auto second = classify(m.second_class_set(), samples);
  CHECK(second.kind == ConstraintClass::second_class);
  CHECK(second.rank == 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double r = samples[i].at("r");
    const double expected = std::pow(2 * m.alpha() * m.alpha() * r * r, 2);
    CHECK(samples[i].size() == 4);
    CHECK(second.sample_dets[i] == doctest::Approx(expected).epsilon(1e-10));
  }

  auto first = classify(m.first_class_set(), samples);
  CHECK(first.kind == ConstraintClass::first_class);
  CHECK(first.rank == 0);
}

TEST_CASE("classification of canonical examples") {
  auto c = make_canonical_chart(2);
  std::vector<PhaseSpacePoint> s{PhaseSpacePoint(c, {0.0, 0.0, 0.0, 0.0})};
  auto q1 = ScalarField::coordinate(c, 0), q2 = ScalarField::coordinate(c, 1);
  auto p1 = ScalarField::coordinate(c, 2);
  CHECK(classify(ConstraintSet(c, {q1, q2}), s).kind == ConstraintClass::first_class);
  CHECK(classify(ConstraintSet(c, {q1, p1}), s).kind == ConstraintClass::second_class);
  auto odd = classify(ConstraintSet(c, {q1, p1, q2}), s);
  CHECK(odd.kind == ConstraintClass::mixed_or_degenerate);
  CHECK_FALSE(odd.even_count);
}

TEST_CASE("classification requires on-surface samples") {
  KlauderModel m(1.0, 1.0);
  std::vector<PhaseSpacePoint> s{polar(1.0, 0.0, 3.0, 0.0)};
  try {
    classify(m.second_class_set(), s);
    FAIL("expected a throw");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("chi") != std::string::npos);
  }
}

TEST_CASE("Klauder Dirac bracket examples") {
  KlauderModel m(1.0, 1.0);
  auto cs = m.second_class_set();
  auto x = polar(1.0, 0.3, 1.0, 0.0);
  CHECK(std::abs(dirac_bracket(coord("r"), coord("p_r"), cs, x)) < 1e-12);
  CHECK(dirac_bracket(coord("phi"), coord("p_phi"), cs, x) == doctest::Approx(1.0));

  KlauderModel m0(1.0, 0.0);
  auto y = polar(std::sqrt(2.0), 0.0, 0.0, 2.0);
  CHECK(dirac_bracket(coord("r"), coord("phi"), m0.second_class_set(), y) ==
        doctest::Approx(-1.0 / (2 * std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("singular constraint matrix raises a degeneracy error") {
  auto c = make_canonical_chart(2);
  ConstraintSet cs(c, {ScalarField::coordinate(c, 0), ScalarField::coordinate(c, 1)});
  PhaseSpacePoint x(c, {0.0, 0.0, 1.0, 2.0});
  try {
    dirac_bracket(ScalarField::coordinate(c, 2), ScalarField::coordinate(c, 3), cs, x);
    FAIL("expected a throw");
  } catch (const DegeneracyError& e) {
    CHECK(e.det() == 0.0);
    CHECK(e.point() == std::vector<double>{0.0, 0.0, 1.0, 2.0});
  }
}

TEST_CASE("an empty set gives the Poisson bracket") {
  auto c = make_canonical_chart(2);
  Sampler rng(4);
  auto cs = ConstraintSet::empty(c);
  for (int i = 0; i < 20; ++i) {
    auto a = MultiPolynomial::random(4, 3, 2, rng).field(c, "a");
    auto b = MultiPolynomial::random(4, 3, 2, rng).field(c, "b");
    PhaseSpacePoint x(c, {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                          rng.uniform(-1, 1)});
    CHECK(dirac_bracket(a, b, cs, x) == poisson_bracket(a, b, x));
  }
}

TEST_CASE("engine agrees with the written-out two-constraint formula") {
  // Random polynomial constraints on a 2-pair chart; the oracle uses only
  // value functions and finite differences.
  auto c = make_canonical_chart(2);
  Sampler rng(55);
  int tested = 0;
  while (tested < 60) {
    auto p1 = MultiPolynomial::random(4, 3, 2, rng).field(c, "phi1");
    auto p2 = MultiPolynomial::random(4, 3, 2, rng).field(c, "phi2");
    auto a = MultiPolynomial::random(4, 3, 2, rng).field(c, "a");
    auto b = MultiPolynomial::random(4, 3, 2, rng).field(c, "b");
    std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                          rng.uniform(-1, 1)};
    PhaseSpacePoint pt(c, x);
    ConstraintSet cs(c, {p1, p2});
    if (std::abs(poisson_bracket(p1, p2, pt)) < 0.1) continue;
    ++tested;
    const double got = dirac_bracket(a, b, cs, pt);
    const double ref = oracle::dirac2(values_of(a), values_of(b), values_of(p1), values_of(p2), x);
    CHECK(std::abs(got - ref) < 1e-6 * std::max(1.0, std::abs(ref)));
    // Every constraint is a Casimir of the Dirac bracket.
    CHECK(std::abs(dirac_bracket(a, p1, cs, pt)) < 1e-10);
    CHECK(std::abs(dirac_bracket(p2, b, cs, pt)) < 1e-10);
    CHECK(std::abs(got + dirac_bracket(b, a, cs, pt)) < 1e-12 * std::max(1.0, std::abs(got)));
  }
}

TEST_CASE("Dirac flow is tangent to the surface") {
  KlauderModel m(1.2, 0.7, 0.0, 1.0, Polynomial1D({0.0, 0.3, 0.5}));
  Sampler rng(9);
  auto cs = m.second_class_set();
  auto h = m.physical_hamiltonian();
  for (int i = 0; i < 30; ++i) {
    auto x = m.sample_surface_point(rng);
    DiracStructure ds(cs, x);
    auto v = ds.flow(h.gradient(x));
    Eigen::VectorXd tangency = cs.gradients(x.coords()) * v;
    CHECK(tangency.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("observable check") {
  KlauderModel m(1.0, 1.0);
  Sampler rng(6);
  std::vector<PhaseSpacePoint> s;
  for (int i = 0; i < 10; ++i) s.push_back(m.sample_surface_point(rng));
  CHECK(observable_check(coord("p_phi"), m.second_class_set(), s).max_abs < 1e-10);
  CHECK(observable_check(coord("phi"), m.second_class_set(), s).max_abs < 1e-10);
}

TEST_CASE("reduced Poisson brackets match Dirac brackets on the surface") {
  KlauderModel m(0.8, 0.6);
  auto param = m.surface();
  auto cs = m.second_class_set();
  Sampler rng(12);
  const char* labels[] = {"r", "phi", "p_r", "p_phi"};
  for (int i = 0; i < 20; ++i) {
    auto y = m.sample_reduced_point(rng);
    for (auto a : labels) {
      for (auto b : labels) {
        auto rep = maskawa_nakajima_check(coord(a), coord(b), cs, param, y);
        CHECK(rep.abs_diff < 1e-10);
      }
    }
    CHECK(maskawa_nakajima_check(coord("phi"), coord("p_phi"), cs, param, y).dirac_value ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("a parametrization that leaves the surface is rejected") {
  KlauderModel m(1.0, 1.0);
  auto bad = SurfaceParametrization::from_expression(
      KlauderModel::reduced_chart(), KlauderModel::polar_chart(), [](auto y) {
        using T = typename std::decay_t<decltype(y)>::value_type;
        return std::vector<T>{T(2.0), y[0], T(5.0), y[1]};
      });
  PhaseSpacePoint y(KlauderModel::reduced_chart(), {0.0, 1.0});
  CHECK_THROWS_AS(maskawa_nakajima_check(coord("r"), coord("phi"), m.second_class_set(), bad, y),
                  UsageError);
}

TEST_CASE("determinant weight and Jacobian") {
  KlauderModel m(1.0, 1.0);
  auto chi = m.gauge_condition();
  auto c = m.constraint();
  std::vector<ScalarField> g{chi}, cs{c};
  CHECK(fp_determinant(g, cs, polar(1.0, 0.0, 1.0, 0.0)) == doctest::Approx(2.0));
  std::vector<ScalarField> none;
  CHECK_THROWS_AS(fp_determinant(g, none, polar(1.0, 0.0, 1.0, 0.0)), UsageError);

  auto r1 = fp_jacobian_check(chi, c, 0, polar(1.0, 0.0, 1.0, 0.0));
  CHECK(r1.jacobian_det == doctest::Approx(2.0));
  CHECK(r1.abs_diff < 1e-12);
  auto r2 = fp_jacobian_check(chi, c, 0, polar(2.0, 0.0, 0.0, 3.0));
  CHECK(r2.jacobian_det == doctest::Approx(6.25));
  CHECK(r2.bracket_value == doctest::Approx(6.25));
}

TEST_CASE("degeneracy test is relative to the matrix scale") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1e-8, -1e-8, 0;
  CHECK_FALSE(is_degenerate(m));
  m << 0, 1e-12, -1e-12, 0;
  CHECK(is_degenerate(m));
  Eigen::MatrixXd big(2, 2);
  big << 1e6, 1e6, 1e6, 1e6;
  CHECK(is_degenerate(big));
  big(1, 1) = 2e6;
  CHECK_FALSE(is_degenerate(big));
}
