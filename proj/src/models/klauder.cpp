#include "dirac/models/klauder.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <type_traits>

#include "dirac/errors.hpp"

namespace dirac {

namespace {

constexpr std::size_t kR = 0;
constexpr std::size_t kPhi = 1;
constexpr std::size_t kPr = 2;
constexpr std::size_t kPphi = 3;

template <class S>
using elem_t = std::remove_cv_t<typename S::element_type>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

KlauderModel::KlauderModel(double alpha, double k0, double k1, double hbar,
                           Polynomial1D potential)
    : alpha_(alpha), k0_(k0), k1_(k1), hbar_(hbar), potential_(std::move(potential)) {
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) throw UsageError("alpha must be positive");
  if (!std::isfinite(k0_) || !std::isfinite(k1_)) throw UsageError("k must be finite");
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) throw UsageError("hbar must be positive");
}

const ChartPtr& KlauderModel::polar_chart() {
  static const ChartPtr chart = make_chart(
      {"r", "phi", "p_r", "p_phi"},
      [](std::span<const double> x) { return x[kR] > 1e-12; }, "r > 1e-12");
  return chart;
}

const ChartPtr& KlauderModel::cartesian_chart() {
  static const ChartPtr chart = make_chart({"x", "y", "p_x", "p_y"});
  return chart;
}

const ChartPtr& KlauderModel::reduced_chart() {
  static const ChartPtr chart = make_chart({"phi", "p_phi"});
  return chart;
}

ScalarField KlauderModel::constraint() const {
  const double a2 = alpha_ * alpha_;
  return ScalarField::expression(polar_chart(), "C", [a2](auto x) {
    using T = elem_t<decltype(x)>;
    const T& r = x[kR];
    return T(0.5) * (x[kPr] * x[kPr] + x[kPphi] * x[kPphi] / (r * r) - T(a2) * r * r);
  });
}

ScalarField KlauderModel::gauge_condition(double t) const {
  const double kt = k(t);
  return ScalarField::expression(polar_chart(), "chi", [kt](auto x) {
    using T = elem_t<decltype(x)>;
    return x[kR] * x[kPr] - T(kt);
  });
}

ScalarField KlauderModel::potential_field() const {
  const Polynomial1D u = potential_;
  return ScalarField::expression(polar_chart(), "U", [u](auto x) { return u(x[kR]); });
}

ScalarField KlauderModel::physical_hamiltonian() const {
  const double a2 = alpha_ * alpha_;
  const Polynomial1D u = potential_;
  return ScalarField::expression(polar_chart(), "H_phys", [a2, u](auto x) {
    using T = elem_t<decltype(x)>;
    const T& r = x[kR];
    return T(0.5) * (x[kPr] * x[kPr] + x[kPphi] * x[kPphi] / (r * r) - T(a2) * r * r) + u(r);
  });
}

ScalarField KlauderModel::cartesian_constraint() const {
  const double a2 = alpha_ * alpha_;
  return ScalarField::expression(cartesian_chart(), "C", [a2](auto x) {
    using T = elem_t<decltype(x)>;
    return T(0.5) * (x[2] * x[2] + x[3] * x[3] - T(a2) * (x[0] * x[0] + x[1] * x[1]));
  });
}

ConstraintSet KlauderModel::second_class_set(double t) const {
  return {polar_chart(), {gauge_condition(t), constraint()}};
}

ConstraintSet KlauderModel::first_class_set() const { return {polar_chart(), {constraint()}}; }

TimeDependence KlauderModel::time_dependence() const {
  const KlauderModel self = *this;
  return {[self](double t) { return self.second_class_set(t); },
          [kd = k1_](std::span<const double>, double) {
            Eigen::VectorXd rate(2);
            rate << -kd, 0.0;
            return rate;
          }};
}

KlauderModel::ReducedValues KlauderModel::reduced_point(double p_phi, double t) const {
  const double kt = k(t);
  if (kt == 0.0 && p_phi == 0.0) {
    throw DomainError("reduced point undefined at k = p_phi = 0 (origin excluded)");
  }
  const double r_star = std::pow((kt * kt + p_phi * p_phi) / (alpha_ * alpha_), 0.25);
  return {r_star, kt / r_star};
}

PhaseSpacePoint KlauderModel::embedded_point(double phi, double p_phi, double t) const {
  const auto [r_star, pr_star] = reduced_point(p_phi, t);
  return {polar_chart(), {r_star, phi, pr_star, p_phi}};
}

SurfaceParametrization KlauderModel::surface(double t) const {
  const double kt = k(t);
  const double a2 = alpha_ * alpha_;
  return SurfaceParametrization::from_expression(
      reduced_chart(), polar_chart(), [kt, a2](auto y) {
        using T = elem_t<decltype(y)>;
        using std::pow;
        const T r_star = pow((T(kt * kt) + y[1] * y[1]) / T(a2), 0.25);
        return std::vector<T>{r_star, y[0], T(kt) / r_star, y[1]};
      });
}

double KlauderModel::bracket_denominator(const PhaseSpacePoint& x) const {
  const double r = x[kR];
  const double pr = x[kPr];
  const double pphi = x[kPphi];
  return pphi * pphi + r * r * pr * pr + alpha_ * alpha_ * r * r * r * r;
}

double KlauderModel::dirac_oracle(std::string_view a, std::string_view b,
                                  const PhaseSpacePoint& x) const {
  require_same_chart(*polar_chart(), x.chart(), "klauder dirac oracle");
  const Chart& chart = *polar_chart();
  auto index = [&](std::string_view label) -> std::size_t {
    for (std::size_t i = 0; i < chart.dim(); ++i) {
      if (chart.label(i) == label) return i;
    }
    throw UsageError("unknown Klauder coordinate '" + std::string(label) + "'");
  };
  std::size_t i = index(a);
  std::size_t j = index(b);
  if (i == j) return 0.0;
  double sign = 1.0;
  if (i > j) {
    std::swap(i, j);
    sign = -1.0;
  }
  const double d = bracket_denominator(x);
  double value = 0.0;
  if (i == kR && j == kPhi) {
    value = -x[kR] * x[kPphi] / d;
  } else if (i == kPhi && j == kPr) {
    value = -x[kPr] * x[kPphi] / d;
  } else if (i == kPhi && j == kPphi) {
    value = 1.0;
  }
  return sign * value;
}

double KlauderModel::phi_rate(double p_phi, double t) const {
  const double r_star = reduced_point(p_phi, t).r_star;
  const double du = potential_.derivative()(r_star);
  return p_phi * du / (2.0 * alpha_ * alpha_ * r_star * r_star * r_star);
}

PhaseSpacePoint KlauderModel::sample_point(Sampler& rng) const {
  const double r = std::max(0.05, rng.uniform(0.1, 5.0));
  const double phi = rng.uniform(-5.0, 5.0);
  const double pr = rng.uniform(-5.0, 5.0);
  const double pphi = rng.uniform(-5.0, 5.0);
  return {polar_chart(), {r, phi, pr, pphi}};
}

PhaseSpacePoint KlauderModel::sample_reduced_point(Sampler& rng, double t) const {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double phi = rng.uniform(-5.0, 5.0);
    const double pphi = rng.uniform(-5.0, 5.0);
    const double kt = k(t);
    if (kt == 0.0 && pphi == 0.0) continue;
    if (reduced_point(pphi, t).r_star >= 0.05) return {reduced_chart(), {phi, pphi}};
  }
  throw DomainError("no admissible reduced sample with r* >= 0.05 (alpha = " + fmt(alpha_) +
                    ", k = " + fmt(k(t)) + ")");
}

PhaseSpacePoint KlauderModel::sample_surface_point(Sampler& rng, double t) const {
  const PhaseSpacePoint y = sample_reduced_point(rng, t);
  return embedded_point(y[0], y[1], t);
}

}  // namespace dirac
