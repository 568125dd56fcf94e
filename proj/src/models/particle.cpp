#include "dirac/models/particle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "dirac/errors.hpp"

namespace dirac {

namespace {

template <class S>
using elem_t = std::remove_cv_t<typename S::element_type>;

std::vector<std::string> particle_labels(std::size_t d, bool with_time) {
  std::vector<std::string> labels;
  const std::size_t first = with_time ? 0 : 1;
  for (std::size_t i = first; i <= d; ++i) labels.push_back("x" + std::to_string(i));
  for (std::size_t i = first; i <= d; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

}  // namespace

RelativisticParticle::RelativisticParticle(double mass, std::size_t spatial_dim)
    : mass_(mass), dim_(spatial_dim) {
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw UsageError("particle mass must be positive");
  if (dim_ < 1) throw UsageError("particle needs at least one spatial dimension");
  chart_ = make_chart(particle_labels(dim_, true));
  reduced_ = make_chart(particle_labels(dim_, false));
}

ScalarField RelativisticParticle::mass_shell() const {
  const std::size_t d = dim_;
  const double m2 = mass_ * mass_;
  return ScalarField::expression(chart_, "C", [d, m2](auto x) {
    using T = elem_t<decltype(x)>;
    const std::size_t p0 = d + 1;
    T s = x[p0] * x[p0] - T(m2);
    for (std::size_t i = 1; i <= d; ++i) s -= x[p0 + i] * x[p0 + i];
    return T(0.5) * s;
  });
}

ScalarField RelativisticParticle::time_gauge(double tau) const {
  std::vector<double> coeffs(chart_->dim(), 0.0);
  coeffs[0] = 1.0;
  return ScalarField::linear(chart_, "chi", std::move(coeffs), -tau);
}

ConstraintSet RelativisticParticle::second_class_set(double tau) const {
  return {chart_, {time_gauge(tau), mass_shell()}};
}

TimeDependence RelativisticParticle::time_dependence() const {
  const RelativisticParticle self = *this;
  return {[self](double tau) { return self.second_class_set(tau); },
          [](std::span<const double>, double) {
            Eigen::VectorXd rate(2);
            rate << -1.0, 0.0;
            return rate;
          }};
}

ScalarField RelativisticParticle::reduced_hamiltonian() const {
  const std::size_t d = dim_;
  const double m2 = mass_ * mass_;
  return ScalarField::expression(reduced_, "H_phys", [d, m2](auto x) {
    using T = elem_t<decltype(x)>;
    using std::sqrt;
    T s(m2);
    for (std::size_t i = 0; i < d; ++i) s += x[d + i] * x[d + i];
    return sqrt(s);
  });
}

double RelativisticParticle::energy(std::span<const double> p) const {
  if (p.size() != dim_) throw UsageError("momentum has the wrong dimension");
  double s = mass_ * mass_;
  for (double v : p) s += v * v;
  return std::sqrt(s);
}

std::vector<double> RelativisticParticle::trajectory(std::span<const double> x0,
                                                     std::span<const double> p,
                                                     double tau) const {
  if (x0.size() != dim_) throw UsageError("position has the wrong dimension");
  const double e = energy(p);
  std::vector<double> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = x0[i] + p[i] * tau / e;
  return out;
}

PhaseSpacePoint RelativisticParticle::on_shell_point(std::span<const double> x,
                                                     std::span<const double> p,
                                                     double tau) const {
  if (x.size() != dim_) throw UsageError("position has the wrong dimension");
  std::vector<double> coords(chart_->dim());
  coords[0] = tau;
  std::copy(x.begin(), x.end(), coords.begin() + 1);
  coords[dim_ + 1] = energy(p);
  for (std::size_t i = 0; i < dim_; ++i) coords[dim_ + 2 + i] = -p[i];
  return {chart_, std::move(coords)};
}

PhaseSpacePoint RelativisticParticle::sample_on_shell(Sampler& rng) const {
  std::vector<double> x(dim_);
  std::vector<double> p(dim_);
  for (auto& v : x) v = rng.uniform(-5.0, 5.0);
  for (auto& v : p) v = rng.uniform(-5.0, 5.0);
  const double tau = rng.uniform(-10.0, 10.0);
  return on_shell_point(x, p, tau);
}

RelativisticParticle::BracketReport RelativisticParticle::bracket_suite(
    std::span<const PhaseSpacePoint> samples) const {
  const ScalarField c = mass_shell();
  std::vector<ScalarField> xs;
  std::vector<ScalarField> ps;
  for (std::size_t i = 1; i <= dim_; ++i) {
    xs.push_back(ScalarField::coordinate(chart_, i));
    ps.push_back(ScalarField::coordinate(chart_, dim_ + 1 + i));
  }
  BracketReport report;
  for (const auto& x : samples) {
    require_same_chart(*chart_, x.chart(), "particle bracket suite");
    const double p0 = x[dim_ + 1];
    if (!(p0 > 0.0) || !(std::abs(c(x)) < kSurfaceTolerance * std::max(1.0, p0 * p0))) {
      throw UsageError("particle sample is off the positive-energy mass shell");
    }
    const ConstraintSet cs = second_class_set(x[0]);
    report.chi_c_err =
        std::max(report.chi_c_err, std::abs(poisson_bracket(cs[0], cs[1], x) - p0));
    const DiracStructure db(cs, x);
    const Eigen::MatrixXd xp = db.bracket_matrix(xs, ps);
    const Eigen::MatrixXd xx = db.bracket_matrix(xs, xs);
    const Eigen::MatrixXd pp = db.bracket_matrix(ps, ps);
    const auto d = static_cast<Eigen::Index>(dim_);
    report.xp_err = std::max(
        report.xp_err, (xp - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff());
    report.xx_max = std::max(report.xx_max, xx.cwiseAbs().maxCoeff());
    report.pp_max = std::max(report.pp_max, pp.cwiseAbs().maxCoeff());
  }
  return report;
}

}  // namespace dirac
