#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dirac/chart.hpp"
#include "dirac/constraints.hpp"
#include "dirac/dynamics.hpp"
#include "dirac/sampling.hpp"
#include "dirac/scalar_field.hpp"

namespace dirac {

/// Free relativistic particle in d spatial dimensions. Chart (x0..xd, p0..pd)
/// with covariant momenta, signature (+,-,...,-): the physical momentum is
/// p^i = -p_i. Mass shell C = (p0^2 - sum p_i^2 - m^2)/2, time gauge chi = x0 - tau.
class RelativisticParticle {
 public:
  RelativisticParticle(double mass, std::size_t spatial_dim);

  double mass() const noexcept { return mass_; }
  std::size_t spatial_dim() const noexcept { return dim_; }

  const ChartPtr& chart() const noexcept { return chart_; }
  /// (x1..xd, p1..pd) with physical momenta.
  const ChartPtr& reduced_chart() const noexcept { return reduced_; }

  ScalarField mass_shell() const;
  ScalarField time_gauge(double tau) const;
  /// (chi, C)
  ConstraintSet second_class_set(double tau) const;
  TimeDependence time_dependence() const;
  /// sqrt(p.p + m^2) on the reduced chart.
  ScalarField reduced_hamiltonian() const;

  double energy(std::span<const double> p) const;
  /// x^i(tau) = x^i(0) + p^i tau / sqrt(p.p + m^2)
  std::vector<double> trajectory(std::span<const double> x0, std::span<const double> p,
                                 double tau) const;

  /// Positive-energy on-shell point at x0 = tau with physical momentum p.
  PhaseSpacePoint on_shell_point(std::span<const double> x, std::span<const double> p,
                                 double tau) const;
  /// x^i, p^i uniform in [-5, 5], tau in [-10, 10].
  PhaseSpacePoint sample_on_shell(Sampler& rng) const;

  struct BracketReport {
    double chi_c_err = 0.0;  // max |{chi, C} - p0|
    double xp_err = 0.0;     // max |{x^i, p_j}_DB - delta_ij|
    double xx_max = 0.0;     // max |{x^i, x^j}_DB|
    double pp_max = 0.0;     // max |{p_i, p_j}_DB|
  };
  /// Samples must be on shell with p0 > 0; chi is centred on each sample's x0.
  BracketReport bracket_suite(std::span<const PhaseSpacePoint> samples) const;

 private:
  double mass_;
  std::size_t dim_;
  ChartPtr chart_;
  ChartPtr reduced_;
};

}  // namespace dirac
