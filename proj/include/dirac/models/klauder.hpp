#pragma once

#include <string_view>

#include "dirac/chart.hpp"
#include "dirac/constraints.hpp"
#include "dirac/dynamics.hpp"
#include "dirac/polynomial.hpp"
#include "dirac/sampling.hpp"
#include "dirac/scalar_field.hpp"

namespace dirac {

/// Klauder's two-dimensional toy model. Polar chart (r, phi, p_r, p_phi) with
/// r > 1e-12, constraint C = (p_r^2 + p_phi^2/r^2 - alpha^2 r^2)/2, gauge
/// condition chi = r p_r - k(t) with k(t) = k0 + k1 t.
class KlauderModel {
 public:
  KlauderModel(double alpha, double k0, double k1 = 0.0, double hbar = 1.0,
               Polynomial1D potential = {});

  double alpha() const noexcept { return alpha_; }
  double k(double t = 0.0) const noexcept { return k0_ + k1_ * t; }
  double kdot() const noexcept { return k1_; }
  bool time_dependent() const noexcept { return k1_ != 0.0; }
  double hbar() const noexcept { return hbar_; }
  const Polynomial1D& potential() const noexcept { return potential_; }

  static const ChartPtr& polar_chart();
  /// (x, y, p_x, p_y)
  static const ChartPtr& cartesian_chart();
  /// (phi, p_phi)
  static const ChartPtr& reduced_chart();

  ScalarField constraint() const;
  ScalarField gauge_condition(double t = 0.0) const;
  ScalarField potential_field() const;
  /// C + U(r)
  ScalarField physical_hamiltonian() const;
  /// (p.p - alpha^2 q.q)/2 on the Cartesian chart.
  ScalarField cartesian_constraint() const;

  /// (chi, C)
  ConstraintSet second_class_set(double t = 0.0) const;
  /// (C) alone.
  ConstraintSet first_class_set() const;
  /// chi carries explicit time through k(t): dchi/dt = -k1.
  TimeDependence time_dependence() const;

  struct ReducedValues {
    double r_star;
    double pr_star;
  };
  /// r* = ((k^2 + p_phi^2)/alpha^2)^(1/4), p_r* = k/r*.
  ReducedValues reduced_point(double p_phi, double t = 0.0) const;
  PhaseSpacePoint embedded_point(double phi, double p_phi, double t = 0.0) const;
  SurfaceParametrization surface(double t = 0.0) const;

  /// Closed-form Dirac bracket of two polar coordinates, valid off the surface.
  double dirac_oracle(std::string_view a, std::string_view b, const PhaseSpacePoint& x) const;
  /// p_phi^2 + r^2 p_r^2 + alpha^2 r^4
  double bracket_denominator(const PhaseSpacePoint& x) const;

  /// dphi/dt = {phi, C + U}_DB on the surface = p_phi U'(r*) / (2 alpha^2 r*^3).
  double phi_rate(double p_phi, double t = 0.0) const;

  /// r uniform in [0.1, 5], the other coordinates in [-5, 5].
  PhaseSpacePoint sample_point(Sampler& rng) const;
  /// phi, p_phi uniform in [-5, 5], resampled until r* >= 0.05.
  PhaseSpacePoint sample_reduced_point(Sampler& rng, double t = 0.0) const;
  PhaseSpacePoint sample_surface_point(Sampler& rng, double t = 0.0) const;

 private:
  double alpha_;
  double k0_;
  double k1_;
  double hbar_;
  Polynomial1D potential_;
};

}  // namespace dirac
