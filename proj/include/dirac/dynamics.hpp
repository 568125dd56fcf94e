#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "dirac/chart.hpp"
#include "dirac/constraints.hpp"
#include "dirac/scalar_field.hpp"

namespace dirac {

enum class Scheme { rk4 };

struct NewtonProjection {
  double tol = 1e-12;
  int max_iter = 10;
};

struct IntegratorConfig {
  double dt = 1e-3;
  std::size_t steps = 1000;
  Scheme scheme = Scheme::rk4;
  std::optional<NewtonProjection> projection;  // none by default
  double t0 = 0.0;
  std::size_t record_every = 1;  // the final step is always recorded

  void validate() const;
};

/// Constraints with explicit time dependence, e.g. chi = r p_r - k(t).
struct TimeDependence {
  std::function<ConstraintSet(double)> at;
  /// Explicit partial derivative dPhi_I/dt at (z, t).
  std::function<Eigen::VectorXd(std::span<const double>, double)> rate;
};

struct PoissonFlow {
  ScalarField hamiltonian;
};

struct DiracFlow {
  ScalarField hamiltonian;
  ConstraintSet constraints;  // used when time_dependence is empty
  std::optional<TimeDependence> time_dependence;
};

/// zdot = lambda(t) {z, generator}
struct GaugeFlow {
  ScalarField generator;
  std::function<double(double)> multiplier;
};

using FlowSpec = std::variant<PoissonFlow, DiracFlow, GaugeFlow>;

struct Trajectory {
  std::vector<double> times;
  std::vector<PhaseSpacePoint> points;
  std::vector<std::string> constraint_names;
  std::vector<std::vector<double>> residuals;  // residuals[step][I] = |Phi_I|
};

/// Integration stopped early; partial() holds every step completed before the failure.
class FlowInterrupted : public std::runtime_error {
 public:
  enum class Cause { degeneracy, blow_up, domain };

  FlowInterrupted(const std::string& what, Cause cause, Trajectory partial)
      : std::runtime_error(what), cause_(cause), partial_(std::move(partial)) {}

  Cause cause() const noexcept { return cause_; }
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  Cause cause_;
  Trajectory partial_;
};

inline constexpr double kBlowUpThreshold = 1e12;

/// RK4 integration of zdot_a = {z_a, G} with the bracket chosen by the flow kind.
/// Dirac flows must start on the surface (|Phi_I| < 1e-8). Residuals are taken
/// from the flow's constraints, or from `monitor` when given.
Trajectory evolve(const PhaseSpacePoint& x0, const FlowSpec& flow, const IntegratorConfig& cfg,
                  const ConstraintSet* monitor = nullptr);

/// Newton projection onto Phi = 0 along the minimal-norm correction.
std::vector<double> project_to_surface(const ConstraintSet& cs, std::span<const double> z,
                                       const NewtonProjection& opts);

struct GaugeState {
  std::array<double, 2> q;
  std::array<double, 2> p;
};

/// q(T) = q0 cosh(aT) + (p0/a) sinh(aT), p(T) = p0 cosh(aT) + a q0 sinh(aT).
GaugeState gauge_closed_form_klauder(const std::array<double, 2>& q0,
                                     const std::array<double, 2>& p0, double alpha, double t);

struct ConstraintDrift {
  std::string name;
  double max_residual = 0.0;
  double growth_rate = 0.0;  // slope of the least-squares line through |Phi_I|(t)
};

/// Drift from the residuals recorded during integration.
std::vector<ConstraintDrift> constraint_drift(const Trajectory& traj);
/// Drift of an arbitrary set re-evaluated along the trajectory.
std::vector<ConstraintDrift> constraint_drift(const Trajectory& traj, const ConstraintSet& cs);

/// lambda = kdot / (|p|^2 + alpha^2 |q|^2) on the Cartesian chart (q1, q2, p1, p2).
double multiplier_from_gauge(const PhaseSpacePoint& x, double kdot, double alpha);

}  // namespace dirac
