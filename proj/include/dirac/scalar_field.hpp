#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dirac/chart.hpp"
#include "dirac/dual.hpp"

namespace dirac {

enum class GradientKind { exact, numerical };

/// cbrt(machine epsilon): the usual optimum for second-order central differences.
inline double default_fd_step() { return std::cbrt(std::numeric_limits<double>::epsilon()); }

/// Central-difference gradient with h_i = step * max(1, |x_i|).
void central_difference_gradient(const std::function<double(std::span<const double>)>& f,
                                 std::span<const double> x, std::span<double> out,
                                 double step = default_fd_step());

/// A differentiable real function on a chart: a constraint, gauge condition,
/// Hamiltonian or observable. Immutable; copies share the underlying callables.
class ScalarField {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

  /// Field from a generic callable `f(std::span<const T>) -> T` that works for
  /// T = double and T = Dual. The gradient is exact (forward mode, one seed per
  /// coordinate).
  template <class F>
  static ScalarField expression(ChartPtr chart, std::string name, F f);

  /// Field with a caller-supplied closed-form gradient.
  static ScalarField with_gradient(ChartPtr chart, std::string name, ValueFn value,
                                   GradientFn gradient);

  /// Field whose gradient is estimated by central differences.
  static ScalarField numerical(ChartPtr chart, std::string name, ValueFn value,
                               double step = default_fd_step());

  static ScalarField coordinate(ChartPtr chart, std::size_t index);
  static ScalarField coordinate(ChartPtr chart, std::string_view label);

  /// offset + coeffs · x
  static ScalarField linear(ChartPtr chart, std::string name, std::vector<double> coeffs,
                            double offset = 0.0);

  static ScalarField constant(ChartPtr chart, double c);

  double operator()(const PhaseSpacePoint& x) const;
  double value(std::span<const double> x) const { return value_(x); }

  std::vector<double> gradient(const PhaseSpacePoint& x) const;
  void gradient(std::span<const double> x, std::span<double> out) const { gradient_(x, out); }

  const Chart& chart() const noexcept { return *chart_; }
  const ChartPtr& chart_ptr() const noexcept { return chart_; }
  const std::string& name() const noexcept { return name_; }
  GradientKind gradient_kind() const noexcept { return kind_; }
  /// Finite-difference step factor; 0 for exact fields.
  double step() const noexcept { return step_; }

  /// Same field under a different name.
  ScalarField renamed(std::string name) const;

 private:
  ScalarField(ChartPtr chart, std::string name, ValueFn value, GradientFn gradient,
              GradientKind kind, double step);

  ChartPtr chart_;
  std::string name_;
  ValueFn value_;
  GradientFn gradient_;
  GradientKind kind_;
  double step_;
};

template <class F>
ScalarField ScalarField::expression(ChartPtr chart, std::string name, F f) {
  ValueFn value = [f](std::span<const double> x) -> double { return f(x); };
  GradientFn gradient = [f](std::span<const double> x, std::span<double> out) {
    std::vector<Dual> z(x.begin(), x.end());
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i].d = 1.0;
      out[i] = f(std::span<const Dual>(z)).d;
      z[i].d = 0.0;
    }
  };
  return ScalarField(std::move(chart), std::move(name), std::move(value), std::move(gradient),
                     GradientKind::exact, 0.0);
}

/// {a, b} = sum_i (da/dq_i db/dp_i - db/dq_i da/dp_i) at x.
double poisson_bracket(const ScalarField& a, const ScalarField& b, const PhaseSpacePoint& x);

/// Poisson bracket of two gradient vectors laid out as (dq_1..dq_N, dp_1..dp_N).
double poisson_bracket(std::span<const double> grad_a, std::span<const double> grad_b);

struct GradientReport {
  double max_rel_err = 0.0;
  std::string worst_label;
};

/// Compares f's gradient map against central differences; the discrepancy of
/// each component is |g - fd| / max(1, |fd|).
GradientReport gradient_consistency_check(const ScalarField& f, const PhaseSpacePoint& x);

}  // namespace dirac
