#include "dirac/scalar_field.hpp"

#include <algorithm>
#include <cmath>

#include "dirac/errors.hpp"

namespace dirac {

void central_difference_gradient(const std::function<double(std::span<const double>)>& f,
                                 std::span<const double> x, std::span<double> out,
                                 double step) {
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    out[i] = (up - down) / (2.0 * h);
  }
}

ScalarField::ScalarField(ChartPtr chart, std::string name, ValueFn value, GradientFn gradient,
                         GradientKind kind, double step)
    : chart_(std::move(chart)),
      name_(std::move(name)),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      kind_(kind),
      step_(step) {
  if (!chart_) throw UsageError("scalar field '" + name_ + "' without a chart");
}

ScalarField ScalarField::with_gradient(ChartPtr chart, std::string name, ValueFn value,
                                       GradientFn gradient) {
  return ScalarField(std::move(chart), std::move(name), std::move(value), std::move(gradient),
                     GradientKind::exact, 0.0);
}

ScalarField ScalarField::numerical(ChartPtr chart, std::string name, ValueFn value,
                                   double step) {
  if (!(step > 0.0)) throw UsageError("finite-difference step must be positive");
  GradientFn gradient = [value, step](std::span<const double> x, std::span<double> out) {
    central_difference_gradient(value, x, out, step);
  };
  return ScalarField(std::move(chart), std::move(name), std::move(value), std::move(gradient),
                     GradientKind::numerical, step);
}

ScalarField ScalarField::coordinate(ChartPtr chart, std::size_t index) {
  if (index >= chart->dim()) throw UsageError("coordinate index out of range");
  std::string name = chart->label(index);
  return ScalarField(
      std::move(chart), std::move(name),
      [index](std::span<const double> x) { return x[index]; },
      [index](std::span<const double>, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        out[index] = 1.0;
      },
      GradientKind::exact, 0.0);
}

ScalarField ScalarField::coordinate(ChartPtr chart, std::string_view label) {
  const std::size_t index = chart->index_of(label);
  return coordinate(std::move(chart), index);
}

ScalarField ScalarField::linear(ChartPtr chart, std::string name, std::vector<double> coeffs,
                                double offset) {
  if (coeffs.size() != chart->dim()) throw UsageError("linear field: coefficient count mismatch");
  auto shared = std::make_shared<const std::vector<double>>(std::move(coeffs));
  return ScalarField(
      std::move(chart), std::move(name),
      [shared, offset](std::span<const double> x) {
        double s = offset;
        for (std::size_t i = 0; i < x.size(); ++i) s += (*shared)[i] * x[i];
        return s;
      },
      [shared](std::span<const double>, std::span<double> out) {
        std::copy(shared->begin(), shared->end(), out.begin());
      },
      GradientKind::exact, 0.0);
}

ScalarField ScalarField::constant(ChartPtr chart, double c) {
  return ScalarField(
      std::move(chart), "const",
      [c](std::span<const double>) { return c; },
      [](std::span<const double>, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
      },
      GradientKind::exact, 0.0);
}

ScalarField ScalarField::renamed(std::string name) const {
  ScalarField copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

double ScalarField::operator()(const PhaseSpacePoint& x) const {
  require_same_chart(*chart_, x.chart(), "evaluate '" + name_ + "'");
  return value_(x.coords());
}

std::vector<double> ScalarField::gradient(const PhaseSpacePoint& x) const {
  require_same_chart(*chart_, x.chart(), "gradient of '" + name_ + "'");
  std::vector<double> out(x.size());
  gradient_(x.coords(), out);
  return out;
}

double poisson_bracket(std::span<const double> grad_a, std::span<const double> grad_b) {
  const std::size_t n = grad_a.size() / 2;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += grad_a[i] * grad_b[n + i] - grad_b[i] * grad_a[n + i];
  }
  return sum;
}

namespace {

void require_finite(const ScalarField& f, std::span<const double> grad) {
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (!std::isfinite(grad[i])) {
      throw NumericError("non-finite gradient of '" + f.name() + "' along '" +
                         f.chart().label(i) + "'");
    }
  }
}

}  // namespace

double poisson_bracket(const ScalarField& a, const ScalarField& b, const PhaseSpacePoint& x) {
  require_same_chart(a.chart(), b.chart(), "poisson_bracket");
  require_same_chart(a.chart(), x.chart(), "poisson_bracket");
  const auto ga = a.gradient(x);
  const auto gb = b.gradient(x);
  require_finite(a, ga);
  require_finite(b, gb);
  return poisson_bracket(ga, gb);
}

GradientReport gradient_consistency_check(const ScalarField& f, const PhaseSpacePoint& x) {
  const auto g = f.gradient(x);
  std::vector<double> fd(x.size());
  central_difference_gradient([&f](std::span<const double> z) { return f.value(z); },
                              x.coords(), fd);
  GradientReport report;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double err = std::abs(g[i] - fd[i]) / std::max(1.0, std::abs(fd[i]));
    if (!(err <= report.max_rel_err)) {  // NaN counts as worst
      report.max_rel_err = std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
      report.worst_label = x.chart().label(i);
    }
  }
  return report;
}

}  // namespace dirac
