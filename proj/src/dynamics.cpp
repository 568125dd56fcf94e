#include "dirac/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirac/errors.hpp"

namespace dirac {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("integrator dt must be positive");
  if (!std::isfinite(dt * static_cast<double>(steps))) {
    throw UsageError("integrator dt * steps is not finite");
  }
  if (record_every == 0) throw UsageError("record_every must be at least 1");
  if (projection) {
    if (!(projection->tol > 0.0)) throw UsageError("projection tolerance must be positive");
    if (projection->max_iter < 1) throw UsageError("projection needs at least one iteration");
  }
}

namespace {

using Vec = Eigen::VectorXd;

std::vector<double> to_std(const Vec& v) { return {v.data(), v.data() + v.size()}; }

Vec gradient_vec(const ScalarField& f, std::span<const double> z) {
  Vec g(static_cast<Eigen::Index>(z.size()));
  f.gradient(z, std::span<double>(g.data(), z.size()));
  return g;
}

Vec symplectic(const Vec& g) { return symplectic_gradient(std::span<const double>(g.data(), g.size())); }

struct Stepper {
  const FlowSpec& flow;
  const ChartPtr& chart;

  const ConstraintSet* constraints_at(double t, std::optional<ConstraintSet>& storage) const {
    const auto* d = std::get_if<DiracFlow>(&flow);
    if (d == nullptr) return nullptr;
    if (d->time_dependence) {
      storage = d->time_dependence->at(t);
      return &*storage;
    }
    return &d->constraints;
  }

  Vec field(double t, const Vec& z) const {
    const std::span<const double> zs(z.data(), static_cast<std::size_t>(z.size()));
    return std::visit(
        [&](const auto& f) -> Vec {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, PoissonFlow>) {
            return symplectic(gradient_vec(f.hamiltonian, zs));
          } else if constexpr (std::is_same_v<T, GaugeFlow>) {
            return f.multiplier(t) * symplectic(gradient_vec(f.generator, zs));
          } else {
            std::optional<ConstraintSet> storage;
            const ConstraintSet* cs = constraints_at(t, storage);
            const PhaseSpacePoint x(chart, to_std(z));
            const DiracStructure db(*cs, x);
            const Vec g = gradient_vec(f.hamiltonian, zs);
            if (f.time_dependence) {
              const Vec rate = f.time_dependence->rate(zs, t);
              return db.flow(std::span<const double>(g.data(), zs.size()), &rate);
            }
            return db.flow(std::span<const double>(g.data(), zs.size()));
          }
        },
        flow);
  }
};

void record(Trajectory& traj, double t, const Vec& z, const ChartPtr& chart,
            const ConstraintSet* monitor) {
  traj.times.push_back(t);
  traj.points.emplace_back(chart, to_std(z));
  std::vector<double> res;
  if (monitor != nullptr) {
    res = monitor->values(std::span<const double>(z.data(), static_cast<std::size_t>(z.size())));
    for (auto& v : res) v = std::abs(v);
  }
  traj.residuals.push_back(std::move(res));
}

}  // namespace

std::vector<double> project_to_surface(const ConstraintSet& cs, std::span<const double> z,
                                       const NewtonProjection& opts) {
  Vec x = Eigen::Map<const Vec>(z.data(), static_cast<Eigen::Index>(z.size()));
  for (int it = 0; it < opts.max_iter; ++it) {
    const std::span<const double> xs(x.data(), z.size());
    const auto vals = cs.values(xs);
    const Vec phi = Eigen::Map<const Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    if (phi.size() == 0 || phi.cwiseAbs().maxCoeff() < opts.tol) break;
    const Eigen::MatrixXd j = cs.gradients(xs);
    const Vec mult = (j * j.transpose()).ldlt().solve(-phi);
    x += j.transpose() * mult;
  }
  return to_std(x);
}

Trajectory evolve(const PhaseSpacePoint& x0, const FlowSpec& flow, const IntegratorConfig& cfg,
                  const ConstraintSet* monitor) {
  cfg.validate();
  const ChartPtr& chart = x0.chart_ptr();
  const Stepper stepper{flow, chart};

  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PoissonFlow>) {
          require_same_chart(*chart, f.hamiltonian.chart(), "evolve");
        } else if constexpr (std::is_same_v<T, GaugeFlow>) {
          require_same_chart(*chart, f.generator.chart(), "evolve");
          if (!f.multiplier) throw UsageError("gauge flow needs a multiplier");
        } else {
          require_same_chart(*chart, f.hamiltonian.chart(), "evolve");
        }
      },
      flow);

  std::optional<ConstraintSet> storage;
  auto active_monitor = [&](double t) -> const ConstraintSet* {
    if (monitor != nullptr) return monitor;
    return stepper.constraints_at(t, storage);
  };

  Trajectory traj;
  if (const auto* cs = active_monitor(cfg.t0)) {
    traj.constraint_names = cs->names();
    if (std::holds_alternative<DiracFlow>(flow)) {
      std::optional<ConstraintSet> s0;
      stepper.constraints_at(cfg.t0, s0);
      const ConstraintSet& dirac_cs = s0 ? *s0 : std::get<DiracFlow>(flow).constraints;
      require_same_chart(*chart, dirac_cs.chart(), "evolve");
      dirac_cs.require_on_surface(x0, 1e-8);
    }
  }

  Vec z = Eigen::Map<const Vec>(x0.coords().data(), static_cast<Eigen::Index>(x0.size()));
  record(traj, cfg.t0, z, chart, active_monitor(cfg.t0));

  const double h = cfg.dt;
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    const double t = cfg.t0 + static_cast<double>(step - 1) * h;
    const double t_next = cfg.t0 + static_cast<double>(step) * h;
    try {
      const Vec k1 = stepper.field(t, z);
      const Vec k2 = stepper.field(t + 0.5 * h, z + 0.5 * h * k1);
      const Vec k3 = stepper.field(t + 0.5 * h, z + 0.5 * h * k2);
      const Vec k4 = stepper.field(t_next, z + h * k3);
      Vec next = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (cfg.projection) {
        if (const auto* cs = active_monitor(t_next)) {
          next = Eigen::Map<const Vec>(
              project_to_surface(*cs, std::span<const double>(next.data(), next.size()),
                                 *cfg.projection)
                  .data(),
              next.size());
        }
      }
      for (Eigen::Index i = 0; i < next.size(); ++i) {
        if (!std::isfinite(next(i)) || std::abs(next(i)) > kBlowUpThreshold) {
          std::ostringstream msg;
          msg << "blow-up at step " << step << " (t = " << t_next << "): coordinate '"
              << chart->label(static_cast<std::size_t>(i)) << "' = " << next(i);
          throw FlowInterrupted(msg.str(), FlowInterrupted::Cause::blow_up, std::move(traj));
        }
      }
      z = std::move(next);
      if (step % cfg.record_every == 0 || step == cfg.steps) {
        record(traj, t_next, z, chart, active_monitor(t_next));
      }
    } catch (const DegeneracyError& e) {
      std::ostringstream msg;
      msg << "step " << step << " (t = " << t << "): " << e.what();
      throw FlowInterrupted(msg.str(), FlowInterrupted::Cause::degeneracy, std::move(traj));
    } catch (const DomainError& e) {
      std::ostringstream msg;
      msg << "step " << step << " (t = " << t << "): " << e.what();
      throw FlowInterrupted(msg.str(), FlowInterrupted::Cause::domain, std::move(traj));
    }
  }
  return traj;
}

GaugeState gauge_closed_form_klauder(const std::array<double, 2>& q0,
                                     const std::array<double, 2>& p0, double alpha, double t) {
  if (alpha == 0.0) throw UsageError("gauge closed form needs alpha != 0");
  const double c = std::cosh(alpha * t);
  const double s = std::sinh(alpha * t);
  GaugeState out{};
  for (std::size_t i = 0; i < 2; ++i) {
    out.q[i] = q0[i] * c + (p0[i] / alpha) * s;
    out.p[i] = p0[i] * c + alpha * q0[i] * s;
  }
  return out;
}

namespace {

double fit_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  double tm = 0.0;
  double ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tm += t[i];
    ym += y[i];
  }
  tm /= static_cast<double>(n);
  ym /= static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (t[i] - tm) * (y[i] - ym);
    den += (t[i] - tm) * (t[i] - tm);
  }
  return den > 0.0 ? num / den : 0.0;
}

std::vector<ConstraintDrift> drift_from(const std::vector<std::string>& names,
                                        const std::vector<double>& times,
                                        const std::vector<std::vector<double>>& residuals) {
  std::vector<ConstraintDrift> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<double> series;
    series.reserve(residuals.size());
    for (const auto& row : residuals) series.push_back(row.at(i));
    ConstraintDrift d;
    d.name = names[i];
    for (double v : series) d.max_residual = std::max(d.max_residual, v);
    d.growth_rate = fit_slope(times, series);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

std::vector<ConstraintDrift> constraint_drift(const Trajectory& traj) {
  return drift_from(traj.constraint_names, traj.times, traj.residuals);
}

std::vector<ConstraintDrift> constraint_drift(const Trajectory& traj, const ConstraintSet& cs) {
  std::vector<std::vector<double>> residuals;
  residuals.reserve(traj.points.size());
  for (const auto& x : traj.points) {
    auto vals = cs.values(x);
    for (auto& v : vals) v = std::abs(v);
    residuals.push_back(std::move(vals));
  }
  return drift_from(cs.names(), traj.times, residuals);
}

double multiplier_from_gauge(const PhaseSpacePoint& x, double kdot, double alpha) {
  if (x.chart().pairs() != 2) throw UsageError("multiplier_from_gauge needs the Cartesian chart");
  const double q1 = x.q(0);
  const double q2 = x.q(1);
  const double p1 = x.p(0);
  const double p2 = x.p(1);
  const double denom = p1 * p1 + p2 * p2 + alpha * alpha * (q1 * q1 + q2 * q2);
  if (!(denom > 0.0)) {
    throw DegeneracyError("multiplier undefined: |p|^2 + alpha^2 |q|^2 vanishes", denom,
                          {x.coords().begin(), x.coords().end()});
  }
  return kdot / denom;
}

}  // namespace dirac
