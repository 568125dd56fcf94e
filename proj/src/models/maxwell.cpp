#include "dirac/models/maxwell.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dirac/errors.hpp"

namespace dirac {

namespace {

std::vector<std::string> maxwell_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(6 * n);
  for (const char* field : {"A", "E"}) {
    for (int i = 1; i <= 3; ++i) {
      for (std::size_t s = 0; s < n; ++s) {
        labels.push_back(std::string(field) + std::to_string(i) + "_" + std::to_string(s));
      }
    }
  }
  return labels;
}

}  // namespace

LatticeMaxwell::LatticeMaxwell(std::size_t side, double spacing)
    : side_(side), spacing_(spacing), n_(side * side * side) {
  if (side_ < 2) throw UsageError("lattice side must be at least 2");
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) {
    throw UsageError("lattice spacing must be positive");
  }
  chart_ = make_chart(maxwell_labels(n_));
}

std::size_t LatticeMaxwell::site(std::size_t x, std::size_t y, std::size_t z) const {
  return (x % side_) + side_ * ((y % side_) + side_ * (z % side_));
}

Eigen::MatrixXd LatticeMaxwell::gradient_operator() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3 * n, n);
  const double inv_a = 1.0 / spacing_;
  for (std::size_t z = 0; z < side_; ++z) {
    for (std::size_t y = 0; y < side_; ++y) {
      for (std::size_t x = 0; x < side_; ++x) {
        const auto s = static_cast<Eigen::Index>(site(x, y, z));
        const Eigen::Index fwd[3] = {static_cast<Eigen::Index>(site(x + 1, y, z)),
                                     static_cast<Eigen::Index>(site(x, y + 1, z)),
                                     static_cast<Eigen::Index>(site(x, y, z + 1))};
        for (Eigen::Index i = 0; i < 3; ++i) {
          d(i * n + s, fwd[i]) += inv_a;
          d(i * n + s, s) -= inv_a;
        }
      }
    }
  }
  return d;
}

Eigen::MatrixXd LatticeMaxwell::transverse_projector() const {
  const Eigen::MatrixXd d = gradient_operator();
  const auto n = static_cast<Eigen::Index>(n_);
  // (D^T D)^+ = (D^T D + 11^T/n)^-1 - 11^T/n; the second term drops out since D1 = 0.
  const Eigen::MatrixXd shifted =
      d.transpose() * d + Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd longitudinal = d * shifted.ldlt().solve(d.transpose());
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(3 * n, 3 * n) - longitudinal;
  return 0.5 * (p + p.transpose());
}

ConstraintSet LatticeMaxwell::constraints() const {
  const Eigen::MatrixXd d = gradient_operator();
  const std::size_t comps = components();
  std::vector<ScalarField> phis;
  phis.reserve(2 * (n_ - 1));
  for (std::size_t s = 0; s + 1 < n_; ++s) {
    // div v (s) = -(D^T v)(s): row s of -D^T is column s of -D.
    std::vector<double> gauss(2 * comps, 0.0);
    std::vector<double> transverse(2 * comps, 0.0);
    for (std::size_t j = 0; j < comps; ++j) {
      const double c = -d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(s));
      gauss[comps + j] = c;
      transverse[j] = c;
    }
    phis.push_back(
        ScalarField::linear(chart_, "gauss_" + std::to_string(s), std::move(gauss)));
    phis.push_back(
        ScalarField::linear(chart_, "div_A_" + std::to_string(s), std::move(transverse)));
  }
  return {chart_, std::move(phis)};
}

LatticeMaxwell::DiracBlocks LatticeMaxwell::dirac_matrix() const {
  const ConstraintSet cs = constraints();
  const PhaseSpacePoint origin(chart_, std::vector<double>(chart_->dim(), 0.0));
  const DiracStructure db(cs, origin);
  std::vector<ScalarField> as;
  std::vector<ScalarField> es;
  for (std::size_t j = 0; j < components(); ++j) {
    as.push_back(ScalarField::coordinate(chart_, j));
    es.push_back(ScalarField::coordinate(chart_, components() + j));
  }
  return {db.bracket_matrix(as, es), db.bracket_matrix(as, as), db.bracket_matrix(es, es)};
}

Eigen::VectorXd LatticeMaxwell::divergence(const Eigen::VectorXd& v) const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  const double inv_a = 1.0 / spacing_;
  const std::size_t back = side_ - 1;
  for (std::size_t z = 0; z < side_; ++z) {
    for (std::size_t y = 0; y < side_; ++y) {
      for (std::size_t x = 0; x < side_; ++x) {
        const auto s = static_cast<Eigen::Index>(site(x, y, z));
        const Eigen::Index prev[3] = {static_cast<Eigen::Index>(site(x + back, y, z)),
                                      static_cast<Eigen::Index>(site(x, y + back, z)),
                                      static_cast<Eigen::Index>(site(x, y, z + back))};
        double acc = 0.0;
        for (Eigen::Index i = 0; i < 3; ++i) acc += v(i * n + s) - v(i * n + prev[i]);
        out(s) = acc * inv_a;
      }
    }
  }
  return out;
}

Eigen::VectorXd LatticeMaxwell::stiffness(const Eigen::VectorXd& a) const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::VectorXd out(3 * n);
  const double inv_a2 = 1.0 / (spacing_ * spacing_);
  const std::size_t back = side_ - 1;
  for (std::size_t z = 0; z < side_; ++z) {
    for (std::size_t y = 0; y < side_; ++y) {
      for (std::size_t x = 0; x < side_; ++x) {
        const auto s = static_cast<Eigen::Index>(site(x, y, z));
        const Eigen::Index nb[6] = {static_cast<Eigen::Index>(site(x + 1, y, z)),
                                    static_cast<Eigen::Index>(site(x + back, y, z)),
                                    static_cast<Eigen::Index>(site(x, y + 1, z)),
                                    static_cast<Eigen::Index>(site(x, y + back, z)),
                                    static_cast<Eigen::Index>(site(x, y, z + 1)),
                                    static_cast<Eigen::Index>(site(x, y, z + back))};
        for (Eigen::Index c = 0; c < 3; ++c) {
          const Eigen::Index off = c * n;
          double acc = 6.0 * a(off + s);
          for (Eigen::Index k = 0; k < 6; ++k) acc -= a(off + nb[k]);
          out(off + s) = acc * inv_a2;
        }
      }
    }
  }
  return out;
}

double LatticeMaxwell::energy(const Eigen::VectorXd& a, const Eigen::VectorXd& e) const {
  return 0.5 * (e.squaredNorm() + a.dot(stiffness(a)));
}

double LatticeMaxwell::gauss_residual(const Eigen::VectorXd& e) const {
  return divergence(e).cwiseAbs().maxCoeff();
}

bool LatticeMaxwell::is_transverse(const Eigen::VectorXd& v, double tol) const {
  if (v.size() != static_cast<Eigen::Index>(components())) {
    throw UsageError("field has " + std::to_string(v.size()) + " components, expected " +
                     std::to_string(components()));
  }
  const Eigen::VectorXd pv = transverse_projector() * v;
  return (pv - v).norm() <= tol * std::max(1.0, v.norm());
}

Eigen::VectorXd LatticeMaxwell::eigenmode(int n) const {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(components()));
  const double k = 2.0 * std::numbers::pi * n / static_cast<double>(side_);
  for (std::size_t z = 0; z < side_; ++z) {
    for (std::size_t y = 0; y < side_; ++y) {
      for (std::size_t x = 0; x < side_; ++x) {
        a(static_cast<Eigen::Index>(site(x, y, z))) = std::cos(k * static_cast<double>(y));
      }
    }
  }
  return a;
}

double LatticeMaxwell::eigenmode_omega2(int n) const {
  const double s = std::sin(std::numbers::pi * n / static_cast<double>(side_));
  return 4.0 * s * s / (spacing_ * spacing_);
}

Trajectory LatticeMaxwell::evolve(const Eigen::VectorXd& a0, const Eigen::VectorXd& e0,
                                  const IntegratorConfig& cfg) const {
  cfg.validate();
  if (!is_transverse(a0)) throw UsageError("initial A is not transverse");
  if (!is_transverse(e0)) throw UsageError("initial E is not transverse");

  const auto m = static_cast<Eigen::Index>(components());
  Trajectory traj;
  traj.constraint_names = {"gauss", "div_A"};
  auto record = [&](double t, const Eigen::VectorXd& a, const Eigen::VectorXd& e) {
    std::vector<double> coords(static_cast<std::size_t>(2 * m));
    Eigen::Map<Eigen::VectorXd>(coords.data(), m) = a;
    Eigen::Map<Eigen::VectorXd>(coords.data() + m, m) = e;
    traj.times.push_back(t);
    traj.points.emplace_back(chart_, std::move(coords));
    traj.residuals.push_back({gauss_residual(e), divergence(a).cwiseAbs().maxCoeff()});
  };

  Eigen::VectorXd a = a0;
  Eigen::VectorXd e = e0;
  record(cfg.t0, a, e);
  const double h = cfg.dt;
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    const Eigen::VectorXd ka1 = e;
    const Eigen::VectorXd ke1 = -stiffness(a);
    const Eigen::VectorXd ka2 = e + 0.5 * h * ke1;
    const Eigen::VectorXd ke2 = -stiffness(a + 0.5 * h * ka1);
    const Eigen::VectorXd ka3 = e + 0.5 * h * ke2;
    const Eigen::VectorXd ke3 = -stiffness(a + 0.5 * h * ka2);
    const Eigen::VectorXd ka4 = e + h * ke3;
    const Eigen::VectorXd ke4 = -stiffness(a + h * ka3);
    a += (h / 6.0) * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
    e += (h / 6.0) * (ke1 + 2.0 * ke2 + 2.0 * ke3 + ke4);
    if (!a.allFinite() || !e.allFinite() || a.cwiseAbs().maxCoeff() > kBlowUpThreshold ||
        e.cwiseAbs().maxCoeff() > kBlowUpThreshold) {
      throw FlowInterrupted("lattice field blow-up at step " + std::to_string(step),
                            FlowInterrupted::Cause::blow_up, std::move(traj));
    }
    if (step % cfg.record_every == 0 || step == cfg.steps) {
      record(cfg.t0 + static_cast<double>(step) * h, a, e);
    }
  }
  return traj;
}

}  // namespace dirac
