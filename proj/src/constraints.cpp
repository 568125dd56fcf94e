#include "dirac/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dirac/errors.hpp"

namespace dirac {

ConstraintSet::ConstraintSet(ChartPtr chart, std::vector<ScalarField> phis)
    : chart_(std::move(chart)), phis_(std::move(phis)) {
  if (!chart_) throw UsageError("constraint set without a chart");
  if (phis_.size() > chart_->dim()) {
    throw UsageError("constraint set has " + std::to_string(phis_.size()) +
                     " entries, more than the phase-space dimension " +
                     std::to_string(chart_->dim()));
  }
  for (const auto& phi : phis_) require_same_chart(*chart_, phi.chart(), "constraint set");
}

std::vector<std::string> ConstraintSet::names() const {
  std::vector<std::string> out;
  out.reserve(phis_.size());
  for (const auto& phi : phis_) out.push_back(phi.name());
  return out;
}

std::vector<double> ConstraintSet::values(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(phis_.size());
  for (const auto& phi : phis_) out.push_back(phi.value(x));
  return out;
}

std::vector<double> ConstraintSet::values(const PhaseSpacePoint& x) const {
  require_same_chart(*chart_, x.chart(), "constraint values");
  return values(x.coords());
}

Eigen::MatrixXd ConstraintSet::gradients(std::span<const double> x) const {
  Eigen::MatrixXd g(static_cast<Eigen::Index>(phis_.size()), static_cast<Eigen::Index>(x.size()));
  std::vector<double> row(x.size());
  for (std::size_t i = 0; i < phis_.size(); ++i) {
    phis_[i].gradient(x, row);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!std::isfinite(row[k])) {
        throw NumericError("non-finite gradient of '" + phis_[i].name() + "' along '" +
                           chart_->label(k) + "'");
      }
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
    }
  }
  return g;
}

void ConstraintSet::require_on_surface(const PhaseSpacePoint& x, double tol) const {
  const auto vals = values(x);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!(std::abs(vals[i]) < tol)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "point is off the constraint surface: |" << phis_[i].name() << "| = "
          << std::abs(vals[i]) << " >= " << tol;
      throw UsageError(msg.str());
    }
  }
}

Eigen::VectorXd symplectic_gradient(std::span<const double> grad) {
  const std::size_t n = grad.size() / 2;
  Eigen::VectorXd out(static_cast<Eigen::Index>(grad.size()));
  for (std::size_t i = 0; i < n; ++i) {
    out(static_cast<Eigen::Index>(i)) = grad[n + i];
    out(static_cast<Eigen::Index>(n + i)) = -grad[i];
  }
  return out;
}

namespace {

Eigen::MatrixXd symplectic_columns(const Eigen::MatrixXd& rows) {
  // Column I = Omega * (row I)^T.
  const Eigen::Index n = rows.cols() / 2;
  Eigen::MatrixXd out(rows.cols(), rows.rows());
  out.topRows(n) = rows.rightCols(n).transpose();
  out.bottomRows(n) = -rows.leftCols(n).transpose();
  return out;
}

Eigen::MatrixXd antisymmetric_product(const Eigen::MatrixXd& grads,
                                      const Eigen::MatrixXd& omega_grads) {
  const Eigen::Index m = grads.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      out(i, j) = grads.row(i).dot(omega_grads.col(j));
      out(j, i) = -out(i, j);
    }
  }
  return out;
}

std::vector<double> gradient_of(const ScalarField& f, std::span<const double> x) {
  std::vector<double> g(x.size());
  f.gradient(x, g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!std::isfinite(g[k])) {
      throw NumericError("non-finite gradient of '" + f.name() + "' along '" +
                         f.chart().label(k) + "'");
    }
  }
  return g;
}

Eigen::MatrixXd gradient_rows(std::span<const ScalarField> fields, std::span<const double> x) {
  Eigen::MatrixXd g(static_cast<Eigen::Index>(fields.size()), static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto row = gradient_of(fields[i], x);
    g.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(
        row.data(), static_cast<Eigen::Index>(row.size()));
  }
  return g;
}

}  // namespace

Eigen::MatrixXd constraint_matrix(const ConstraintSet& cs, const PhaseSpacePoint& x) {
  require_same_chart(cs.chart(), x.chart(), "constraint_matrix");
  const Eigen::MatrixXd grads = cs.gradients(x.coords());
  return antisymmetric_product(grads, symplectic_columns(grads));
}

bool is_degenerate(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return false;
  if (m.rows() == 2 && m.cols() == 2 && m(0, 0) == 0.0 && m(1, 1) == 0.0 &&
      m(1, 0) == -m(0, 1)) {
    // Antisymmetric 2x2: both singular values equal |M_01|.
    const double b = std::abs(m(0, 1));
    return !(b > tol * std::max(1.0, b));
  }
  const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  return !(smin > tol * std::max(1.0, smax));
}

const char* to_string(ConstraintClass kind) {
  switch (kind) {
    case ConstraintClass::second_class: return "second_class";
    case ConstraintClass::first_class: return "first_class";
    case ConstraintClass::mixed_or_degenerate: return "mixed_or_degenerate";
  }
  return "unknown";
}

ClassificationResult classify(const ConstraintSet& cs, std::span<const PhaseSpacePoint> samples,
                              double tol) {
  if (cs.is_empty()) throw UsageError("classify: empty constraint set");
  if (samples.empty()) throw UsageError("classify: no sample points");
  if (!(tol > 0.0)) throw UsageError("classify: tolerance must be positive");

  ClassificationResult result;
  result.tolerance_used = tol;
  result.even_count = cs.size() % 2 == 0;
  bool all_second = true;
  bool all_first = true;
  double min_abs_det = std::numeric_limits<double>::infinity();

  for (const auto& x : samples) {
    cs.require_on_surface(x);
    const Eigen::MatrixXd grads = cs.gradients(x.coords());
    const Eigen::MatrixXd m = antisymmetric_product(grads, symplectic_columns(grads));
    const double det = m.rows() == 2 ? m(0, 1) * m(0, 1) : m.determinant();
    result.sample_points.push_back(x);
    result.sample_dets.push_back(det);
    if (std::abs(det) < min_abs_det) {
      min_abs_det = std::abs(det);
      result.det_M = det;
    }

    if (is_degenerate(m, tol)) all_second = false;

    double grad_scale = 1.0;
    for (Eigen::Index i = 0; i < grads.rows(); ++i) {
      grad_scale = std::max(grad_scale, grads.row(i).squaredNorm());
    }
    if (!(m.cwiseAbs().maxCoeff() <= tol * grad_scale)) all_first = false;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cutoff = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > cutoff ? 1 : 0;
    result.rank = std::max(result.rank, rank);
  }

  if (all_second && result.even_count) {
    result.kind = ConstraintClass::second_class;
  } else if (all_first) {
    result.kind = ConstraintClass::first_class;
  } else {
    result.kind = ConstraintClass::mixed_or_degenerate;
  }
  return result;
}

DiracStructure::DiracStructure(const ConstraintSet& cs, const PhaseSpacePoint& x)
    : chart_(cs.chart_ptr()), x_point_(x.coords().begin(), x.coords().end()) {
  require_same_chart(cs.chart(), x.chart(), "dirac bracket");
  grads_ = cs.gradients(x.coords());
  omega_grads_ = symplectic_columns(grads_);
  m_ = antisymmetric_product(grads_, omega_grads_);
  if (m_.rows() == 0) {
    det_ = 1.0;
    return;
  }
  if (m_.rows() == 2) {
    det_ = m_(0, 1) * m_(0, 1);
  } else {
    lu_.compute(m_);
    det_ = lu_.determinant();
  }
  if (is_degenerate(m_)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "constraint matrix is singular (det = " << det_
        << "): system not Second Class here";
    std::vector<double> point(x.coords().begin(), x.coords().end());
    throw DegeneracyError(msg.str(), det_, std::move(point));
  }
}

Eigen::VectorXd DiracStructure::solve(const Eigen::VectorXd& rhs) const {
  if (m_.rows() == 2) {
    const double b = m_(0, 1);
    Eigen::VectorXd out(2);
    out << -rhs(1) / b, rhs(0) / b;
    return out;
  }
  return lu_.solve(rhs);
}

Eigen::MatrixXd DiracStructure::solve(const Eigen::MatrixXd& rhs) const {
  if (m_.rows() == 2) {
    const double b = m_(0, 1);
    Eigen::MatrixXd out(2, rhs.cols());
    out.row(0) = -rhs.row(1) / b;
    out.row(1) = rhs.row(0) / b;
    return out;
  }
  return lu_.solve(rhs);
}

double DiracStructure::bracket(const ScalarField& a, const ScalarField& b) const {
  require_same_chart(*chart_, a.chart(), "dirac bracket");
  require_same_chart(*chart_, b.chart(), "dirac bracket");
  const std::span<const double> x(x_point_.data(), x_point_.size());
  const auto ga = gradient_of(a, x);
  const auto gb = gradient_of(b, x);
  const double pb = poisson_bracket(ga, gb);
  if (m_.rows() == 0) return pb;
  const Eigen::Map<const Eigen::VectorXd> va(ga.data(), static_cast<Eigen::Index>(ga.size()));
  const Eigen::VectorXd a_phi = omega_grads_.transpose() * va;     // {a, Phi_I}
  const Eigen::VectorXd phi_b = grads_ * symplectic_gradient(gb);  // {Phi_J, b}
  return pb - a_phi.dot(solve(phi_b));
}

Eigen::MatrixXd DiracStructure::bracket_matrix(std::span<const ScalarField> as,
                                               std::span<const ScalarField> bs) const {
  const std::span<const double> x(x_point_.data(), x_point_.size());
  const Eigen::MatrixXd ga = gradient_rows(as, x);
  const Eigen::MatrixXd gb = gradient_rows(bs, x);
  const Eigen::MatrixXd sb = symplectic_columns(gb);
  Eigen::MatrixXd out = ga * sb;
  if (m_.rows() == 0) return out;
  const Eigen::MatrixXd a_phi = ga * omega_grads_;
  const Eigen::MatrixXd phi_b = grads_ * sb;
  out -= a_phi * solve(phi_b);
  return out;
}

Eigen::VectorXd DiracStructure::flow(std::span<const double> grad_h,
                                     const Eigen::VectorXd* explicit_rate) const {
  Eigen::VectorXd zdot = symplectic_gradient(grad_h);
  if (m_.rows() == 0) return zdot;
  Eigen::VectorXd phi_h = grads_ * zdot;  // {Phi_J, H}
  if (explicit_rate != nullptr) phi_h += *explicit_rate;
  zdot -= omega_grads_ * solve(phi_h);
  return zdot;
}

double dirac_bracket(const ScalarField& a, const ScalarField& b, const ConstraintSet& cs,
                     const PhaseSpacePoint& x) {
  return DiracStructure(cs, x).bracket(a, b);
}

ObservableReport observable_check(const ScalarField& a, const ConstraintSet& cs,
                                  std::span<const PhaseSpacePoint> samples) {
  ObservableReport report;
  for (const auto& x : samples) {
    const DiracStructure db(cs, x);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const double v = std::abs(db.bracket(a, cs[i]));
      if (!(v <= report.max_abs)) {
        report.max_abs = v;
        report.worst_constraint = cs[i].name();
      }
    }
  }
  return report;
}

SurfaceParametrization::SurfaceParametrization(ChartPtr reduced, ChartPtr full, Embedding embed)
    : reduced_(std::move(reduced)), full_(std::move(full)), embed_(std::move(embed)) {
  if (!reduced_ || !full_ || !embed_) throw UsageError("incomplete surface parametrization");
  if (reduced_->dim() > full_->dim()) {
    throw UsageError("reduced chart is larger than the full chart");
  }
}

PhaseSpacePoint SurfaceParametrization::embed(const PhaseSpacePoint& reduced_point) const {
  require_same_chart(*reduced_, reduced_point.chart(), "embed");
  std::vector<Dual> y(reduced_point.coords().begin(), reduced_point.coords().end());
  const auto z = embed_(y);
  if (z.size() != full_->dim()) throw UsageError("embedding returned the wrong dimension");
  std::vector<double> coords(z.size());
  std::transform(z.begin(), z.end(), coords.begin(), [](const Dual& d) { return d.v; });
  return {full_, std::move(coords)};
}

namespace {

Eigen::MatrixXd embedding_jacobian(const SurfaceParametrization::Embedding& embed,
                                   std::span<const double> y, std::size_t full_dim) {
  std::vector<Dual> seeded(y.begin(), y.end());
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(full_dim), static_cast<Eigen::Index>(y.size()));
  for (std::size_t j = 0; j < seeded.size(); ++j) {
    seeded[j].d = 1.0;
    const auto z = embed(seeded);
    for (std::size_t i = 0; i < full_dim; ++i) {
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z[i].d;
    }
    seeded[j].d = 0.0;
  }
  return jac;
}

}  // namespace

Eigen::MatrixXd SurfaceParametrization::jacobian(const PhaseSpacePoint& reduced_point) const {
  require_same_chart(*reduced_, reduced_point.chart(), "embedding jacobian");
  return embedding_jacobian(embed_, reduced_point.coords(), full_->dim());
}

ScalarField SurfaceParametrization::pullback(const ScalarField& f) const {
  require_same_chart(*full_, f.chart(), "pullback");
  const auto embed = embed_;
  const std::size_t full_dim = full_->dim();
  auto full_coords = [embed](std::span<const double> y) {
    std::vector<Dual> yd(y.begin(), y.end());
    const auto z = embed(yd);
    std::vector<double> out(z.size());
    std::transform(z.begin(), z.end(), out.begin(), [](const Dual& d) { return d.v; });
    return out;
  };
  return ScalarField::with_gradient(
      reduced_, f.name() + "∘embed",
      [f, full_coords](std::span<const double> y) { return f.value(full_coords(y)); },
      [f, full_coords, embed, full_dim](std::span<const double> y, std::span<double> out) {
        const auto z = full_coords(y);
        std::vector<double> gf(z.size());
        f.gradient(z, gf);
        const Eigen::MatrixXd jac = embedding_jacobian(embed, y, full_dim);
        const Eigen::VectorXd g =
            jac.transpose() *
            Eigen::Map<const Eigen::VectorXd>(gf.data(), static_cast<Eigen::Index>(gf.size()));
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = g(static_cast<Eigen::Index>(j));
      });
}

MaskawaNakajimaReport maskawa_nakajima_check(const ScalarField& a, const ScalarField& b,
                                             const ConstraintSet& cs,
                                             const SurfaceParametrization& param,
                                             const PhaseSpacePoint& reduced_point) {
  require_same_chart(cs.chart(), *param.full_chart(), "maskawa_nakajima_check");
  const PhaseSpacePoint x = param.embed(reduced_point);
  cs.require_on_surface(x);
  MaskawaNakajimaReport report;
  report.dirac_value = dirac_bracket(a, b, cs, x);
  report.reduced_pb_value = poisson_bracket(param.pullback(a), param.pullback(b), reduced_point);
  report.abs_diff = std::abs(report.dirac_value - report.reduced_pb_value);
  return report;
}

double fp_determinant(std::span<const ScalarField> gauge_conditions,
                      std::span<const ScalarField> constraints, const PhaseSpacePoint& x) {
  if (gauge_conditions.size() != constraints.size()) {
    throw UsageError("fp_determinant: " + std::to_string(gauge_conditions.size()) +
                     " gauge conditions for " + std::to_string(constraints.size()) +
                     " constraints");
  }
  if (constraints.empty()) throw UsageError("fp_determinant: no constraints");
  const auto k = static_cast<Eigen::Index>(constraints.size());
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      m(i, j) = poisson_bracket(gauge_conditions[static_cast<std::size_t>(i)],
                                constraints[static_cast<std::size_t>(j)], x);
    }
  }
  return m.determinant();
}

JacobianReport fp_jacobian_check(const ScalarField& chi, const ScalarField& c,
                                 std::size_t pair_index, const PhaseSpacePoint& x) {
  require_same_chart(chi.chart(), x.chart(), "fp_jacobian_check");
  require_same_chart(c.chart(), x.chart(), "fp_jacobian_check");
  const std::size_t n = x.chart().pairs();
  if (pair_index >= n) throw UsageError("fp_jacobian_check: pair index out of range");
  const std::size_t qi = pair_index;
  const std::size_t pi = n + pair_index;
  const auto g_chi = gradient_of(chi, x.coords());
  const auto g_c = gradient_of(c, x.coords());
  JacobianReport report;
  report.jacobian_det = g_chi[qi] * g_c[pi] - g_chi[pi] * g_c[qi];
  report.bracket_value = poisson_bracket(chi, c, x);
  report.abs_diff = std::abs(report.jacobian_det - report.bracket_value);
  return report;
}

}  // namespace dirac
