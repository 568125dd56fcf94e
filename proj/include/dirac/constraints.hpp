#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dirac/chart.hpp"
#include "dirac/dual.hpp"
#include "dirac/scalar_field.hpp"

namespace dirac {

/// |Phi_I| below this counts as "on the constraint surface".
inline constexpr double kSurfaceTolerance = 1e-9;
/// Relative singular-value cutoff for a degenerate constraint matrix.
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Ordered constraints and auxiliary conditions Phi_1..Phi_M, lumped together.
class ConstraintSet {
 public:
  ConstraintSet(ChartPtr chart, std::vector<ScalarField> phis);

  /// M = 0: Dirac brackets reduce to Poisson brackets.
  static ConstraintSet empty(ChartPtr chart) { return {std::move(chart), {}}; }

  std::size_t size() const noexcept { return phis_.size(); }
  bool is_empty() const noexcept { return phis_.empty(); }
  const ScalarField& operator[](std::size_t i) const { return phis_[i]; }
  const std::vector<ScalarField>& fields() const noexcept { return phis_; }
  std::vector<std::string> names() const;

  const Chart& chart() const noexcept { return *chart_; }
  const ChartPtr& chart_ptr() const noexcept { return chart_; }

  std::vector<double> values(std::span<const double> x) const;
  std::vector<double> values(const PhaseSpacePoint& x) const;
  /// Rows are the constraint gradients (M x 2N).
  Eigen::MatrixXd gradients(std::span<const double> x) const;

  /// Throws UsageError naming the first constraint with |Phi_I| >= tol.
  void require_on_surface(const PhaseSpacePoint& x, double tol = kSurfaceTolerance) const;

 private:
  ChartPtr chart_;
  std::vector<ScalarField> phis_;
};

/// M_IJ = {Phi_I, Phi_J}; exactly antisymmetric.
Eigen::MatrixXd constraint_matrix(const ConstraintSet& cs, const PhaseSpacePoint& x);

/// Degeneracy test shared by classification and Dirac brackets:
/// sigma_min(M) <= tol * max(1, sigma_max(M)).
bool is_degenerate(const Eigen::MatrixXd& m, double tol = kDegeneracyTolerance);

enum class ConstraintClass { second_class, first_class, mixed_or_degenerate };

const char* to_string(ConstraintClass kind);

struct ClassificationResult {
  ConstraintClass kind = ConstraintClass::mixed_or_degenerate;
  double det_M = 0.0;  // determinant at the sample with the smallest |det|
  int rank = 0;        // largest numerical rank seen over the samples
  double tolerance_used = 0.0;
  bool even_count = true;  // an odd M can never be Second Class
  std::vector<PhaseSpacePoint> sample_points;
  std::vector<double> sample_dets;
};

/// Second Class when M is invertible at every sample, First Class when M
/// vanishes at every sample, otherwise mixed_or_degenerate. Samples must lie on
/// the surface.
ClassificationResult classify(const ConstraintSet& cs, std::span<const PhaseSpacePoint> samples,
                              double tol = kDegeneracyTolerance);

/// Constraint matrix factorized at one point; evaluates any number of Dirac
/// brackets there without refactorizing.
class DiracStructure {
 public:
  /// Throws DegeneracyError when M is singular at x.
  DiracStructure(const ConstraintSet& cs, const PhaseSpacePoint& x);

  /// {a,b}_DB = {a,b} - {a,Phi_I} (M^-1)^IJ {Phi_J,b}
  double bracket(const ScalarField& a, const ScalarField& b) const;

  /// Entry (i,j) = {as[i], bs[j]}_DB.
  Eigen::MatrixXd bracket_matrix(std::span<const ScalarField> as,
                                 std::span<const ScalarField> bs) const;

  /// Vector field zdot_a = {z_a, H}_DB, minus {z_a,Phi_I}(M^-1)^IJ dPhi_J/dt
  /// when the constraints carry explicit time dependence.
  Eigen::VectorXd flow(std::span<const double> grad_h,
                       const Eigen::VectorXd* explicit_rate = nullptr) const;

  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double det() const noexcept { return det_; }

 private:
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

  ChartPtr chart_;
  std::vector<double> x_point_;
  Eigen::MatrixXd grads_;       // M x 2N
  Eigen::MatrixXd omega_grads_; // 2N x M, column I = Omega grad Phi_I = {z, Phi_I}
  Eigen::MatrixXd m_;
  double det_ = 0.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Omega * grad: the vector {z_a, F} for every coordinate z_a.
Eigen::VectorXd symplectic_gradient(std::span<const double> grad);

double dirac_bracket(const ScalarField& a, const ScalarField& b, const ConstraintSet& cs,
                     const PhaseSpacePoint& x);

struct ObservableReport {
  double max_abs = 0.0;
  std::string worst_constraint;
};

/// max over samples and I of |{a, Phi_I}_DB|.
ObservableReport observable_check(const ScalarField& a, const ConstraintSet& cs,
                                  std::span<const PhaseSpacePoint> samples);

/// Map from a reduced chart onto the constraint surface of a full chart.
class SurfaceParametrization {
 public:
  using Embedding = std::function<std::vector<Dual>(std::span<const Dual>)>;

  SurfaceParametrization(ChartPtr reduced, ChartPtr full, Embedding embed);

  /// Embedding from a generic callable `f(std::span<const T>) -> std::vector<T>`.
  template <class F>
  static SurfaceParametrization from_expression(ChartPtr reduced, ChartPtr full, F f) {
    return {std::move(reduced), std::move(full),
            [f](std::span<const Dual> y) { return f(y); }};
  }

  PhaseSpacePoint embed(const PhaseSpacePoint& reduced_point) const;
  /// d(full coords)/d(reduced coords), 2N x 2R.
  Eigen::MatrixXd jacobian(const PhaseSpacePoint& reduced_point) const;
  /// f o embed on the reduced chart, gradient by the chain rule.
  ScalarField pullback(const ScalarField& f) const;

  const ChartPtr& reduced_chart() const noexcept { return reduced_; }
  const ChartPtr& full_chart() const noexcept { return full_; }

 private:
  ChartPtr reduced_;
  ChartPtr full_;
  Embedding embed_;
};

struct MaskawaNakajimaReport {
  double dirac_value = 0.0;
  double reduced_pb_value = 0.0;
  double abs_diff = 0.0;
};

/// Dirac bracket on the surface versus the Poisson bracket of the pullbacks in
/// the reduced chart.
MaskawaNakajimaReport maskawa_nakajima_check(const ScalarField& a, const ScalarField& b,
                                             const ConstraintSet& cs,
                                             const SurfaceParametrization& param,
                                             const PhaseSpacePoint& reduced_point);

/// det of the K x K matrix {chi_i, C_j}: the Faddeev-Popov weight.
double fp_determinant(std::span<const ScalarField> gauge_conditions,
                      std::span<const ScalarField> constraints, const PhaseSpacePoint& x);

struct JacobianReport {
  double jacobian_det = 0.0;
  double bracket_value = 0.0;
  double abs_diff = 0.0;
};

/// det d(chi, C)/d(q_j, p_j) for canonical pair j against the full bracket
/// {chi, C}; they agree when the other pairs do not contribute.
JacobianReport fp_jacobian_check(const ScalarField& chi, const ScalarField& c,
                                 std::size_t pair_index, const PhaseSpacePoint& x);

}  // namespace dirac
