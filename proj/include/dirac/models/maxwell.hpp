#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "dirac/chart.hpp"
#include "dirac/constraints.hpp"
#include "dirac/dynamics.hpp"

namespace dirac {

/// Abelian gauge field on a periodic L^3 lattice. Phase space (A, E) with
/// 3L^3 components each, A_i(s) stored at i * L^3 + s, s = x + L (y + L z).
/// D is the forward-difference gradient; the divergence is -D^T.
class LatticeMaxwell {
 public:
  explicit LatticeMaxwell(std::size_t side, double spacing = 1.0);

  std::size_t side() const noexcept { return side_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t sites() const noexcept { return n_; }
  /// 3 L^3
  std::size_t components() const noexcept { return 3 * n_; }
  const ChartPtr& chart() const noexcept { return chart_; }
  /// The k = 0 mode of the Gauss law and of the gauge condition is removed.
  bool mean_zero_sector() const noexcept { return true; }

  std::size_t site(std::size_t x, std::size_t y, std::size_t z) const;

  /// 3L^3 x L^3
  Eigen::MatrixXd gradient_operator() const;
  /// 1 - D (D^T D)^+ D^T
  Eigen::MatrixXd transverse_projector() const;

  /// Gauss law div E(s) and transversality div A(s) for s = 0..L^3-2.
  ConstraintSet constraints() const;

  struct DiracBlocks {
    Eigen::MatrixXd ae;
    Eigen::MatrixXd aa;
    Eigen::MatrixXd ee;
  };
  /// {A_i(x), E_j(y)}_DB and the A-A, E-E blocks, from the generic engine.
  DiracBlocks dirac_matrix() const;

  Eigen::VectorXd divergence(const Eigen::VectorXd& v) const;
  /// Per-component D^T D (minus the lattice Laplacian).
  Eigen::VectorXd stiffness(const Eigen::VectorXd& a) const;

  /// (E.E + sum_i |D A_i|^2) / 2
  double energy(const Eigen::VectorXd& a, const Eigen::VectorXd& e) const;
  double gauss_residual(const Eigen::VectorXd& e) const;
  bool is_transverse(const Eigen::VectorXd& v, double tol = 1e-10) const;

  /// A_1 = cos(2 pi n y / L), the other components zero.
  Eigen::VectorXd eigenmode(int n) const;
  /// omega^2 of eigenmode(n): 4 sin^2(pi n / L) / a^2.
  double eigenmode_omega2(int n) const;

  /// RK4 for Adot = E, Edot = -D^T D A. Residuals: max |div E| and max |div A|
  /// over all sites. Non-transverse input is a UsageError.
  Trajectory evolve(const Eigen::VectorXd& a0, const Eigen::VectorXd& e0,
                    const IntegratorConfig& cfg) const;

 private:
  std::size_t side_;
  double spacing_;
  std::size_t n_;
  ChartPtr chart_;
};

}  // namespace dirac
