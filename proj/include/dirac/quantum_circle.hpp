#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dirac/models/klauder.hpp"

namespace dirac {

using Complex = std::complex<double>;

/// Truncated angular-momentum expansion psi(phi) = sum_m c_m e^{i m phi},
/// m = -M..M. Coefficients are stored in that order.
class CircleState {
 public:
  CircleState(int m_max, std::vector<Complex> coeffs, double hbar = 1.0);

  static CircleState single_mode(int m_max, int m, double hbar = 1.0);

  int m_max() const noexcept { return m_max_; }
  double hbar() const noexcept { return hbar_; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  /// c_m, zero outside the window.
  Complex coeff(int m) const;
  /// sum |c_m|^2
  double norm2() const;

  /// {"hbar": h, "m_max": M, "coeffs": [[re, im], ...]}
  std::string to_json() const;
  static CircleState from_json(std::string_view text);

 private:
  int m_max_;
  std::vector<Complex> coeffs_;
  double hbar_;
};

/// Throws UsageError for the all-zero state.
CircleState normalize(const CircleState& s);

/// r*_m = ((k^2 + (m hbar)^2)/alpha^2)^(1/4) and U_m = U(r*_m) for m = -M..M.
class SpectrumTable {
 public:
  SpectrumTable(const KlauderModel& model, int m_max, double t = 0.0);

  int m_max() const noexcept { return m_max_; }
  double k() const noexcept { return k_; }
  double hbar() const noexcept { return hbar_; }
  double r_star(int m) const { return r_star_.at(index(m)); }
  double energy(int m) const { return energy_.at(index(m)); }
  /// r*_m = 0, i.e. k = 0 and m = 0.
  bool degenerate(int m) const { return r_star(m) == 0.0; }

 private:
  std::size_t index(int m) const;

  int m_max_;
  double k_;
  double hbar_;
  std::vector<double> r_star_;
  std::vector<double> energy_;
};

/// r*(k, m hbar) without the origin check; 0 at k = m = 0.
double mode_radius(double k, int m, double hbar, double alpha);

/// c_m -> c_m exp(-i U_m t / hbar)
CircleState evolve_static(const CircleState& s, const SpectrumTable& table, double t);

/// int_{t0}^{t1} U(r*_m(k(t'))) dt' by composite Simpson over `intervals`
/// panels (rounded up to even).
double phase_integral(const KlauderModel& model, int m, double t0, double t1,
                      std::size_t intervals);

/// Every instantaneous Hamiltonian is a function of p_phi alone, so they
/// commute and the time-ordered exponential reduces to the phase integral.
CircleState evolve_time_dependent(const CircleState& s, const KlauderModel& model, double t0,
                                  double t1, std::size_t intervals);

struct ReducedExpectations {
  double r = 0.0;
  double pr = 0.0;
  double pphi = 0.0;
};

ReducedExpectations expect_reduced(const CircleState& s, const SpectrumTable& table);

struct PhiExpectation {
  double value = 0.0;
  double imag_residue = 0.0;
};

/// <phi> on [0, 2 pi): pi - i sum_{n != m} c*_m c_n e^{(i/hbar)(U_m - U_n) t} / (n - m).
PhiExpectation expect_phi(const CircleState& s, const SpectrumTable& table, double t);

/// (1/2pi) int_0^{2pi} phi |psi(phi, t)|^2 dphi, composite Simpson on `panels` panels.
double expect_phi_quadrature(const CircleState& s, const SpectrumTable& table, double t,
                             std::size_t panels = 4096);

struct CartesianExpectations {
  Complex xy;
  Complex pxy;
};

/// <x + iy> = sum_n r*_n c*_{n+1} c_n e^{(i/hbar)(U_{n+1} - U_n) t},
/// <p_x + i p_y> = sum_n (k + i (n+1) hbar) / r*_n c*_{n+1} c_n e^{...}.
CartesianExpectations expect_cartesian(const CircleState& s, const SpectrumTable& table,
                                       double t);

}  // namespace dirac
