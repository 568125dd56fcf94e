#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dirac/dual.hpp"
#include "dirac/sampling.hpp"
#include "dirac/scalar_field.hpp"

namespace dirac {

/// Univariate polynomial sum_j c_j r^j; used for radial potentials U(r).
class Polynomial1D {
 public:
  Polynomial1D() = default;
  explicit Polynomial1D(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  template <class T>
  T operator()(const T& r) const {
    T acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + T(*it);
    return acc;
  }

  Polynomial1D derivative() const;
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

struct Monomial {
  double coeff = 0.0;
  std::vector<unsigned> powers;  // one exponent per variable
};

/// Sparse multivariate polynomial in the chart coordinates.
class MultiPolynomial {
 public:
  MultiPolynomial(std::size_t n_vars, std::vector<Monomial> terms);

  template <class T>
  T operator()(std::span<const T> x) const {
    T sum(0.0);
    for (const auto& term : terms_) {
      T prod(term.coeff);
      for (std::size_t i = 0; i < n_vars_; ++i) {
        if (term.powers[i] != 0) prod *= ipow(x[i], term.powers[i]);
      }
      sum += prod;
    }
    return sum;
  }

  MultiPolynomial operator*(const MultiPolynomial& other) const;
  MultiPolynomial operator+(const MultiPolynomial& other) const;

  std::size_t variables() const noexcept { return n_vars_; }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }

  /// Exact-gradient field on a chart with n_vars coordinates.
  ScalarField field(ChartPtr chart, std::string name) const;

  /// Random polynomial: n_terms monomials, coefficients in [-1, 1], each
  /// exponent in [0, max_power].
  static MultiPolynomial random(std::size_t n_vars, std::size_t n_terms, unsigned max_power,
                                Sampler& rng);

 private:
  std::size_t n_vars_;
  std::vector<Monomial> terms_;
};

}  // namespace dirac
