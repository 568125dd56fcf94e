#include "dirac/polynomial.hpp"

#include "dirac/errors.hpp"

namespace dirac {

Polynomial1D Polynomial1D::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial1D({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = static_cast<double>(j) * coeffs_[j];
  return Polynomial1D(std::move(d));
}

MultiPolynomial::MultiPolynomial(std::size_t n_vars, std::vector<Monomial> terms)
    : n_vars_(n_vars), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.powers.size() != n_vars_) {
      throw UsageError("monomial has " + std::to_string(t.powers.size()) +
                       " exponents, polynomial has " + std::to_string(n_vars_) + " variables");
    }
  }
}

MultiPolynomial MultiPolynomial::operator*(const MultiPolynomial& other) const {
  if (other.n_vars_ != n_vars_) throw UsageError("polynomial product: variable count mismatch");
  std::vector<Monomial> out;
  out.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Monomial m{a.coeff * b.coeff, a.powers};
      for (std::size_t i = 0; i < n_vars_; ++i) m.powers[i] += b.powers[i];
      out.push_back(std::move(m));
    }
  }
  return {n_vars_, std::move(out)};
}

MultiPolynomial MultiPolynomial::operator+(const MultiPolynomial& other) const {
  if (other.n_vars_ != n_vars_) throw UsageError("polynomial sum: variable count mismatch");
  std::vector<Monomial> out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  return {n_vars_, std::move(out)};
}

ScalarField MultiPolynomial::field(ChartPtr chart, std::string name) const {
  if (chart->dim() != n_vars_) throw UsageError("polynomial field: chart dimension mismatch");
  MultiPolynomial self = *this;
  return ScalarField::expression(std::move(chart), std::move(name),
                                 [self](auto x) { return self(x); });
}

MultiPolynomial MultiPolynomial::random(std::size_t n_vars, std::size_t n_terms,
                                        unsigned max_power, Sampler& rng) {
  std::vector<Monomial> terms;
  terms.reserve(n_terms);
  for (std::size_t t = 0; t < n_terms; ++t) {
    Monomial m{rng.uniform(-1.0, 1.0), std::vector<unsigned>(n_vars)};
    for (auto& p : m.powers) p = static_cast<unsigned>(rng.below(max_power + 1));
    terms.push_back(std::move(m));
  }
  return {n_vars, std::move(terms)};
}

}  // namespace dirac
