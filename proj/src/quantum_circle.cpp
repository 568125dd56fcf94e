#include "dirac/quantum_circle.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

#include "dirac/errors.hpp"

namespace dirac {

namespace {

// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_window(const CircleState& s, const SpectrumTable& table) {
  if (table.m_max() < s.m_max()) {
    throw UsageError("spectrum table window (" + std::to_string(table.m_max()) +
                     ") is smaller than the state window (" + std::to_string(s.m_max()) + ")");
  }
}

void require_regular(const CircleState& s, const SpectrumTable& table, const char* what) {
  for (int m = -s.m_max(); m <= s.m_max(); ++m) {
    if (table.degenerate(m) && s.coeff(m) != Complex(0.0)) {
      throw DomainError(std::string(what) + ": mode m = " + std::to_string(m) +
                        " has r* = 0 (k = 0) but nonzero weight");
    }
  }
}

}  // namespace

CircleState::CircleState(int m_max, std::vector<Complex> coeffs, double hbar)
    : m_max_(m_max), coeffs_(std::move(coeffs)), hbar_(hbar) {
  if (m_max_ < 0) throw UsageError("m_max must be non-negative");
  if (coeffs_.size() != static_cast<std::size_t>(2 * m_max_ + 1)) {
    throw UsageError("state needs 2 m_max + 1 = " + std::to_string(2 * m_max_ + 1) +
                     " coefficients, got " + std::to_string(coeffs_.size()));
  }
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) throw UsageError("hbar must be positive");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!std::isfinite(coeffs_[i].real()) || !std::isfinite(coeffs_[i].imag())) {
      throw UsageError("coefficient for m = " + std::to_string(static_cast<int>(i) - m_max_) +
                       " is not finite");
    }
  }
}

CircleState CircleState::single_mode(int m_max, int m, double hbar) {
  if (m < -m_max || m > m_max) throw UsageError("mode outside the window");
  std::vector<Complex> c(static_cast<std::size_t>(2 * m_max + 1));
  c[static_cast<std::size_t>(m + m_max)] = 1.0;
  return {m_max, std::move(c), hbar};
}

Complex CircleState::coeff(int m) const {
  if (m < -m_max_ || m > m_max_) return 0.0;
  return coeffs_[static_cast<std::size_t>(m + m_max_)];
}

double CircleState::norm2() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return s;
}

std::string CircleState::to_json() const {
  nlohmann::json j;
  j["hbar"] = hbar_;
  j["m_max"] = m_max_;
  auto& arr = j["coeffs"] = nlohmann::json::array();
  for (const auto& c : coeffs_) arr.push_back({c.real(), c.imag()});
  return j.dump();
}

CircleState CircleState::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("state JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("state JSON must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "hbar" && key != "m_max" && key != "coeffs") {
      throw UsageError("state JSON: unknown key '" + key + "'");
    }
  }
  if (!j.contains("m_max") || !j["m_max"].is_number_integer()) {
    throw UsageError("state JSON: 'm_max' must be an integer");
  }
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw UsageError("state JSON: 'coeffs' must be an array");
  }
  const double hbar = j.value("hbar", 1.0);
  std::vector<Complex> coeffs;
  for (const auto& c : j["coeffs"]) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw UsageError("state JSON: each coefficient must be [re, im]");
    }
    coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return {j["m_max"].get<int>(), std::move(coeffs), hbar};
}

CircleState normalize(const CircleState& s) {
  const double n2 = s.norm2();
  if (!(n2 > 0.0)) throw UsageError("cannot normalize the zero state");
  const double inv = 1.0 / std::sqrt(n2);
  std::vector<Complex> c = s.coeffs();
  for (auto& v : c) v *= inv;
  return {s.m_max(), std::move(c), s.hbar()};
}

double mode_radius(double k, int m, double hbar, double alpha) {
  const double pm = m * hbar;
  return std::pow((k * k + pm * pm) / (alpha * alpha), 0.25);
}

SpectrumTable::SpectrumTable(const KlauderModel& model, int m_max, double t)
    : m_max_(m_max), k_(model.k(t)), hbar_(model.hbar()) {
  if (m_max_ < 0) throw UsageError("m_max must be non-negative");
  for (int m = -m_max_; m <= m_max_; ++m) {
    const double r = mode_radius(k_, m, hbar_, model.alpha());
    r_star_.push_back(r);
    energy_.push_back(model.potential()(r));
  }
}

std::size_t SpectrumTable::index(int m) const {
  if (m < -m_max_ || m > m_max_) {
    throw UsageError("mode " + std::to_string(m) + " outside the spectrum window");
  }
  return static_cast<std::size_t>(m + m_max_);
}

CircleState evolve_static(const CircleState& s, const SpectrumTable& table, double t) {
  require_window(s, table);
  std::vector<Complex> c = s.coeffs();
  for (int m = -s.m_max(); m <= s.m_max(); ++m) {
    c[static_cast<std::size_t>(m + s.m_max())] *= std::polar(1.0, -table.energy(m) * t / s.hbar());
  }
  return {s.m_max(), std::move(c), s.hbar()};
}

double phase_integral(const KlauderModel& model, int m, double t0, double t1,
                      std::size_t intervals) {
  if (intervals == 0) throw UsageError("quadrature needs at least one interval");
  const std::size_t n = intervals + (intervals % 2);
  const double h = (t1 - t0) / static_cast<double>(n);
  auto u_at = [&](std::size_t i) {
    const double t = t0 + static_cast<double>(i) * h;
    const double k = model.k(t);
    if (!std::isfinite(k)) {
      throw NumericError("k(t) is not finite at t = " + std::to_string(t));
    }
    const double u = model.potential()(mode_radius(k, m, model.hbar(), model.alpha()));
    if (!std::isfinite(u)) {
      throw NumericError("U(r*) is not finite at t = " + std::to_string(t));
    }
    return u;
  };
  Accumulator acc;
  acc.add(u_at(0));
  acc.add(u_at(n));
  for (std::size_t i = 1; i < n; ++i) acc.add((i % 2 == 1 ? 4.0 : 2.0) * u_at(i));
  return acc.value() * h / 3.0;
}

CircleState evolve_time_dependent(const CircleState& s, const KlauderModel& model, double t0,
                                  double t1, std::size_t intervals) {
  std::vector<Complex> c = s.coeffs();
  for (int m = -s.m_max(); m <= s.m_max(); ++m) {
    auto& cm = c[static_cast<std::size_t>(m + s.m_max())];
    if (cm == Complex(0.0)) continue;
    const double phase = phase_integral(model, m, t0, t1, intervals);
    cm *= std::polar(1.0, -phase / s.hbar());
  }
  return {s.m_max(), std::move(c), s.hbar()};
}

ReducedExpectations expect_reduced(const CircleState& s, const SpectrumTable& table) {
  require_window(s, table);
  require_regular(s, table, "expect_reduced");
  ReducedExpectations out;
  for (int m = -s.m_max(); m <= s.m_max(); ++m) {
    const double w = std::norm(s.coeff(m));
    if (w == 0.0) continue;
    const double r = table.r_star(m);
    out.r += w * r;
    out.pr += w * table.k() / r;
    out.pphi += w * m * s.hbar();
  }
  return out;
}

PhiExpectation expect_phi(const CircleState& s, const SpectrumTable& table, double t) {
  require_window(s, table);
  std::vector<int> active;
  for (int m = -s.m_max(); m <= s.m_max(); ++m) {
    if (s.coeff(m) != Complex(0.0)) active.push_back(m);
  }
  Complex sum = 0.0;
  for (int m : active) {
    for (int n : active) {
      if (n == m) continue;
      const Complex phase = std::polar(1.0, (table.energy(m) - table.energy(n)) * t / s.hbar());
      sum += std::conj(s.coeff(m)) * s.coeff(n) * phase / static_cast<double>(n - m);
    }
  }
  const Complex total = std::numbers::pi * s.norm2() - Complex(0.0, 1.0) * sum;
  return {total.real(), total.imag()};
}

double expect_phi_quadrature(const CircleState& s, const SpectrumTable& table, double t,
                             std::size_t panels) {
  require_window(s, table);
  if (panels == 0) throw UsageError("quadrature needs at least one panel");
  const std::size_t n = panels + (panels % 2);
  std::vector<int> modes;
  std::vector<Complex> ct;
  for (int m = -s.m_max(); m <= s.m_max(); ++m) {
    if (s.coeff(m) == Complex(0.0)) continue;
    modes.push_back(m);
    ct.push_back(s.coeff(m) * std::polar(1.0, -table.energy(m) * t / s.hbar()));
  }
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  Accumulator acc;
  for (std::size_t i = 0; i <= n; ++i) {
    const double phi = static_cast<double>(i) * h;
    Complex psi = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) psi += ct[j] * std::polar(1.0, modes[j] * phi);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc.add(w * phi * std::norm(psi));
  }
  return acc.value() * h / 3.0 / (2.0 * std::numbers::pi);
}

CartesianExpectations expect_cartesian(const CircleState& s, const SpectrumTable& table,
                                       double t) {
  require_window(s, table);
  require_regular(s, table, "expect_cartesian");
  CartesianExpectations out{0.0, 0.0};
  const double hbar = s.hbar();
  for (int n = -s.m_max(); n < s.m_max(); ++n) {
    const Complex cn = s.coeff(n);
    const Complex cm = s.coeff(n + 1);
    if (cn == Complex(0.0) || cm == Complex(0.0)) continue;
    const Complex w = std::conj(cm) * cn *
                      std::polar(1.0, (table.energy(n + 1) - table.energy(n)) * t / hbar);
    const double r = table.r_star(n);
    out.xy += r * w;
    out.pxy += Complex(table.k(), (n + 1) * hbar) / r * w;
  }
  return out;
}

}  // namespace dirac
