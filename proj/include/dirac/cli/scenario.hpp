#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dirac/constraints.hpp"
#include "dirac/dynamics.hpp"
#include "dirac/errors.hpp"
#include "dirac/models/klauder.hpp"
#include "dirac/models/maxwell.hpp"
#include "dirac/models/particle.hpp"
#include "dirac/polynomial.hpp"
#include "dirac/quantum_circle.hpp"

namespace dirac::cli {

/// Malformed or schema-violating scenario file.
class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

enum class ModelKind { klauder, particle, maxwell, custom };
enum class FlowKind { poisson, dirac, gauge };

struct KlauderParams {
  double alpha = 1.0;
  double k0 = 1.0;
  double k1 = 0.0;
  double hbar = 1.0;
  std::vector<double> potential;  // U(r) coefficients, constant term first
};

struct ParticleParams {
  double mass = 1.0;
  std::size_t dim = 3;
};

struct MaxwellParams {
  std::size_t side = 2;
  double spacing = 1.0;
};

struct CustomParams {
  std::size_t n_pairs = 1;
  std::optional<MultiPolynomial> hamiltonian;
  std::vector<MultiPolynomial> constraints;
};

struct FlowConfig {
  FlowKind kind = FlowKind::dirac;
  std::vector<double> x0;       // full-chart start point
  std::vector<double> reduced;  // Klauder (phi, p_phi) start point on the surface
  std::vector<double> x;        // particle position
  std::vector<double> p;        // particle physical momentum
  double tau0 = 0.0;
  double multiplier = 1.0;
  int mode = 1;  // Maxwell eigenmode
  double amplitude = 1.0;
};

struct QuantumConfig {
  CircleState state{0, {1.0}};
  std::vector<double> times;
  std::size_t panels = 4096;
  std::size_t intervals = 4096;
};

struct OutputConfig {
  std::string path;
  std::string format = "csv";
};

struct Scenario {
  ModelKind model = ModelKind::klauder;
  std::uint64_t seed = 1;
  std::size_t samples = 10;
  KlauderParams klauder;
  ParticleParams particle;
  MaxwellParams maxwell;
  CustomParams custom;
  std::optional<FlowConfig> flow;
  IntegratorConfig integrator;
  std::optional<QuantumConfig> quantum;
  OutputConfig output;

  KlauderModel klauder_model() const;
  RelativisticParticle particle_model() const;
  LatticeMaxwell maxwell_model() const;
  ChartPtr custom_chart() const;
};

/// Validates the whole document; throws ConfigError on any violation.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

const char* to_string(ModelKind kind);

}  // namespace dirac::cli
