#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dirac::cli {

struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0.0;  // measured discrepancy
  double tolerance = 0.0;
  bool at_least = false;  // value must reach the tolerance instead of staying below it
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  /// Added to every closed-form oracle value; a nonzero value must make the run fail.
  double oracle_perturbation = 0.0;
};

/// Suite names: core, constraints, klauder, dynamics, particle, maxwell, quantum, all.
std::vector<std::string> verify_suites();

/// Throws UsageError for an unknown suite.
std::vector<CheckResult> run_verify(std::string_view suite, const VerifyOptions& opts);

}  // namespace dirac::cli
