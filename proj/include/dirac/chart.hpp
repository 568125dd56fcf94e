#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dirac {

/// Labeled canonical chart of a 2N-dimensional phase space. Labels are ordered
/// (q_1..q_N, p_1..p_N); the optional domain predicate is checked whenever a
/// PhaseSpacePoint is built on this chart.
class Chart {
 public:
  using DomainPredicate = std::function<bool(std::span<const double>)>;

  explicit Chart(std::vector<std::string> labels, DomainPredicate domain = {},
                 std::string domain_description = {});

  std::size_t pairs() const noexcept { return labels_.size() / 2; }
  std::size_t dim() const noexcept { return labels_.size(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  /// Index of a label; throws UsageError for unknown labels.
  std::size_t index_of(std::string_view label) const;

  bool admits(std::span<const double> coords) const;
  const std::string& domain_description() const noexcept { return domain_description_; }

  /// Same labels in the same order; charts built separately with identical
  /// labels are interchangeable.
  bool compatible_with(const Chart& other) const noexcept {
    return this == &other || labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  DomainPredicate domain_;
  std::string domain_description_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> labels, Chart::DomainPredicate domain = {},
                    std::string domain_description = {});

/// Chart with labels q1..qN, p1..pN and no exclusions.
ChartPtr make_canonical_chart(std::size_t n_pairs);

/// Throws UsageError unless the two charts are compatible.
void require_same_chart(const Chart& a, const Chart& b, std::string_view context);

class PhaseSpacePoint {
 public:
  /// Validates length, finiteness and the chart's domain exclusions.
  PhaseSpacePoint(ChartPtr chart, std::vector<double> coords);

  const Chart& chart() const noexcept { return *chart_; }
  const ChartPtr& chart_ptr() const noexcept { return chart_; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double at(std::string_view label) const { return coords_[chart_->index_of(label)]; }

  double q(std::size_t i) const { return coords_.at(i); }
  double p(std::size_t i) const { return coords_.at(chart_->pairs() + i); }

  /// Copy of this point with one coordinate replaced (re-validated).
  PhaseSpacePoint with(std::string_view label, double value) const;

 private:
  ChartPtr chart_;
  std::vector<double> coords_;
};

}  // namespace dirac
