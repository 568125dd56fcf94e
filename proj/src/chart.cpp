#include "dirac/chart.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "dirac/errors.hpp"

namespace dirac {

Chart::Chart(std::vector<std::string> labels, DomainPredicate domain,
             std::string domain_description)
    : labels_(std::move(labels)),
      domain_(std::move(domain)),
      domain_description_(std::move(domain_description)) {
  if (labels_.empty() || labels_.size() % 2 != 0) {
    throw UsageError("chart needs 2N >= 2 labels, got " + std::to_string(labels_.size()));
  }
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw UsageError("chart labels must be distinct");
}

std::size_t Chart::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw UsageError("unknown coordinate label '" + std::string(label) + "'");
}

bool Chart::admits(std::span<const double> coords) const {
  return !domain_ || domain_(coords);
}

ChartPtr make_chart(std::vector<std::string> labels, Chart::DomainPredicate domain,
                    std::string domain_description) {
  return std::make_shared<const Chart>(std::move(labels), std::move(domain),
                                       std::move(domain_description));
}

ChartPtr make_canonical_chart(std::size_t n_pairs) {
  if (n_pairs == 0) throw UsageError("chart needs at least one canonical pair");
  std::vector<std::string> labels;
  labels.reserve(2 * n_pairs);
  for (std::size_t i = 1; i <= n_pairs; ++i) labels.push_back("q" + std::to_string(i));
  for (std::size_t i = 1; i <= n_pairs; ++i) labels.push_back("p" + std::to_string(i));
  return make_chart(std::move(labels));
}

void require_same_chart(const Chart& a, const Chart& b, std::string_view context) {
  if (!a.compatible_with(b)) {
    throw UsageError(std::string(context) + ": chart mismatch");
  }
}

PhaseSpacePoint::PhaseSpacePoint(ChartPtr chart, std::vector<double> coords)
    : chart_(std::move(chart)), coords_(std::move(coords)) {
  if (!chart_) throw UsageError("phase-space point without a chart");
  if (coords_.size() != chart_->dim()) {
    throw UsageError("point has " + std::to_string(coords_.size()) +
                     " coordinates, chart expects " + std::to_string(chart_->dim()));
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) {
      throw DomainError("non-finite coordinate '" + chart_->label(i) + "'");
    }
  }
  if (!chart_->admits(coords_)) {
    std::ostringstream msg;
    msg << "point outside chart domain";
    if (!chart_->domain_description().empty()) msg << " (" << chart_->domain_description() << ")";
    throw DomainError(msg.str());
  }
}

PhaseSpacePoint PhaseSpacePoint::with(std::string_view label, double value) const {
  std::vector<double> next = coords_;
  next[chart_->index_of(label)] = value;
  return {chart_, std::move(next)};
}

}  // namespace dirac
