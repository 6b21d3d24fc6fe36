#ifndef FOGFED_ENGINE_METRICS_HPP_
#define FOGFED_ENGINE_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "fogfed/federation.hpp"
#include "fogfed/ids.hpp"

namespace fogfed {

// One node over one metrics interval ending at `t`.
struct MetricsRecord
{
  double t = 0.0;
  NodeId node_id;
  double utilization = 0.0;  // busy server-seconds / (servers * interval)
  std::uint64_t queue_len = 0;
  std::uint64_t completed = 0;
  double mean_latency = 0.0;  // over completions in the interval; 0 when none
  double energy = 0.0;        // cumulative J since start
};

struct LatencySample
{
  std::uint64_t request_id = 0;
  double created_at = 0.0;
  double completed_at = 0.0;
  double latency = 0.0;
  NodeId node_id;
  AllocationKind kind = AllocationKind::local;
};

struct RunSummary
{
  std::uint64_t seed = 0;
  std::uint64_t devices = 0;
  double duration = 0.0;
  std::uint64_t generated = 0;
  std::uint64_t completed = 0;
  std::uint64_t dropped = 0;            // dropped_loss + dropped_uncovered
  std::uint64_t dropped_loss = 0;
  std::uint64_t dropped_uncovered = 0;  // no access point in range
  std::uint64_t rejected = 0;           // queue overflow or no feasible node
  std::uint64_t in_flight = 0;
  std::uint64_t local = 0;
  std::uint64_t leased = 0;
  std::uint64_t cloud = 0;
  std::uint64_t handovers = 0;
  double mean_latency = 0.0;
  double p95_latency = 0.0;
  double mean_utilization = 0.0;
  double total_energy = 0.0;
  std::uint64_t supported_users = 0;  // devices whose mean latency met the budget

  bool conserved() const { return generated == completed + dropped + rejected + in_flight; }
};

struct MetricsReport
{
  std::vector<MetricsRecord> intervals;
  std::vector<LatencySample> latencies;
  std::vector<double> node_energy;  // final cumulative J, in topology fog-node order
  RunSummary summary;
};

// Nearest-rank percentile; 0 for an empty sample.
inline double percentile(std::vector<double> values, double q)
{
  if (values.empty()) {
    return 0.0;
  }
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

// p95 over completed requests, counting each rejected or dropped request as unbounded latency.
inline double effective_p95(const MetricsReport& r)
{
  std::vector<double> values;
  values.reserve(r.latencies.size() + r.summary.rejected + r.summary.dropped);
  for (const auto& s : r.latencies) {
    values.push_back(s.latency);
  }
  values.insert(values.end(), r.summary.rejected + r.summary.dropped, std::numeric_limits<double>::infinity());
  return percentile(std::move(values), 0.95);
}

inline double coefficient_of_variation(const std::vector<double>& xs)
{
  if (xs.empty()) {
    return 0.0;
  }
  double mean = 0.0;
  for (const double x : xs) {
    mean += x;
  }
  mean /= static_cast<double>(xs.size());
  if (mean == 0.0) {
    return 0.0;
  }
  double var = 0.0;
  for (const double x : xs) {
    var += (x - mean) * (x - mean);
  }
  var /= static_cast<double>(xs.size());
  return std::sqrt(var) / mean;
}

}  // namespace fogfed

#endif  // FOGFED_ENGINE_METRICS_HPP_
