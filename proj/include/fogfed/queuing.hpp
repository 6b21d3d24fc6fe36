#ifndef FOGFED_QUEUING_HPP_
#define FOGFED_QUEUING_HPP_

#include <numeric>
#include <optional>
#include <span>
#include <string>

#include "fogfed/domain.hpp"
#include "fogfed/errors.hpp"

// Closed-form predictors used by the allocator. Everything here is pure.
namespace fogfed {

inline constexpr double kQueuingCostEpsilon = 1e-9;
inline constexpr double kDefaultCqMax = 1e6;

inline double aggregate_arrival_rate(std::span<const double> rates)
{
  return std::accumulate(rates.begin(), rates.end(), 0.0);
}

inline double aggregate_arrival_rate(std::span<const MobileDevice> devices)
{
  double sum = 0.0;
  for (const auto& d : devices) {
    sum += d.arrival_rate;
  }
  return sum;
}

// Share of the offered load a location admits given its queuing capacity.
// With no offered load everything is admitted.
inline double acceptance_fraction(double capacity, double lambda)
{
  if (lambda <= 0.0 || capacity > lambda) {
    return 1.0;
  }
  return capacity / lambda;
}

inline double execution_rate(double lambda, double acceptance)
{
  return lambda * acceptance;
}

// kappa*lambda / (kappa*rho - lambda) + 1/rho, exactly as the predictor is defined.
// Note this is not the textbook M/M/c sojourn; it is only used to rank candidates.
inline double avg_waiting_time(int kappa, double lambda, double rho)
{
  const double capacity = kappa * rho;
  if (kappa < 1 || !(rho > 0.0) || !(capacity > lambda)) {
    throw UnstableQueueError("unstable: kappa*rho=" + std::to_string(capacity) + " <= lambda=" +
                             std::to_string(lambda));
  }
  return kappa * lambda / (capacity - lambda) + 1.0 / rho;
}

inline std::optional<double> try_avg_waiting_time(int kappa, double lambda, double rho)
{
  if (kappa < 1 || !(rho > 0.0) || !(kappa * rho > lambda)) {
    return std::nullopt;
  }
  return avg_waiting_time(kappa, lambda, rho);
}

// theta/(lambda - theta) * q, clamped to cq_max once lambda - theta <= epsilon.
inline double queuing_cost(double theta, double lambda, double q_unit, double cq_max = kDefaultCqMax)
{
  const double headroom = lambda - theta;
  if (headroom <= kQueuingCostEpsilon) {
    return cq_max;
  }
  return theta / headroom * q_unit;
}

struct DelayCost
{
  double network_delay = 0.0;  // h
  double queuing_cost = 0.0;   // c_q
  double total = 0.0;          // h + c_q
};

inline double service_delay_cost(double h, double c_q)
{
  return h + c_q;
}

inline DelayCost delay_cost(double h, double c_q)
{
  return {h, c_q, service_delay_cost(h, c_q)};
}

struct QueuingEstimate
{
  double lambda = 0.0;
  double acceptance = 1.0;
  double execution_rate = 0.0;
  std::optional<double> waiting_time;  // empty when kappa*rho <= lambda
  int kappa = 1;
  double rho = 1.0;
};

// Pooled service parameters of a location: summed servers, mean per-server rate.
struct PooledService
{
  int kappa = 0;
  double rho = 0.0;
};

inline PooledService pool_service(std::span<const FogNode* const> nodes)
{
  PooledService p;
  if (nodes.empty()) {
    return p;
  }
  double rate_sum = 0.0;
  for (const auto* n : nodes) {
    p.kappa += n->server_count;
    rate_sum += n->service_rate;
  }
  p.rho = rate_sum / static_cast<double>(nodes.size());
  return p;
}

inline QueuingEstimate estimate_queue(double capacity, double lambda, int kappa, double rho)
{
  QueuingEstimate e;
  e.lambda = lambda;
  e.acceptance = acceptance_fraction(capacity, lambda);
  e.execution_rate = execution_rate(lambda, e.acceptance);
  e.waiting_time = try_avg_waiting_time(kappa, lambda, rho);
  e.kappa = kappa;
  e.rho = rho;
  return e;
}

}  // namespace fogfed

#endif  // FOGFED_QUEUING_HPP_
