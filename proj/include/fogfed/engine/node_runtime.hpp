#ifndef FOGFED_ENGINE_NODE_RUNTIME_HPP_
#define FOGFED_ENGINE_NODE_RUNTIME_HPP_

#include <cstdint>
#include <deque>
#include <optional>
#include <random>

#include "fogfed/domain.hpp"

namespace fogfed {

// Joules drawn over `interval` seconds given the server-seconds spent busy in it.
// Busy time is normalized per server, so a node with every server busy is fully busy.
inline double account_energy(const FogNode& node, double interval, double busy_server_seconds)
{
  const double busy = busy_server_seconds / node.server_count;
  const double idle = interval - busy;
  return node.power_idle * idle + node.power_busy * busy;
}

struct QueuedRequest
{
  std::uint64_t request = 0;
  double size = 1.0;
};

// Mutable per-node state owned by the event loop.
struct NodeRuntime
{
  int busy_servers = 0;
  std::deque<QueuedRequest> queue;
  double busy_time_accum = 0.0;  // server-seconds since start
  double energy_accum = 0.0;     // J since start
  double last_update = 0.0;

  // Per metrics interval.
  double interval_busy = 0.0;
  std::uint64_t interval_completed = 0;
  double interval_latency_sum = 0.0;

  int in_system() const { return busy_servers + static_cast<int>(queue.size()); }

  // Integrates busy time and energy up to `now`.
  void advance_to(double now, const FogNode& node)
  {
    const double dt = now - last_update;
    if (dt <= 0.0) {
      return;
    }
    const double busy_ss = busy_servers * dt;
    busy_time_accum += busy_ss;
    interval_busy += busy_ss;
    energy_accum += account_energy(node, dt, busy_ss);
    last_update = now;
  }
};

enum class Admission { started, queued, rejected };

struct ServiceOutcome
{
  Admission admission = Admission::queued;
  double completes_at = 0.0;  // valid when started
};

// Exponential service time with mean size / service_rate.
template <typename Rng>
double draw_service_time(const FogNode& node, double size, Rng& rng)
{
  std::exponential_distribution<double> service(node.service_rate / size);
  return service(rng);
}

// Starts the request on a free server, or queues it FIFO. A nonzero `queue_limit` bounds the
// number of waiting requests; arrivals beyond it are rejected. Call advance_to(now) first.
template <typename Rng>
ServiceOutcome service_request(NodeRuntime& rt, const FogNode& node, QueuedRequest req, double now, Rng& rng,
                               std::size_t queue_limit = 0)
{
  if (rt.busy_servers < node.server_count) {
    ++rt.busy_servers;
    return {Admission::started, now + draw_service_time(node, req.size, rng)};
  }
  if (queue_limit != 0 && rt.queue.size() >= queue_limit) {
    return {Admission::rejected, 0.0};
  }
  rt.queue.push_back(req);
  return {Admission::queued, 0.0};
}

struct StartedService
{
  std::uint64_t request = 0;
  double completes_at = 0.0;
};

// Frees one server and starts the head of the queue on it, if any. Call advance_to(now) first.
template <typename Rng>
std::optional<StartedService> release_server(NodeRuntime& rt, const FogNode& node, double now, Rng& rng)
{
  --rt.busy_servers;
  if (rt.queue.empty()) {
    return std::nullopt;
  }
  const auto next = rt.queue.front();
  rt.queue.pop_front();
  ++rt.busy_servers;
  return StartedService{next.request, now + draw_service_time(node, next.size, rng)};
}

}  // namespace fogfed

#endif  // FOGFED_ENGINE_NODE_RUNTIME_HPP_
