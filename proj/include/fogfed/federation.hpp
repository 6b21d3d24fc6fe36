#ifndef FOGFED_FEDERATION_HPP_
#define FOGFED_FEDERATION_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fogfed/queuing.hpp"
#include "fogfed/topology.hpp"

namespace fogfed {

// ---------------------------------------------------------------------------
// Delay, cost and response-time model
// ---------------------------------------------------------------------------

// beta1 * (d(broker, user) + sum over leased brokers a of d(a, broker))
inline double network_delay(const Position& broker, const Position& user, std::span<const Position> leased,
                            double beta1)
{
  double path = distance(broker, user);
  for (const auto& a : leased) {
    path += distance(a, broker);
  }
  return beta1 * path;
}

inline double network_delay(const Broker& broker, const MobileDevice& user, const Topology& topo,
                            const CostParams& params)
{
  const auto& b = topo.broker(broker.id);
  const auto& u = topo.device(user.id);
  std::vector<Position> leased;
  leased.reserve(b.leased_brokers.size());
  for (const auto id : b.leased_brokers) {
    leased.push_back(topo.broker(id).position);
  }
  return network_delay(b.position, u.position, leased, params.beta1);
}

inline double total_location_cost(std::span<const double> local_prices, std::span<const double> leased_prices)
{
  double total = 0.0;
  for (const double p : local_prices) {
    total += p;
  }
  for (const double p : leased_prices) {
    total += p;
  }
  return total;
}

// 1 / sum(1/t): combined completion time of nodes working in parallel.
inline double harmonic_time(std::span<const double> node_times)
{
  if (node_times.empty()) {
    throw std::invalid_argument("harmonic_time: empty node list");
  }
  double inv = 0.0;
  for (const double t : node_times) {
    if (!(t > 0.0)) {
      throw std::invalid_argument("harmonic_time: node time must be positive, got " + std::to_string(t));
    }
    inv += 1.0 / t;
  }
  return 1.0 / inv;
}

// Access leg from device to its broker: beta2 * d(b,u) + hops * per-hop cost.
inline double access_time(double d_bu, const CostParams& params)
{
  return params.beta2 * d_bu + params.hop_count * params.cloud_comm_cost;
}

inline double local_response_time(std::span<const double> node_times, double d_bu, const CostParams& params)
{
  return harmonic_time(node_times) + access_time(d_bu, params);
}

// Zero when no lease is active.
inline double leased_response_time(std::span<const double> node_times, std::span<const double> delay_costs)
{
  if (node_times.empty()) {
    if (!delay_costs.empty()) {
      throw std::invalid_argument("leased_response_time: delay costs without leased nodes");
    }
    return 0.0;
  }
  double sum_cd = 0.0;
  for (const double c : delay_costs) {
    sum_cd += c;
  }
  return harmonic_time(node_times) + sum_cd;
}

struct ResponseEstimate
{
  double t_local = 0.0;
  double t_leased = 0.0;
  double t_total = 0.0;
};

inline ResponseEstimate response_time(double local, double leased)
{
  return {local, leased, local + leased};
}

// One minus the probability that every node in the set fails, accumulated node by node.
inline double availability(std::span<const double> failure_probs)
{
  double all_fail = 1.0;
  for (const double p : failure_probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::out_of_range("availability: failure probability out of [0,1]: " + std::to_string(p));
    }
    all_fail *= p;
  }
  if (failure_probs.empty()) {
    return 0.0;
  }
  return 1.0 - all_fail;
}

// ---------------------------------------------------------------------------
// Live state view and candidate construction
// ---------------------------------------------------------------------------

struct NodeLoad
{
  double lambda = 0.0;  // offered rate, tasks/s: recent arrivals plus work already waiting
  int in_system = 0;    // queued + in service
  double energy_j = 0.0;
};

// Read-only view of live load that candidate construction consults.
template <typename V>
concept LoadView = requires(const V& v, NodeId n, LocationId l) {
  { v.node_load(n) } -> std::convertible_to<NodeLoad>;
  { v.location_lambda(l) } -> std::convertible_to<double>;
};

// Plain map-backed view; unknown ids read as idle.
struct MapLoadView
{
  std::unordered_map<NodeId, NodeLoad> nodes;
  std::unordered_map<LocationId, double> locations;

  NodeLoad node_load(NodeId id) const
  {
    const auto it = nodes.find(id);
    return it == nodes.end() ? NodeLoad{} : it->second;
  }
  double location_lambda(LocationId id) const
  {
    const auto it = locations.find(id);
    return it == locations.end() ? 0.0 : it->second;
  }
};

// Predicted time for one more task at a node; empty when the node cannot sustain its offered load.
inline std::optional<double> predict_node_time(const FogNode& node, const NodeLoad& load)
{
  return try_avg_waiting_time(node.server_count, load.lambda, node.service_rate);
}

enum class AllocationKind { local, leased, cloud };

inline const char* to_string(AllocationKind k)
{
  switch (k) {
    case AllocationKind::local: return "local";
    case AllocationKind::leased: return "leased";
    case AllocationKind::cloud: return "cloud";
  }
  return "?";
}

struct Candidate
{
  NodeId node;
  LocationId location;
  AllocationKind kind = AllocationKind::local;
  ResponseEstimate response;
  double price = 0.0;
  double failure_prob = 0.0;
  double energy_j = 0.0;
  DelayCost lease_cost;  // delay cost of reaching a leased node; zero for local

  double t_r() const { return response.t_total; }
};

struct Constraints
{
  double max_price = std::numeric_limits<double>::infinity();
  double min_availability = 0.0;
  bool energy_aware = false;
  double epsilon_t = 0.05;  // s, near-tie window for energy-aware selection

  friend bool operator==(const Constraints&, const Constraints&) = default;
};

struct CloudOption
{
  NodeId sink;
  double predicted_t_r = 0.0;
  double price = 0.0;
};

struct AllocationDecision
{
  NodeId node_id;
  LocationId location;  // meaningless for cloud decisions
  AllocationKind kind = AllocationKind::local;
  double predicted_t_r = 0.0;
  double cost = 0.0;
  double availability = 1.0;
};

inline std::vector<const FogNode*> location_nodes(const FogLocation& loc, const Topology& topo)
{
  std::vector<const FogNode*> out;
  out.reserve(loc.node_ids.size());
  for (const auto id : loc.node_ids) {
    out.push_back(&topo.node(id));
  }
  return out;
}

template <LoadView View>
QueuingEstimate estimate_location(const FogLocation& loc, const Topology& topo, const View& view)
{
  const auto nodes = location_nodes(loc, topo);
  const auto pooled = pool_service(nodes);
  return estimate_queue(loc.queue_capacity, view.location_lambda(loc.id), pooled.kappa, pooled.rho);
}

// Stable nodes of the broker's own location, ranked later by the allocator.
template <LoadView View>
std::vector<Candidate> local_candidates(const Broker& broker, const Position& user, const Topology& topo,
                                        const CostParams& params, const View& view)
{
  std::vector<Candidate> out;
  const double d_bu = distance(broker.position, user);
  for (const auto* node : location_nodes(topo.location_of_broker(broker), topo)) {
    const auto load = view.node_load(node->id);
    const auto t_node = predict_node_time(*node, load);
    if (!t_node) {
      continue;
    }
    const double times[] = {*t_node};
    Candidate c;
    c.node = node->id;
    c.location = node->location_id;
    c.kind = AllocationKind::local;
    c.response = response_time(local_response_time(times, d_bu, params), 0.0);
    c.price = node->price;
    c.failure_prob = node->failure_prob;
    c.energy_j = load.energy_j;
    out.push_back(c);
  }
  return out;
}

// Nodes reachable through the broker's leases. A peer location only offers capacity while it
// admits all of its own offered load and its pooled queue is stable.
template <LoadView View>
std::vector<Candidate> lease_candidates(const Broker& broker, const Position& user, const Topology& topo,
                                        const CostParams& params, const View& view)
{
  const auto& home = topo.broker(broker.id);
  std::vector<NodeId> peers = home.leased_brokers;
  std::sort(peers.begin(), peers.end());

  std::vector<Candidate> out;
  const double d_bu = distance(home.position, user);
  for (const auto peer_id : peers) {
    const auto& peer = topo.broker(peer_id);
    const auto& loc = topo.location_of_broker(peer);
    const auto est = estimate_location(loc, topo, view);
    if (est.acceptance < 1.0 || !est.waiting_time) {
      continue;
    }
    const Position via[] = {peer.position};
    const double h = network_delay(home.position, user, via, params.beta1);
    const double c_q = queuing_cost(est.execution_rate, est.lambda, params.q_unit, params.cq_max);
    const auto cd = delay_cost(h, c_q);
    for (const auto* node : location_nodes(loc, topo)) {
      const auto load = view.node_load(node->id);
      const auto t_node = predict_node_time(*node, load);
      if (!t_node) {
        continue;
      }
      const double times[] = {*t_node};
      const double costs[] = {cd.total};
      Candidate c;
      c.node = node->id;
      c.location = node->location_id;
      c.kind = AllocationKind::leased;
      c.response = response_time(access_time(d_bu, params), leased_response_time(times, costs));
      c.price = node->price;
      c.failure_prob = node->failure_prob;
      c.energy_j = load.energy_j;
      c.lease_cost = cd;
      out.push_back(c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Allocation
// ---------------------------------------------------------------------------

inline double candidate_availability(const Candidate& c)
{
  const double probs[] = {c.failure_prob};
  return availability(probs);
}

inline bool is_feasible(const Candidate& c, const Constraints& cons)
{
  return std::isfinite(c.t_r()) && c.price <= cons.max_price && candidate_availability(c) >= cons.min_availability;
}

inline AllocationDecision decision_for(const Candidate& c)
{
  const double price[] = {c.price};
  const bool leased = c.kind == AllocationKind::leased;
  return {c.node,
          c.location,
          c.kind,
          c.t_r(),
          leased ? total_location_cost({}, price) : total_location_cost(price, {}),
          candidate_availability(c)};
}

inline AllocationDecision decision_for(const CloudOption& cloud)
{
  return {cloud.sink, LocationId{}, AllocationKind::cloud, cloud.predicted_t_r, cloud.price, 1.0};
}

namespace detail {

inline const Candidate* select_in_tier(std::span<const Candidate> tier, const Constraints& cons)
{
  const Candidate* best = nullptr;
  for (const auto& c : tier) {
    if (!is_feasible(c, cons)) {
      continue;
    }
    if (best == nullptr || c.t_r() < best->t_r() || (c.t_r() == best->t_r() && c.node < best->node)) {
      best = &c;
    }
  }
  if (best == nullptr || !cons.energy_aware) {
    return best;
  }
  const double window = best->t_r() + cons.epsilon_t;
  const Candidate* pick = best;
  for (const auto& c : tier) {
    if (!is_feasible(c, cons) || c.t_r() > window) {
      continue;
    }
    if (c.energy_j < pick->energy_j || (c.energy_j == pick->energy_j && c.node < pick->node)) {
      pick = &c;
    }
  }
  return pick;
}

}  // namespace detail

// Minimum predicted response time among candidates that pass the price and availability checks.
// Local candidates are searched first, then leased ones, then the cloud sink.
inline AllocationDecision fra_allocate(const Request& req, std::span<const Candidate> local,
                                       std::span<const Candidate> leasable, const Constraints& cons,
                                       const std::optional<CloudOption>& cloud)
{
  if (const auto* c = detail::select_in_tier(local, cons)) {
    return decision_for(*c);
  }
  if (const auto* c = detail::select_in_tier(leasable, cons)) {
    return decision_for(*c);
  }
  if (cloud) {
    return decision_for(*cloud);
  }
  throw NoFeasibleNodeError("no feasible node for request " + std::to_string(req.id));
}

// Baseline: uniformly random feasible candidate from the first non-empty tier.
template <typename Rng>
AllocationDecision random_allocate(const Request& req, std::span<const Candidate> local,
                                   std::span<const Candidate> leasable, const Constraints& cons,
                                   const std::optional<CloudOption>& cloud, Rng& rng)
{
  for (const auto tier : {local, leasable}) {
    std::vector<const Candidate*> feasible;
    for (const auto& c : tier) {
      if (is_feasible(c, cons)) {
        feasible.push_back(&c);
      }
    }
    if (!feasible.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, feasible.size() - 1);
      return decision_for(*feasible[pick(rng)]);
    }
  }
  if (cloud) {
    return decision_for(*cloud);
  }
  throw NoFeasibleNodeError("no feasible node for request " + std::to_string(req.id));
}

}  // namespace fogfed

#endif  // FOGFED_FEDERATION_HPP_
