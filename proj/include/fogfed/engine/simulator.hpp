#ifndef FOGFED_ENGINE_SIMULATOR_HPP_
#define FOGFED_ENGINE_SIMULATOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "fogfed/engine/event_queue.hpp"
#include "fogfed/engine/load_estimator.hpp"
#include "fogfed/engine/metrics.hpp"
#include "fogfed/engine/node_runtime.hpp"
#include "fogfed/engine/workload.hpp"
#include "fogfed/federation.hpp"
#include "fogfed/handover.hpp"
#include "fogfed/rng.hpp"
#include "fogfed/topology.hpp"

namespace fogfed {

enum class AllocationPolicy { fra, random };

struct SimParams
{
  double duration = 500.0;        // s
  double metrics_interval = 5.0;  // s
  double mobility_dt = 1.0;       // s
  CostParams costs;
  Constraints constraints;
  double packet_error_rate = 1e-3;
  std::size_t queue_limit = 0;    // waiting slots per node; 0 = unbounded
  double estimator_window = 2.0;  // s
  double estimator_alpha = 0.5;
  bool leasing_enabled = true;
  AllocationPolicy policy = AllocationPolicy::fra;
  std::vector<SizeClass> size_classes{{0.5, 0.75}, {2.5, 0.25}};
  double latency_budget = 1.0;    // s, per-device threshold behind `supported_users`
  ValidationLimits limits;
};

struct Scenario
{
  Topology topology;
  SimParams params;
};

namespace detail {

class Simulator
{
public:
  Simulator(const Scenario& sc, std::uint64_t seed)
    : topo_(sc.topology),
      p_(sc.params),
      streams_(seed),
      loss_rng_(streams_.stream("loss")),
      alloc_rng_(streams_.stream("allocation")),
      node_load_(topo_.fog_nodes.size(), sc.params.estimator_window, sc.params.estimator_alpha),
      location_load_(topo_.locations.size(), sc.params.estimator_window, sc.params.estimator_alpha)
  {
    for (std::uint32_t i = 0; i < topo_.fog_nodes.size(); ++i) {
      node_index_[topo_.fog_nodes[i].id] = i;
      service_rng_.push_back(streams_.stream("service", i));
    }
    runtimes_.resize(topo_.fog_nodes.size());
    for (std::uint32_t i = 0; i < topo_.locations.size(); ++i) {
      location_index_[topo_.locations[i].id] = i;
    }
    for (const auto& ap : topo_.access_points) {
      ap_broker_[ap.id] = &topo_.broker(ap.broker_id);
    }
    if (!topo_.cloud_sinks.empty()) {
      cloud_ = &*std::min_element(topo_.cloud_sinks.begin(), topo_.cloud_sinks.end(),
                                  [](const CloudSink& a, const CloudSink& b) { return a.id < b.id; });
    }
    std::vector<double> weights;
    for (const auto& c : p_.size_classes) {
      weights.push_back(c.weight);
    }
    size_dist_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());

    devices_.reserve(topo_.devices.size());
    for (std::uint32_t k = 0; k < topo_.devices.size(); ++k) {
      const auto& d = topo_.devices[k];
      DeviceState s{initial_state(d.mobility, d.position), std::nullopt, streams_.stream("arrivals", k),
                    streams_.stream("size", k), streams_.stream("mobility", k), 0.0, 0};
      devices_.push_back(std::move(s));
    }
  }

  MetricsReport run()
  {
    report_.summary.seed = streams_.seed();
    report_.summary.devices = topo_.devices.size();
    report_.summary.duration = p_.duration;

    bool any_mobile = false;
    for (std::uint32_t k = 0; k < devices_.size(); ++k) {
      auto& dev = devices_[k];
      reassociate(k);
      any_mobile = any_mobile || is_mobile(topo_.devices[k].mobility);
      const double first = next_interarrival(topo_.devices[k].arrival_rate, dev.arrivals);
      if (first <= p_.duration) {
        queue_.push(first, EventKind::request_arrival, k);
      }
    }
    if (any_mobile && p_.mobility_dt <= p_.duration) {
      queue_.push(p_.mobility_dt, EventKind::mobility_tick);
    }
    queue_.push(std::min(p_.metrics_interval, p_.duration), EventKind::metrics_tick);
    if (p_.estimator_window <= p_.duration) {
      queue_.push(p_.estimator_window, EventKind::lease_refresh);
    }

    while (!queue_.empty() && queue_.top().time <= p_.duration) {
      const Event e = queue_.pop();
      switch (e.kind) {
        case EventKind::request_arrival: on_request(e); break;
        case EventKind::service_start: on_service_start(e); break;
        case EventKind::service_complete: on_service_complete(e); break;
        case EventKind::mobility_tick: on_mobility(e); break;
        case EventKind::metrics_tick: on_metrics(e); break;
        case EventKind::lease_refresh: on_lease_refresh(e); break;
      }
    }
    finish();
    return std::move(report_);
  }

private:
  enum class ReqState : std::uint8_t { dropped, rejected, in_transit, queued, serving, completed };

  struct RequestRecord
  {
    double created_at = 0.0;
    double size = 1.0;
    std::uint32_t device = 0;
    ReqState state = ReqState::in_transit;
    AllocationKind kind = AllocationKind::local;
    NodeId node;
  };

  struct DeviceState
  {
    MobilityState mob;
    std::optional<NodeId> ap;
    Rng arrivals;
    Rng sizes;
    Rng mobility;
    double latency_sum = 0.0;
    std::uint64_t completed = 0;
  };

  struct View
  {
    const Simulator* sim;

    NodeLoad node_load(NodeId id) const
    {
      // Waiting work counts as load that must clear within one estimator window.
      const auto i = sim->node_index_.at(id);
      const auto& rt = sim->runtimes_[i];
      const double backlog = static_cast<double>(rt.queue.size()) / sim->p_.estimator_window;
      return {sim->node_load_.rate(i) + backlog, rt.in_system(), rt.energy_accum};
    }
    double location_lambda(LocationId id) const { return sim->location_load_.rate(sim->location_index_.at(id)); }
  };

  static bool is_mobile(const MobilityModel& m)
  {
    if (const auto* lin = std::get_if<LinearMotion>(&m)) {
      return lin->velocity.speed() > 0.0;
    }
    if (const auto* circ = std::get_if<CircularMotion>(&m)) {
      return circ->angular_velocity != 0.0;
    }
    return std::get<RandomWaypoint>(m).max_speed > 0.0;
  }

  void reassociate(std::uint32_t k)
  {
    auto& dev = devices_[k];
    const auto ev = handover(dev.mob.position, topo_.devices[k].radio_range, dev.ap, topo_.access_points);
    if (ev.kind == HandoverEvent::Kind::none) {
      return;
    }
    if (ev.kind == HandoverEvent::Kind::switched && ev.from) {
      ++report_.summary.handovers;
    }
    dev.ap = ev.to;
  }

  void on_request(const Event& e)
  {
    const double now = e.time;
    const std::uint32_t k = e.subject;
    auto& dev = devices_[k];
    const double next = now + next_interarrival(topo_.devices[k].arrival_rate, dev.arrivals);
    if (next <= p_.duration) {
      queue_.push(next, EventKind::request_arrival, k);
    }

    const std::uint64_t rid = requests_.size();
    RequestRecord rec;
    rec.created_at = now;
    rec.device = k;
    rec.size = p_.size_classes[size_dist_(dev.sizes)].size;
    requests_.push_back(rec);
    ++report_.summary.generated;
    auto& r = requests_.back();

    if (apply_packet_loss(loss_rng_, p_.packet_error_rate) == Delivery::dropped) {
      r.state = ReqState::dropped;
      ++report_.summary.dropped_loss;
      return;
    }
    if (!dev.ap) {
      r.state = ReqState::dropped;
      ++report_.summary.dropped_uncovered;
      return;
    }

    const Broker& home = *ap_broker_.at(*dev.ap);
    const Position user = dev.mob.position;
    const View view{this};
    const auto local = local_candidates(home, user, topo_, p_.costs, view);
    const auto leased = p_.leasing_enabled ? lease_candidates(home, user, topo_, p_.costs, view)
                                           : std::vector<Candidate>{};
    const double access = access_time(distance(home.position, user), p_.costs);
    std::optional<CloudOption> cloud;
    if (cloud_ != nullptr) {
      cloud = CloudOption{cloud_->id, access + cloud_->latency, cloud_->price};
    }

    const Request req{rid, topo_.devices[k].id, r.size, now};
    AllocationDecision decision;
    try {
      decision = p_.policy == AllocationPolicy::random
                     ? random_allocate(req, local, leased, p_.constraints, cloud, alloc_rng_)
                     : fra_allocate(req, local, leased, p_.constraints, cloud);
    } catch (const NoFeasibleNodeError&) {
      r.state = ReqState::rejected;
      ++report_.summary.rejected;
      return;
    }

    r.kind = decision.kind;
    r.node = decision.node_id;
    switch (decision.kind) {
      case AllocationKind::cloud:
        ++report_.summary.cloud;
        queue_.push(now + access + cloud_->latency, EventKind::service_complete, kCloudSubject, rid);
        return;
      case AllocationKind::local:
        ++report_.summary.local;
        break;
      case AllocationKind::leased:
        ++report_.summary.leased;
        break;
    }
    double transit = access;
    if (decision.kind == AllocationKind::leased) {
      const auto it = std::find_if(leased.begin(), leased.end(),
                                   [&](const Candidate& c) { return c.node == decision.node_id; });
      transit += it->lease_cost.network_delay;
    }
    const auto ni = node_index_.at(decision.node_id);
    node_load_.record(ni);
    location_load_.record(location_index_.at(decision.location));
    queue_.push(now + transit, EventKind::service_start, ni, rid);
  }

  void on_service_start(const Event& e)
  {
    const auto ni = e.subject;
    const auto& node = topo_.fog_nodes[ni];
    auto& rt = runtimes_[ni];
    auto& r = requests_[e.request];
    rt.advance_to(e.time, node);
    const auto out = service_request(rt, node, {e.request, r.size}, e.time, service_rng_[ni], p_.queue_limit);
    switch (out.admission) {
      case Admission::started:
        r.state = ReqState::serving;
        queue_.push(out.completes_at, EventKind::service_complete, ni, e.request);
        break;
      case Admission::queued:
        r.state = ReqState::queued;
        break;
      case Admission::rejected:
        r.state = ReqState::rejected;
        ++report_.summary.rejected;
        break;
    }
  }

  void on_service_complete(const Event& e)
  {
    auto& r = requests_[e.request];
    if (e.subject != kCloudSubject) {
      const auto ni = e.subject;
      const auto& node = topo_.fog_nodes[ni];
      auto& rt = runtimes_[ni];
      rt.advance_to(e.time, node);
      if (const auto next = release_server(rt, node, e.time, service_rng_[ni])) {
        requests_[next->request].state = ReqState::serving;
        queue_.push(next->completes_at, EventKind::service_complete, ni, next->request);
      }
      ++rt.interval_completed;
      rt.interval_latency_sum += e.time - r.created_at;
    }
    r.state = ReqState::completed;
    ++report_.summary.completed;
    const double latency = e.time - r.created_at;
    auto& dev = devices_[r.device];
    dev.latency_sum += latency;
    ++dev.completed;
    report_.latencies.push_back({e.request, r.created_at, e.time, latency, r.node, r.kind});
  }

  void on_mobility(const Event& e)
  {
    for (std::uint32_t k = 0; k < devices_.size(); ++k) {
      auto& dev = devices_[k];
      dev.mob = advance(dev.mob, topo_.devices[k].mobility, p_.mobility_dt, topo_.arena, dev.mobility);
      reassociate(k);
    }
    const double next = e.time + p_.mobility_dt;
    if (next <= p_.duration) {
      queue_.push(next, EventKind::mobility_tick);
    }
  }

  void on_metrics(const Event& e)
  {
    const double interval = e.time - last_metrics_;
    for (std::uint32_t i = 0; i < runtimes_.size(); ++i) {
      const auto& node = topo_.fog_nodes[i];
      auto& rt = runtimes_[i];
      rt.advance_to(e.time, node);
      MetricsRecord m;
      m.t = e.time;
      m.node_id = node.id;
      m.utilization = interval > 0.0 ? std::clamp(rt.interval_busy / (node.server_count * interval), 0.0, 1.0) : 0.0;
      m.queue_len = rt.queue.size();
      m.completed = rt.interval_completed;
      m.mean_latency = rt.interval_completed > 0 ? rt.interval_latency_sum / rt.interval_completed : 0.0;
      m.energy = rt.energy_accum;
      report_.intervals.push_back(m);
      rt.interval_busy = 0.0;
      rt.interval_completed = 0;
      rt.interval_latency_sum = 0.0;
    }
    last_metrics_ = e.time;
    if (e.time < p_.duration) {
      queue_.push(std::min(e.time + p_.metrics_interval, p_.duration), EventKind::metrics_tick);
    }
  }

  void on_lease_refresh(const Event& e)
  {
    node_load_.advance_to(e.time);
    location_load_.advance_to(e.time);
    const double next = e.time + p_.estimator_window;
    if (next <= p_.duration) {
      queue_.push(next, EventKind::lease_refresh);
    }
  }

  void finish()
  {
    auto& s = report_.summary;
    double busy = 0.0;
    double capacity = 0.0;
    for (std::uint32_t i = 0; i < runtimes_.size(); ++i) {
      const auto& node = topo_.fog_nodes[i];
      runtimes_[i].advance_to(p_.duration, node);
      busy += runtimes_[i].busy_time_accum;
      capacity += node.server_count * p_.duration;
      report_.node_energy.push_back(runtimes_[i].energy_accum);
      s.total_energy += runtimes_[i].energy_accum;
    }
    s.mean_utilization = capacity > 0.0 ? busy / capacity : 0.0;
    s.dropped = s.dropped_loss + s.dropped_uncovered;

    std::uint64_t in_flight = 0;
    for (const auto& r : requests_) {
      if (r.state == ReqState::in_transit || r.state == ReqState::queued || r.state == ReqState::serving) {
        ++in_flight;
      }
    }
    s.in_flight = in_flight;
    if (!s.conserved()) {
      throw EngineError("request conservation violated");
    }

    std::vector<double> lat;
    lat.reserve(report_.latencies.size());
    double sum = 0.0;
    for (const auto& l : report_.latencies) {
      lat.push_back(l.latency);
      sum += l.latency;
    }
    s.mean_latency = lat.empty() ? 0.0 : sum / static_cast<double>(lat.size());
    s.p95_latency = percentile(std::move(lat), 0.95);
    for (const auto& d : devices_) {
      if (d.completed > 0 && d.latency_sum / static_cast<double>(d.completed) <= p_.latency_budget) {
        ++s.supported_users;
      }
    }
  }

  static constexpr std::uint32_t kCloudSubject = 0xffffffffu;

  const Topology& topo_;
  const SimParams& p_;
  RngStreams streams_;
  Rng loss_rng_;
  Rng alloc_rng_;
  EventQueue queue_;
  LoadEstimator node_load_;
  LoadEstimator location_load_;
  std::unordered_map<NodeId, std::uint32_t> node_index_;
  std::unordered_map<LocationId, std::uint32_t> location_index_;
  std::unordered_map<NodeId, const Broker*> ap_broker_;
  const CloudSink* cloud_ = nullptr;
  std::discrete_distribution<std::size_t> size_dist_;
  std::vector<NodeRuntime> runtimes_;
  std::vector<Rng> service_rng_;
  std::vector<DeviceState> devices_;
  std::vector<RequestRecord> requests_;
  double last_metrics_ = 0.0;
  MetricsReport report_;
};

}  // namespace detail

inline void validate_params(const SimParams& p)
{
  std::vector<std::string> errs;
  if (!(p.duration > 0.0)) errs.push_back("duration must be positive");
  if (!(p.metrics_interval > 0.0)) errs.push_back("metrics interval must be positive");
  if (!(p.mobility_dt > 0.0)) errs.push_back("mobility dt must be positive");
  if (!p.costs.valid()) errs.push_back("cost parameters must be nonnegative with cq_max > 0");
  if (!(p.packet_error_rate >= 0.0 && p.packet_error_rate <= 1.0)) errs.push_back("packet error rate must be in [0,1]");
  if (!(p.estimator_window > 0.0)) errs.push_back("estimator window must be positive");
  if (!(p.estimator_alpha > 0.0 && p.estimator_alpha <= 1.0)) errs.push_back("estimator alpha must be in (0,1]");
  if (!(p.constraints.min_availability >= 0.0 && p.constraints.min_availability <= 1.0))
    errs.push_back("min availability must be in [0,1]");
  if (!(p.constraints.epsilon_t >= 0.0)) errs.push_back("epsilon_t must be nonnegative");
  if (p.size_classes.empty()) errs.push_back("at least one task size class is required");
  for (const auto& c : p.size_classes) {
    if (!(c.size > 0.0) || !(c.weight > 0.0)) errs.push_back("task size classes need positive size and weight");
  }
  if (!errs.empty()) {
    std::string msg;
    for (const auto& e : errs) {
      msg += e + "\n";
    }
    throw ValidationError(msg);
  }
}

// Simulates the scenario up to its horizon. Identical (scenario, seed) pairs yield identical reports.
inline MetricsReport run(const Scenario& scenario, std::uint64_t seed)
{
  validate_params(scenario.params);
  const auto report = validate_topology(scenario.topology, scenario.params.limits);
  if (!report.ok()) {
    throw ValidationError(report.to_string());
  }
  return detail::Simulator(scenario, seed).run();
}

}  // namespace fogfed

#endif  // FOGFED_ENGINE_SIMULATOR_HPP_
