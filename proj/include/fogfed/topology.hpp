#ifndef FOGFED_TOPOLOGY_HPP_
#define FOGFED_TOPOLOGY_HPP_

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fogfed/domain.hpp"
#include "fogfed/errors.hpp"

namespace fogfed {

struct Topology
{
  Arena arena;
  std::vector<MobileDevice> devices;
  std::vector<FogNode> fog_nodes;
  std::vector<Broker> brokers;
  std::vector<FogLocation> locations;
  std::vector<AccessPoint> access_points;
  std::vector<CloudSink> cloud_sinks;
  std::vector<Link> links;

  const FogNode* find_node(NodeId id) const { return find_by_id(fog_nodes, id); }
  const Broker* find_broker(NodeId id) const { return find_by_id(brokers, id); }
  const MobileDevice* find_device(NodeId id) const { return find_by_id(devices, id); }
  const FogLocation* find_location(LocationId id) const { return find_by_id(locations, id); }

  const Broker& broker(NodeId id) const { return require(find_broker(id), "broker", id.value); }
  const FogNode& node(NodeId id) const { return require(find_node(id), "fog node", id.value); }
  const MobileDevice& device(NodeId id) const { return require(find_device(id), "device", id.value); }
  const FogLocation& location(LocationId id) const { return require(find_location(id), "location", id.value); }

  const FogLocation& location_of_broker(const Broker& b) const { return location(b.location_id); }

private:
  template <typename T, typename Id>
  static const T* find_by_id(const std::vector<T>& items, Id id)
  {
    const auto it = std::find_if(items.begin(), items.end(), [id](const T& t) { return t.id == id; });
    return it == items.end() ? nullptr : &*it;
  }

  template <typename T>
  static const T& require(const T* p, const char* what, std::uint32_t id)
  {
    if (p == nullptr) {
      throw UnknownIdError(std::string("unknown ") + what + " id " + std::to_string(id));
    }
    return *p;
  }
};

struct Violation
{
  std::string code;    // stable machine-readable tag, e.g. "missing broker"
  std::string detail;  // human-readable context
};

struct ValidationReport
{
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const
  {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
  }
  std::string to_string() const
  {
    std::ostringstream os;
    for (const auto& v : violations) {
      os << v.code << ": " << v.detail << '\n';
    }
    return os.str();
  }
};

// Structural bounds a topology is checked against.
struct ValidationLimits
{
  std::size_t min_nodes_per_location = 1;
  std::size_t max_nodes_per_location = std::numeric_limits<std::size_t>::max();
};

inline ValidationReport validate_topology(const Topology& t, const ValidationLimits& limits = {})
{
  ValidationReport report;
  auto add = [&](std::string code, std::string detail) {
    report.violations.push_back({std::move(code), std::move(detail)});
  };

  // Graph vertices share one id space.
  std::map<std::uint32_t, int> seen;
  auto count_ids = [&](const auto& items) {
    for (const auto& item : items) {
      ++seen[item.id.value];
    }
  };
  count_ids(t.devices);
  count_ids(t.fog_nodes);
  count_ids(t.brokers);
  count_ids(t.access_points);
  count_ids(t.cloud_sinks);
  for (const auto& [id, n] : seen) {
    if (n > 1) {
      add("duplicate id", "id " + std::to_string(id) + " used " + std::to_string(n) + " times");
    }
  }
  std::set<std::uint32_t> location_ids;
  for (const auto& loc : t.locations) {
    if (!location_ids.insert(loc.id.value).second) {
      add("duplicate id", "location id " + std::to_string(loc.id.value) + " repeated");
    }
  }

  if (!(t.arena.size > 0.0)) {
    add("invalid arena", "arena size must be positive");
  }
  auto check_pos = [&](const Position& p, const std::string& what) {
    if (!t.arena.contains(p)) {
      add("position out of arena", what);
    }
  };

  for (const auto& loc : t.locations) {
    const auto name = "location " + std::to_string(loc.id.value);
    const auto brokers_here = std::count_if(t.brokers.begin(), t.brokers.end(),
                                            [&](const Broker& b) { return b.location_id == loc.id; });
    if (brokers_here == 0) {
      add("missing broker", name);
    } else if (brokers_here > 1) {
      add("multiple brokers", name + " has " + std::to_string(brokers_here));
    } else {
      const auto* b = t.find_broker(loc.broker_id);
      if (b == nullptr || b->location_id != loc.id) {
        add("unknown reference", name + " names broker " + std::to_string(loc.broker_id.value));
      }
    }
    if (loc.node_ids.empty()) {
      add("empty location", name);
    }
    if (loc.node_ids.size() < limits.min_nodes_per_location || loc.node_ids.size() > limits.max_nodes_per_location) {
      add("node count out of bounds", name + " has " + std::to_string(loc.node_ids.size()) + " nodes");
    }
    for (const auto nid : loc.node_ids) {
      const auto* n = t.find_node(nid);
      if (n == nullptr) {
        add("unknown reference", name + " lists missing fog node " + std::to_string(nid.value));
      } else if (n->location_id != loc.id) {
        add("unknown reference", "fog node " + std::to_string(nid.value) + " listed by foreign " + name);
      }
    }
    if (!(loc.queue_capacity >= 0.0)) {
      add("invalid parameter", name + " queue capacity negative");
    }
  }

  for (const auto& n : t.fog_nodes) {
    const auto name = "fog node " + std::to_string(n.id.value);
    if (t.find_location(n.location_id) == nullptr) {
      add("unknown reference", name + " in missing location " + std::to_string(n.location_id.value));
    }
    if (!n.valid()) {
      add("invalid parameter", name);
    }
    check_pos(n.position, name);
  }

  for (const auto& b : t.brokers) {
    const auto name = "broker " + std::to_string(b.id.value);
    if (t.find_location(b.location_id) == nullptr) {
      add("unknown reference", name + " in missing location " + std::to_string(b.location_id.value));
    }
    for (const auto leased : b.leased_brokers) {
      if (leased == b.id) {
        add("self lease", name);
      } else if (t.find_broker(leased) == nullptr) {
        add("unknown reference", name + " leases from missing broker " + std::to_string(leased.value));
      }
    }
    check_pos(b.position, name);
  }

  for (const auto& ap : t.access_points) {
    if (t.find_broker(ap.broker_id) == nullptr) {
      add("unknown reference", "access point " + std::to_string(ap.id.value) + " backhauls to missing broker");
    }
    check_pos(ap.position, "access point " + std::to_string(ap.id.value));
  }

  for (const auto& d : t.devices) {
    const auto name = "device " + std::to_string(d.id.value);
    if (!(d.arrival_rate >= 0.0) || !(d.radio_range > 0.0) || !valid_model(d.mobility)) {
      add("invalid parameter", name);
    }
    check_pos(d.position, name);
  }

  for (const auto& c : t.cloud_sinks) {
    if (!(c.latency >= 0.0) || !(c.price >= 0.0)) {
      add("invalid parameter", "cloud sink " + std::to_string(c.id.value));
    }
  }

  // Broker-to-broker connectivity over links whose endpoints are both brokers.
  if (t.brokers.size() > 1) {
    std::map<std::uint32_t, std::vector<std::uint32_t>> adj;
    for (const auto& l : t.links) {
      if (t.find_broker(l.a) != nullptr && t.find_broker(l.b) != nullptr) {
        adj[l.a.value].push_back(l.b.value);
        adj[l.b.value].push_back(l.a.value);
      }
    }
    std::set<std::uint32_t> reached{t.brokers.front().id.value};
    std::queue<std::uint32_t> frontier;
    frontier.push(t.brokers.front().id.value);
    while (!frontier.empty()) {
      const auto cur = frontier.front();
      frontier.pop();
      for (const auto nxt : adj[cur]) {
        if (reached.insert(nxt).second) {
          frontier.push(nxt);
        }
      }
    }
    if (reached.size() != t.brokers.size()) {
      add("disconnected brokers", std::to_string(t.brokers.size() - reached.size()) + " broker(s) unreachable");
    }
  }

  return report;
}

// In-range access point closest to `where`; ties go to the lower id.
inline std::optional<NodeId> nearest_access_point(const Position& where, double radio_range,
                                                  std::span<const AccessPoint> aps)
{
  std::optional<NodeId> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& ap : aps) {
    const double d = distance(where, ap.position);
    if (d > radio_range) {
      continue;
    }
    if (d < best_d || (d == best_d && best && ap.id < *best)) {
      best = ap.id;
      best_d = d;
    }
  }
  return best;
}

inline std::optional<NodeId> nearest_access_point(const MobileDevice& d, std::span<const AccessPoint> aps)
{
  return nearest_access_point(d.position, d.radio_range, aps);
}

}  // namespace fogfed

#endif  // FOGFED_TOPOLOGY_HPP_
