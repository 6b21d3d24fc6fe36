#ifndef FOGFED_SCENARIO_CONFIG_HPP_
#define FOGFED_SCENARIO_CONFIG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fogfed/engine/simulator.hpp"
#include "fogfed/errors.hpp"
#include "fogfed/rng.hpp"
#include "fogfed/scenario/text.hpp"

namespace fogfed {

// Scenario configuration. The text form is a sectioned `key = value` grammar:
//
//   # comment
//   [topology]
//   locations = 5
//   nodes_per_location = 2-5
//
// Every key has a default; unknown sections or keys are rejected.

enum class MobilityKind { random_waypoint, linear, circular, stationary, mixed };

// Either a uniform range per location or an explicit count for each location.
struct NodeCountSpec
{
  int min = 2;
  int max = 5;
  std::vector<int> per_location;

  friend bool operator==(const NodeCountSpec&, const NodeCountSpec&) = default;
};

struct TopologyConfig
{
  int locations = 5;
  NodeCountSpec nodes_per_location;
  int servers_per_node = 2;
  double service_rate = 5.0;  // tasks/s per server
  double price = 1.0;
  double failure_prob = 0.01;
  double power_idle = 60.0;   // W
  double power_busy = 120.0;  // W
  std::optional<double> queue_capacity;  // tasks/s; empty = pooled servers * rate
  int access_points = 20;
  int cloud_sinks = 2;
  double cloud_latency = 3.0;  // s
  double cloud_price = 0.0;
  double arena_size = 1000.0;   // m
  double link_bandwidth = 10e9; // bit/s
  double radio_range = 250.0;   // m
  std::uint64_t layout_seed = 1;

  friend bool operator==(const TopologyConfig&, const TopologyConfig&) = default;
};

struct WorkloadConfig
{
  int devices = 200;
  double mean_interarrival = 1.0;  // s, per device
  std::vector<SizeClass> size_classes{{0.5, 0.75}, {2.5, 0.25}};
  int max_devices = 1000;          // upper bound for supported-user searches

  friend bool operator==(const WorkloadConfig&, const WorkloadConfig&) = default;
};

struct ModelConfig
{
  CostParams costs;
  Constraints constraints{std::numeric_limits<double>::infinity(), 0.9, false, 0.05};
  bool leasing = true;
  AllocationPolicy allocation = AllocationPolicy::fra;
  double packet_error_rate = 1e-3;
  int queue_limit = 0;
  double estimator_window = 2.0;
  double estimator_alpha = 0.5;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct MobilityConfig
{
  MobilityKind model = MobilityKind::random_waypoint;
  double min_speed = 1.0;  // m/s, random waypoint
  double max_speed = 5.0;
  double pause = 10.0;     // s
  double linear_speed = 2.0;      // m/s, random heading per device
  double circular_radius = 50.0;  // m
  double angular_velocity = 0.05; // rad/s

  friend bool operator==(const MobilityConfig&, const MobilityConfig&) = default;
};

struct RunConfig
{
  double duration = 500.0;
  std::uint64_t seed = 1;
  double metrics_interval = 5.0;
  double mobility_dt = 1.0;
  double latency_budget = 1.0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct ScenarioConfig
{
  TopologyConfig topology;
  WorkloadConfig workload;
  ModelConfig model;
  MobilityConfig mobility;
  RunConfig run;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace detail {

struct Field
{
  std::string_view section;
  std::string_view key;
  std::function<void(ScenarioConfig&, std::string_view)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

[[noreturn]] inline void bad_value(std::string_view key, std::string_view value, std::string_view expected)
{
  throw std::invalid_argument("invalid value '" + std::string(value) + "' for " + std::string(key) + " (expected " +
                              std::string(expected) + ")");
}

template <typename Acc>
Field real_field(std::string_view section, std::string_view key, Acc acc)
{
  return {section, key,
          [=](ScenarioConfig& c, std::string_view v) {
            const auto d = text::parse_double(v);
            if (!d || std::isnan(*d)) bad_value(key, v, "number");
            acc(c) = *d;
          },
          [=](const ScenarioConfig& c) { return text::format_double(acc(c)); }};
}

template <typename Acc>
Field int_field(std::string_view section, std::string_view key, Acc acc)
{
  return {section, key,
          [=](ScenarioConfig& c, std::string_view v) {
            const auto i = text::parse_int(v);
            if (!i) bad_value(key, v, "integer");
            using T = std::remove_reference_t<decltype(acc(c))>;
            acc(c) = static_cast<T>(*i);
          },
          [=](const ScenarioConfig& c) { return std::to_string(acc(c)); }};
}

template <typename Acc>
Field bool_field(std::string_view section, std::string_view key, Acc acc)
{
  return {section, key,
          [=](ScenarioConfig& c, std::string_view v) {
            if (v == "true") {
              acc(c) = true;
            } else if (v == "false") {
              acc(c) = false;
            } else {
              bad_value(key, v, "true or false");
            }
          },
          [=](const ScenarioConfig& c) { return std::string(acc(c) ? "true" : "false"); }};
}

template <typename E, typename Acc>
Field enum_field(std::string_view section, std::string_view key, std::vector<std::pair<std::string_view, E>> names,
                 Acc acc)
{
  return {section, key,
          [=](ScenarioConfig& c, std::string_view v) {
            for (const auto& [n, e] : names) {
              if (n == v) {
                acc(c) = e;
                return;
              }
            }
            std::string expected;
            for (const auto& [n, e] : names) {
              expected += (expected.empty() ? "" : "|") + std::string(n);
            }
            bad_value(key, v, expected);
          },
          [=](const ScenarioConfig& c) {
            for (const auto& [n, e] : names) {
              if (acc(c) == e) return std::string(n);
            }
            return std::string("?");
          }};
}

inline std::string format_node_counts(const NodeCountSpec& s)
{
  if (!s.per_location.empty()) {
    std::string out;
    for (const int n : s.per_location) {
      out += (out.empty() ? "" : ",") + std::to_string(n);
    }
    return out;
  }
  if (s.min == s.max) {
    return std::to_string(s.min);
  }
  return std::to_string(s.min) + "-" + std::to_string(s.max);
}

inline NodeCountSpec parse_node_counts(std::string_view v)
{
  NodeCountSpec s;
  if (v.find(',') != std::string_view::npos) {
    for (const auto part : text::split(v, ',')) {
      const auto n = text::parse_int(part);
      if (!n) bad_value("nodes_per_location", v, "count list like 2,3,5");
      s.per_location.push_back(static_cast<int>(*n));
    }
    s.min = *std::min_element(s.per_location.begin(), s.per_location.end());
    s.max = *std::max_element(s.per_location.begin(), s.per_location.end());
    return s;
  }
  const auto dash = v.find('-');
  if (dash == std::string_view::npos) {
    const auto n = text::parse_int(v);
    if (!n) bad_value("nodes_per_location", v, "count, range like 2-5, or list");
    s.min = s.max = static_cast<int>(*n);
    return s;
  }
  const auto lo = text::parse_int(text::trim(v.substr(0, dash)));
  const auto hi = text::parse_int(text::trim(v.substr(dash + 1)));
  if (!lo || !hi) bad_value("nodes_per_location", v, "range like 2-5");
  s.min = static_cast<int>(*lo);
  s.max = static_cast<int>(*hi);
  return s;
}

inline std::string format_size_classes(const std::vector<SizeClass>& classes)
{
  std::string out;
  for (const auto& c : classes) {
    out += (out.empty() ? "" : ", ") + text::format_double(c.size) + ":" + text::format_double(c.weight);
  }
  return out;
}

inline std::vector<SizeClass> parse_size_classes(std::string_view v)
{
  std::vector<SizeClass> out;
  for (const auto part : text::split(v, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) bad_value("size_classes", v, "size:weight list");
    const auto size = text::parse_double(text::trim(part.substr(0, colon)));
    const auto weight = text::parse_double(text::trim(part.substr(colon + 1)));
    if (!size || !weight) bad_value("size_classes", v, "size:weight list");
    out.push_back({*size, *weight});
  }
  return out;
}

inline const std::vector<Field>& fields()
{
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    // [topology]
    f.push_back(int_field("topology", "locations", [](auto& c) -> auto& { return c.topology.locations; }));
    f.push_back({"topology", "nodes_per_location",
                 [](ScenarioConfig& c, std::string_view v) { c.topology.nodes_per_location = parse_node_counts(v); },
                 [](const ScenarioConfig& c) { return format_node_counts(c.topology.nodes_per_location); }});
    f.push_back(int_field("topology", "servers_per_node", [](auto& c) -> auto& { return c.topology.servers_per_node; }));
    f.push_back(real_field("topology", "service_rate", [](auto& c) -> auto& { return c.topology.service_rate; }));
    f.push_back(real_field("topology", "price", [](auto& c) -> auto& { return c.topology.price; }));
    f.push_back(real_field("topology", "failure_prob", [](auto& c) -> auto& { return c.topology.failure_prob; }));
    f.push_back(real_field("topology", "power_idle", [](auto& c) -> auto& { return c.topology.power_idle; }));
    f.push_back(real_field("topology", "power_busy", [](auto& c) -> auto& { return c.topology.power_busy; }));
    f.push_back({"topology", "queue_capacity",
                 [](ScenarioConfig& c, std::string_view v) {
                   if (v == "auto") {
                     c.topology.queue_capacity.reset();
                     return;
                   }
                   const auto d = text::parse_double(v);
                   if (!d || std::isnan(*d)) bad_value("queue_capacity", v, "number or auto");
                   c.topology.queue_capacity = *d;
                 },
                 [](const ScenarioConfig& c) {
                   return c.topology.queue_capacity ? text::format_double(*c.topology.queue_capacity)
                                                    : std::string("auto");
                 }});
    f.push_back(int_field("topology", "access_points", [](auto& c) -> auto& { return c.topology.access_points; }));
    f.push_back(int_field("topology", "cloud_sinks", [](auto& c) -> auto& { return c.topology.cloud_sinks; }));
    f.push_back(real_field("topology", "cloud_latency", [](auto& c) -> auto& { return c.topology.cloud_latency; }));
    f.push_back(real_field("topology", "cloud_price", [](auto& c) -> auto& { return c.topology.cloud_price; }));
    f.push_back(real_field("topology", "arena_size", [](auto& c) -> auto& { return c.topology.arena_size; }));
    f.push_back(real_field("topology", "link_bandwidth", [](auto& c) -> auto& { return c.topology.link_bandwidth; }));
    f.push_back(real_field("topology", "radio_range", [](auto& c) -> auto& { return c.topology.radio_range; }));
    f.push_back(int_field("topology", "layout_seed", [](auto& c) -> auto& { return c.topology.layout_seed; }));
    // [workload]
    f.push_back(int_field("workload", "devices", [](auto& c) -> auto& { return c.workload.devices; }));
    f.push_back(real_field("workload", "mean_interarrival", [](auto& c) -> auto& { return c.workload.mean_interarrival; }));
    f.push_back({"workload", "size_classes",
                 [](ScenarioConfig& c, std::string_view v) { c.workload.size_classes = parse_size_classes(v); },
                 [](const ScenarioConfig& c) { return format_size_classes(c.workload.size_classes); }});
    f.push_back(int_field("workload", "max_devices", [](auto& c) -> auto& { return c.workload.max_devices; }));
    // [model]
    f.push_back(real_field("model", "beta1", [](auto& c) -> auto& { return c.model.costs.beta1; }));
    f.push_back(real_field("model", "beta2", [](auto& c) -> auto& { return c.model.costs.beta2; }));
    f.push_back(real_field("model", "q_unit", [](auto& c) -> auto& { return c.model.costs.q_unit; }));
    f.push_back(real_field("model", "hop_count", [](auto& c) -> auto& { return c.model.costs.hop_count; }));
    f.push_back(real_field("model", "cloud_comm_cost", [](auto& c) -> auto& { return c.model.costs.cloud_comm_cost; }));
    f.push_back(real_field("model", "cq_max", [](auto& c) -> auto& { return c.model.costs.cq_max; }));
    f.push_back(real_field("model", "max_price", [](auto& c) -> auto& { return c.model.constraints.max_price; }));
    f.push_back(real_field("model", "min_availability", [](auto& c) -> auto& { return c.model.constraints.min_availability; }));
    f.push_back(bool_field("model", "energy_aware", [](auto& c) -> auto& { return c.model.constraints.energy_aware; }));
    f.push_back(real_field("model", "epsilon_t", [](auto& c) -> auto& { return c.model.constraints.epsilon_t; }));
    f.push_back(bool_field("model", "leasing", [](auto& c) -> auto& { return c.model.leasing; }));
    f.push_back(enum_field<AllocationPolicy>("model", "allocation",
                                             {{"fra", AllocationPolicy::fra}, {"random", AllocationPolicy::random}},
                                             [](auto& c) -> auto& { return c.model.allocation; }));
    f.push_back(real_field("model", "packet_error_rate", [](auto& c) -> auto& { return c.model.packet_error_rate; }));
    f.push_back(int_field("model", "queue_limit", [](auto& c) -> auto& { return c.model.queue_limit; }));
    f.push_back(real_field("model", "estimator_window", [](auto& c) -> auto& { return c.model.estimator_window; }));
    f.push_back(real_field("model", "estimator_alpha", [](auto& c) -> auto& { return c.model.estimator_alpha; }));
    // [mobility]
    f.push_back(enum_field<MobilityKind>("mobility", "model",
                                         {{"random_waypoint", MobilityKind::random_waypoint},
                                          {"linear", MobilityKind::linear},
                                          {"circular", MobilityKind::circular},
                                          {"stationary", MobilityKind::stationary},
                                          {"mixed", MobilityKind::mixed}},
                                         [](auto& c) -> auto& { return c.mobility.model; }));
    f.push_back(real_field("mobility", "min_speed", [](auto& c) -> auto& { return c.mobility.min_speed; }));
    f.push_back(real_field("mobility", "max_speed", [](auto& c) -> auto& { return c.mobility.max_speed; }));
    f.push_back(real_field("mobility", "pause", [](auto& c) -> auto& { return c.mobility.pause; }));
    f.push_back(real_field("mobility", "linear_speed", [](auto& c) -> auto& { return c.mobility.linear_speed; }));
    f.push_back(real_field("mobility", "circular_radius", [](auto& c) -> auto& { return c.mobility.circular_radius; }));
    f.push_back(real_field("mobility", "angular_velocity", [](auto& c) -> auto& { return c.mobility.angular_velocity; }));
    // [run]
    f.push_back(real_field("run", "duration", [](auto& c) -> auto& { return c.run.duration; }));
    f.push_back(int_field("run", "seed", [](auto& c) -> auto& { return c.run.seed; }));
    f.push_back(real_field("run", "metrics_interval", [](auto& c) -> auto& { return c.run.metrics_interval; }));
    f.push_back(real_field("run", "mobility_dt", [](auto& c) -> auto& { return c.run.mobility_dt; }));
    f.push_back(real_field("run", "latency_budget", [](auto& c) -> auto& { return c.run.latency_budget; }));
    return f;
  }();
  return table;
}

inline const Field* find_field(std::string_view section, std::string_view key)
{
  for (const auto& f : fields()) {
    if (f.section == section && f.key == key) {
      return &f;
    }
  }
  return nullptr;
}

}  // namespace detail

// Sets `section.key` from its text form; throws std::invalid_argument on unknown keys or bad values.
inline void set_config_value(ScenarioConfig& cfg, std::string_view dotted_key, std::string_view value)
{
  const auto dot = dotted_key.find('.');
  const auto* f = dot == std::string_view::npos
                      ? nullptr
                      : detail::find_field(dotted_key.substr(0, dot), dotted_key.substr(dot + 1));
  if (f == nullptr) {
    throw std::invalid_argument("unknown key '" + std::string(dotted_key) + "'");
  }
  f->set(cfg, text::trim(value));
}

inline std::string get_config_value(const ScenarioConfig& cfg, std::string_view dotted_key)
{
  const auto dot = dotted_key.find('.');
  const auto* f = dot == std::string_view::npos
                      ? nullptr
                      : detail::find_field(dotted_key.substr(0, dot), dotted_key.substr(dot + 1));
  if (f == nullptr) {
    throw std::invalid_argument("unknown key '" + std::string(dotted_key) + "'");
  }
  return f->get(cfg);
}

// Canonical text: every key, in a fixed order, with shortest round-trip numbers.
inline std::string emit_config(const ScenarioConfig& cfg)
{
  std::ostringstream os;
  std::string_view section;
  for (const auto& f : detail::fields()) {
    if (f.section != section) {
      if (!section.empty()) {
        os << '\n';
      }
      section = f.section;
      os << '[' << section << "]\n";
    }
    os << f.key << " = " << f.get(cfg) << '\n';
  }
  return os.str();
}

// Semantic checks that do not need the built topology.
inline std::vector<std::string> config_errors(const ScenarioConfig& c)
{
  std::vector<std::string> e;
  const auto& t = c.topology;
  if (t.locations < 1) e.push_back("locations must be at least 1");
  const auto& n = t.nodes_per_location;
  if (!n.per_location.empty()) {
    if (static_cast<int>(n.per_location.size()) != t.locations)
      e.push_back("nodes_per_location list must have one entry per location");
    if (n.min < 1) e.push_back("nodes_per_location entries must be at least 1");
  } else if (n.min < 1 || n.max < n.min) {
    e.push_back("nodes_per_location range must satisfy 1 <= min <= max");
  }
  if (t.servers_per_node < 1) e.push_back("servers_per_node must be at least 1");
  if (!(t.service_rate > 0.0)) e.push_back("service_rate must be positive");
  if (!(t.price >= 0.0)) e.push_back("price must be nonnegative");
  if (!(t.failure_prob >= 0.0 && t.failure_prob <= 1.0)) e.push_back("failure_prob must be in [0,1]");
  if (!(t.power_idle >= 0.0 && t.power_busy >= t.power_idle)) e.push_back("power must satisfy busy >= idle >= 0");
  if (t.queue_capacity && !(*t.queue_capacity >= 0.0)) e.push_back("queue_capacity must be nonnegative");
  if (t.access_points < 0) e.push_back("access_points must be nonnegative");
  if (t.cloud_sinks < 0) e.push_back("cloud_sinks must be nonnegative");
  if (!(t.cloud_latency >= 0.0)) e.push_back("cloud_latency must be nonnegative");
  if (!(t.arena_size > 0.0) || !std::isfinite(t.arena_size)) e.push_back("arena_size must be positive");
  if (!(t.radio_range > 0.0)) e.push_back("radio_range must be positive");
  if (!(t.link_bandwidth > 0.0)) e.push_back("link_bandwidth must be positive");
  const auto& w = c.workload;
  if (w.devices < 0) e.push_back("devices must be nonnegative");
  if (!(w.mean_interarrival > 0.0)) e.push_back("mean_interarrival must be positive");
  if (w.max_devices < 1) e.push_back("max_devices must be at least 1");
  if (c.model.queue_limit < 0) e.push_back("queue_limit must be nonnegative");
  const auto& m = c.mobility;
  if (!(m.min_speed >= 0.0 && m.max_speed >= m.min_speed)) e.push_back("mobility speeds must satisfy 0 <= min <= max");
  if (!(m.pause >= 0.0)) e.push_back("pause must be nonnegative");
  if (!(m.linear_speed >= 0.0)) e.push_back("linear_speed must be nonnegative");
  if (!(m.circular_radius > 0.0) || 2.0 * m.circular_radius > t.arena_size)
    e.push_back("circular_radius must be positive and fit in the arena");
  if (!(c.run.duration > 0.0)) e.push_back("duration must be positive");
  if (!(c.run.latency_budget > 0.0)) e.push_back("latency_budget must be positive");
  return e;
}

namespace detail {

inline MobilityModel device_mobility(const ScenarioConfig& cfg, std::uint32_t k, Position& start, Rng& rng)
{
  const auto& m = cfg.mobility;
  const double arena = cfg.topology.arena_size;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  auto kind = m.model;
  if (kind == MobilityKind::mixed) {
    constexpr MobilityKind cycle[] = {MobilityKind::random_waypoint, MobilityKind::linear, MobilityKind::circular};
    kind = cycle[k % 3];
  }
  switch (kind) {
    case MobilityKind::linear: {
      const double a = angle(rng);
      return LinearMotion{{m.linear_speed * std::cos(a), m.linear_speed * std::sin(a)}};
    }
    case MobilityKind::circular: {
      const double r = m.circular_radius;
      const Position center{std::clamp(start.x, r, arena - r), std::clamp(start.y, r, arena - r)};
      const double a = angle(rng);
      start = {std::clamp(center.x + r * std::cos(a), 0.0, arena), std::clamp(center.y + r * std::sin(a), 0.0, arena)};
      return CircularMotion{center, r, m.angular_velocity};
    }
    case MobilityKind::stationary:
      return LinearMotion{};
    case MobilityKind::random_waypoint:
    case MobilityKind::mixed:
      break;
  }
  return RandomWaypoint{m.min_speed, m.max_speed, m.pause};
}

}  // namespace detail

// Builds the concrete topology and run parameters. Layout depends only on the config
// (including layout_seed), never on the run seed.
inline Scenario build_scenario(const ScenarioConfig& cfg)
{
  if (const auto errs = config_errors(cfg); !errs.empty()) {
    std::string msg;
    for (const auto& e : errs) {
      msg += e + "\n";
    }
    throw ValidationError(msg);
  }
  const auto& tc = cfg.topology;
  const RngStreams layout(tc.layout_seed);
  Scenario sc;
  Topology& t = sc.topology;
  t.arena.size = tc.arena_size;
  const Position center{tc.arena_size / 2.0, tc.arena_size / 2.0};
  std::uint32_t next_id = 0;

  for (int i = 0; i < tc.locations; ++i) {
    Position pos = center;
    if (tc.locations > 1) {
      const double a = 2.0 * std::numbers::pi * i / tc.locations;
      pos = {center.x + 0.3 * tc.arena_size * std::cos(a), center.y + 0.3 * tc.arena_size * std::sin(a)};
    }
    const LocationId loc_id{static_cast<std::uint32_t>(i)};
    Broker b;
    b.id = NodeId{next_id++};
    b.location_id = loc_id;
    b.position = pos;
    b.link_bandwidth = tc.link_bandwidth;
    t.brokers.push_back(b);

    int count = 0;
    if (!tc.nodes_per_location.per_location.empty()) {
      count = tc.nodes_per_location.per_location[static_cast<std::size_t>(i)];
    } else {
      auto rng = layout.stream("nodes", static_cast<std::uint64_t>(i));
      count = std::uniform_int_distribution<int>(tc.nodes_per_location.min, tc.nodes_per_location.max)(rng);
    }
    FogLocation loc;
    loc.id = loc_id;
    loc.broker_id = b.id;
    double pooled = 0.0;
    for (int j = 0; j < count; ++j) {
      FogNode n;
      n.id = NodeId{next_id++};
      n.location_id = loc_id;
      n.position = pos;
      n.server_count = tc.servers_per_node;
      n.service_rate = tc.service_rate;
      n.price = tc.price;
      n.failure_prob = tc.failure_prob;
      n.power_idle = tc.power_idle;
      n.power_busy = tc.power_busy;
      pooled += n.server_count * n.service_rate;
      loc.node_ids.push_back(n.id);
      t.fog_nodes.push_back(n);
    }
    loc.queue_capacity = tc.queue_capacity.value_or(pooled);
    t.locations.push_back(loc);
  }

  // Full federation: every broker may lease from every other one over a direct link.
  for (auto& b : t.brokers) {
    for (const auto& other : t.brokers) {
      if (other.id != b.id) {
        b.leased_brokers.push_back(other.id);
        if (b.id < other.id) {
          t.links.push_back({b.id, other.id, std::nullopt});
        }
      }
    }
  }

  // Access points on a grid of cell centers, each backhauled to its nearest broker.
  if (tc.access_points > 0) {
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(tc.access_points))));
    const int rows = (tc.access_points + cols - 1) / cols;
    const double cw = tc.arena_size / cols;
    const double ch = tc.arena_size / rows;
    for (int j = 0; j < tc.access_points; ++j) {
      AccessPoint ap;
      ap.id = NodeId{next_id++};
      ap.position = {(j % cols + 0.5) * cw, (j / cols + 0.5) * ch};
      const Broker* best = &t.brokers.front();
      for (const auto& b : t.brokers) {
        if (distance(ap.position, b.position) < distance(ap.position, best->position)) {
          best = &b;
        }
      }
      ap.broker_id = best->id;
      t.access_points.push_back(ap);
    }
  }

  for (int j = 0; j < tc.cloud_sinks; ++j) {
    t.cloud_sinks.push_back({NodeId{next_id++}, center, tc.cloud_latency, tc.cloud_price});
  }

  const double rate = 1.0 / cfg.workload.mean_interarrival;
  for (int k = 0; k < cfg.workload.devices; ++k) {
    auto rng = layout.stream("device", static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> coord(0.0, tc.arena_size);
    MobileDevice d;
    d.id = NodeId{next_id++};
    d.position = {coord(rng), coord(rng)};
    d.mobility = detail::device_mobility(cfg, static_cast<std::uint32_t>(k), d.position, rng);
    d.arrival_rate = rate;
    d.radio_range = tc.radio_range;
    t.devices.push_back(d);
  }

  auto& p = sc.params;
  p.duration = cfg.run.duration;
  p.metrics_interval = cfg.run.metrics_interval;
  p.mobility_dt = cfg.run.mobility_dt;
  p.costs = cfg.model.costs;
  p.constraints = cfg.model.constraints;
  p.packet_error_rate = cfg.model.packet_error_rate;
  p.queue_limit = static_cast<std::size_t>(cfg.model.queue_limit);
  p.estimator_window = cfg.model.estimator_window;
  p.estimator_alpha = cfg.model.estimator_alpha;
  p.leasing_enabled = cfg.model.leasing;
  p.policy = cfg.model.allocation;
  p.size_classes = cfg.workload.size_classes;
  p.latency_budget = cfg.run.latency_budget;
  p.limits.min_nodes_per_location = static_cast<std::size_t>(tc.nodes_per_location.min);
  p.limits.max_nodes_per_location = static_cast<std::size_t>(tc.nodes_per_location.max);

  validate_params(p);
  const auto report = validate_topology(t, p.limits);
  if (!report.ok()) {
    throw ValidationError(report.to_string());
  }
  return sc;
}

// Parses config text and checks that it builds into a valid scenario.
inline ScenarioConfig parse_config(std::string_view text_in)
{
  ScenarioConfig cfg;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text_in)};
  std::string raw;
  std::vector<std::string> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = text::trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigSyntaxError(line_no, "unterminated section header");
      }
      section = std::string(text::trim(line.substr(1, line.size() - 2)));
      const bool known = std::any_of(detail::fields().begin(), detail::fields().end(),
                                     [&](const detail::Field& f) { return f.section == section; });
      if (!known) {
        throw ConfigSyntaxError(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigSyntaxError(line_no, "expected 'key = value'");
    }
    if (section.empty()) {
      throw ConfigSyntaxError(line_no, "key outside of any section");
    }
    const auto key = text::trim(line.substr(0, eq));
    const auto value = text::trim(line.substr(eq + 1));
    const auto* f = detail::find_field(section, key);
    if (f == nullptr) {
      throw ConfigSyntaxError(line_no, "unknown key '" + std::string(key) + "' in [" + section + "]");
    }
    const auto dotted = section + "." + std::string(key);
    if (std::find(seen.begin(), seen.end(), dotted) != seen.end()) {
      throw ConfigSyntaxError(line_no, "duplicate key '" + dotted + "'");
    }
    seen.push_back(dotted);
    try {
      f->set(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigSyntaxError(line_no, e.what());
    }
  }
  build_scenario(cfg);
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read config " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fogfed

#endif  // FOGFED_SCENARIO_CONFIG_HPP_
