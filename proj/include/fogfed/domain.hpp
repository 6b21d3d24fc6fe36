#ifndef FOGFED_DOMAIN_HPP_
#define FOGFED_DOMAIN_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "fogfed/geometry.hpp"
#include "fogfed/ids.hpp"
#include "fogfed/mobility.hpp"

namespace fogfed {

struct FogNode
{
  NodeId id;
  LocationId location_id;
  Position position;
  int server_count = 1;       // parallel servers contributed to the location
  double service_rate = 1.0;  // tasks/s per server
  double price = 0.0;         // cost units per executed task
  double failure_prob = 0.0;
  double power_idle = 0.0;    // W
  double power_busy = 0.0;    // W

  bool valid() const
  {
    return server_count >= 1 && service_rate > 0.0 && std::isfinite(service_rate) && price >= 0.0 &&
           failure_prob >= 0.0 && failure_prob <= 1.0 && power_idle >= 0.0 && power_busy >= power_idle;
  }
};

struct Broker
{
  NodeId id;
  LocationId location_id;
  Position position;
  std::vector<NodeId> leased_brokers;  // brokers this one may lease capacity from
  double link_bandwidth = 10e9;        // bit/s, broker-to-broker
};

struct FogLocation
{
  LocationId id;
  NodeId broker_id;
  std::vector<NodeId> node_ids;
  double queue_capacity = 0.0;  // tasks/s the location admits
};

struct AccessPoint
{
  NodeId id;
  Position position;
  NodeId broker_id;  // broker the AP backhauls to
};

// Fixed-latency, unlimited-capacity sink.
struct CloudSink
{
  NodeId id;
  Position position;
  double latency = 1.0;  // s, round trip including execution
  double price = 0.0;
};

struct MobileDevice
{
  NodeId id;
  Position position;
  double arrival_rate = 0.0;  // tasks/s
  MobilityModel mobility = LinearMotion{};
  double radio_range = 250.0;  // m
};

// Undirected link; `latency` overrides the distance-derived delay when set.
struct Link
{
  NodeId a;
  NodeId b;
  std::optional<double> latency;
};

// Coefficients of the delay and cost model.
struct CostParams
{
  double beta1 = 1e-5;           // s/m, broker-to-broker and lease path
  double beta2 = 1e-4;           // s/m, device-to-broker access
  double q_unit = 1e-3;          // cost units per unit queuing pressure
  double hop_count = 2.0;        // hops between access point and broker
  double cloud_comm_cost = 5e-3; // s per hop
  double cq_max = 1e6;           // queuing-cost saturation cap

  bool valid() const
  {
    return beta1 >= 0.0 && beta2 >= 0.0 && q_unit >= 0.0 && hop_count >= 0.0 && cloud_comm_cost >= 0.0 &&
           cq_max > 0.0;
  }

  friend bool operator==(const CostParams&, const CostParams&) = default;
};

struct Request
{
  std::uint64_t id = 0;
  NodeId device_id;
  double size = 1.0;  // service demand; 1.0 = one mean-size task
  double created_at = 0.0;
};

}  // namespace fogfed

#endif  // FOGFED_DOMAIN_HPP_
