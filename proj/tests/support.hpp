#ifndef FOGFED_TESTS_SUPPORT_HPP_
#define FOGFED_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fogfed/fogfed.hpp"

namespace fogfed::testing {

inline std::filesystem::path source_dir()
{
  return FOGFED_SOURCE_DIR;
}

inline ScenarioConfig table2_config()
{
  return load_config(source_dir() / "configs" / "table2.cfg");
}

inline std::filesystem::path scratch_dir(const std::string& name)
{
  auto dir = std::filesystem::temp_directory_path() / "fogfed-tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// One device next to one single-server node: no access delay, no loss, no cloud, and an
// estimator slow enough that the node is never gated, so the node behaves as a plain M/M/1.
inline Scenario mm1_scenario(double lambda, double rho, double duration)
{
  Scenario sc;
  auto& t = sc.topology;
  t.arena.size = 100.0;
  const Position here{50.0, 50.0};
  t.brokers.push_back({NodeId{1}, LocationId{1}, here, {}, 10e9});
  t.fog_nodes.push_back({NodeId{2}, LocationId{1}, here, 1, rho, 0.0, 0.0, 10.0, 20.0});
  t.locations.push_back({LocationId{1}, NodeId{1}, {NodeId{2}}, rho});
  t.access_points.push_back({NodeId{3}, here, NodeId{1}});
  t.devices.push_back({NodeId{4}, here, lambda, LinearMotion{}, 250.0});

  auto& p = sc.params;
  p.duration = duration;
  p.metrics_interval = duration / 10.0;
  p.costs.beta1 = 0.0;
  p.costs.beta2 = 0.0;
  p.costs.hop_count = 0.0;
  p.packet_error_rate = 0.0;
  p.estimator_window = 1000.0;
  p.estimator_alpha = 0.2;
  p.size_classes = {{1.0, 1.0}};
  return sc;
}

inline double mean_latency(const MetricsReport& r)
{
  double sum = 0.0;
  for (const auto& l : r.latencies) {
    sum += l.latency;
  }
  return r.latencies.empty() ? 0.0 : sum / static_cast<double>(r.latencies.size());
}

// Five identical nodes behind one broker, used for energy balance comparisons.
inline ScenarioConfig single_location_config(bool energy_aware, AllocationPolicy policy)
{
  auto cfg = table2_config();
  cfg.topology.locations = 1;
  cfg.topology.nodes_per_location = {5, 5, {}};
  cfg.workload.devices = 30;
  cfg.model.constraints.energy_aware = energy_aware;
  cfg.model.allocation = policy;
  return cfg;
}


inline Candidate make_candidate(std::uint32_t id, AllocationKind kind, double t, double price, double pf, double energy)
{
  Candidate c;
  c.node = NodeId{id};
  c.location = LocationId{kind == AllocationKind::local ? 1u : 2u};
  c.kind = kind;
  c.response = response_time(t, 0.0);
  c.price = price;
  c.failure_prob = pf;
  c.energy_j = energy;
  return c;
}

// Brute force: filter every tier, sort by (time, id), escalate when a tier has nothing feasible.
inline std::optional<NodeId> brute_force_allocate(const std::vector<Candidate>& local,
                                                  const std::vector<Candidate>& leased, const Constraints& cons,
                                                  std::optional<NodeId> cloud)
{
  for (const auto* tier : {&local, &leased}) {
    std::vector<Candidate> ok;
    for (const auto& c : *tier) {
      if (std::isfinite(c.t_r()) && c.price <= cons.max_price && 1.0 - c.failure_prob >= cons.min_availability) {
        ok.push_back(c);
      }
    }
    if (ok.empty()) continue;
    std::sort(ok.begin(), ok.end(), [](const Candidate& a, const Candidate& b) {
      return a.t_r() != b.t_r() ? a.t_r() < b.t_r() : a.node < b.node;
    });
    if (!cons.energy_aware) return ok.front().node;
    const double limit = ok.front().t_r() + cons.epsilon_t;
    std::vector<Candidate> near;
    for (const auto& c : ok) {
      if (c.t_r() <= limit) near.push_back(c);
    }
    std::sort(near.begin(), near.end(), [](const Candidate& a, const Candidate& b) {
      return a.energy_j != b.energy_j ? a.energy_j < b.energy_j : a.node < b.node;
    });
    return near.front().node;
  }
  return cloud;
}

// Random allocation instance with at most six candidates split over the local and leased tiers.
struct FraInstance
{
  std::vector<Candidate> local;
  std::vector<Candidate> leased;
  Constraints cons;
  std::optional<CloudOption> cloud;
};

template <typename Rng>
FraInstance random_fra_instance(Rng& rng)
{
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<int> coarse(1, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FraInstance in;
  const int n = count(rng);
  std::uniform_int_distribution<int> split(0, n);
  const int n_local = split(rng);
  std::vector<std::uint32_t> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = static_cast<std::uint32_t>(i + 1);
  std::shuffle(ids.begin(), ids.end(), rng);
  for (int i = 0; i < n; ++i) {
    const auto kind = i < n_local ? AllocationKind::local : AllocationKind::leased;
    // Coarse values make exact ties common.
    const double t = u(rng) < 0.2 ? std::numeric_limits<double>::infinity() : coarse(rng) * 0.5;
    auto c = make_candidate(ids[i], kind, t, coarse(rng) * 0.5, coarse(rng) * 0.05, coarse(rng) * 100.0);
    (kind == AllocationKind::local ? in.local : in.leased).push_back(c);
  }
  in.cons.max_price = coarse(rng) * 0.5;
  in.cons.min_availability = 0.75 + coarse(rng) * 0.04;
  in.cons.energy_aware = u(rng) < 0.5;
  in.cons.epsilon_t = coarse(rng) * 0.2;
  if (u(rng) < 0.6) {
    in.cloud = CloudOption{NodeId{1000}, 10.0, 0.0};
  }
  return in;
}

// True when fra_allocate agrees with the brute-force oracle, including the no-feasible case.
inline bool fra_matches_oracle(const FraInstance& in)
{
  const Request req{1, NodeId{99}, 1.0, 0.0};
  const auto want = brute_force_allocate(in.local, in.leased, in.cons,
                                         in.cloud ? std::optional<NodeId>(in.cloud->sink) : std::nullopt);
  try {
    const auto got = fra_allocate(req, in.local, in.leased, in.cons, in.cloud);
    return want && got.node_id == *want;
  } catch (const NoFeasibleNodeError&) {
    return !want;
  }
}

}  // namespace fogfed::testing

#endif  // FOGFED_TESTS_SUPPORT_HPP_
