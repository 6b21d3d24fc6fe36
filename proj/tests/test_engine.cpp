#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "fogfed/fogfed.hpp"
#include "support.hpp"

namespace fogfed {
namespace {

TEST(EventQueue, DispatchOrder)
{
  EventQueue q;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> t(0, 20);
  for (std::uint32_t i = 0; i < 500; ++i) {
    q.push(t(rng) * 0.5, EventKind::metrics_tick, i);
  }
  double last_t = -1.0;
  std::uint64_t last_seq = 0;
  while (!q.empty()) {
    const auto e = q.pop();
    ASSERT_GE(e.time, last_t);
    if (e.time == last_t) {
      ASSERT_GT(e.sequence, last_seq);
    }
    last_t = e.time;
    last_seq = e.sequence;
  }
  EXPECT_THROW(q.push(1.0, EventKind::metrics_tick), EngineError);
}

TEST(Workload, PoissonCountWithinThreeSigma)
{
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const auto times = generate_arrivals(1.0, 500.0, rng);
    EXPECT_NEAR(static_cast<double>(times.size()), 500.0, 3.0 * std::sqrt(500.0)) << "seed " << seed;
    for (std::size_t i = 1; i < times.size(); ++i) {
      ASSERT_GT(times[i], times[i - 1]);
    }
  }
}

TEST(Workload, ZeroRateAndDeterminism)
{
  Rng rng(1);
  EXPECT_TRUE(generate_arrivals(0.0, 500.0, rng).empty());
  Rng a(17), b(17);
  EXPECT_EQ(generate_arrivals(2.0, 100.0, a), generate_arrivals(2.0, 100.0, b));
}

TEST(PacketLoss, Examples)
{
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(apply_packet_loss(rng, 0.0), Delivery::delivered);
    ASSERT_EQ(apply_packet_loss(rng, 1.0), Delivery::dropped);
  }
  int dropped = 0;
  for (int i = 0; i < 1000000; ++i) {
    dropped += apply_packet_loss(rng, 1e-3) == Delivery::dropped ? 1 : 0;
  }
  EXPECT_NEAR(dropped, 1000.0, 3.0 * std::sqrt(1e6 * 1e-3 * (1 - 1e-3)));
}

TEST(NodeService, EmptySingleServerStartsImmediately)
{
  const FogNode node{NodeId{1}, LocationId{1}, {}, 1, 2.0, 0, 0, 10, 20};
  NodeRuntime rt;
  Rng rng(1);
  const auto out = service_request(rt, node, {7, 1.0}, 12.5, rng);
  EXPECT_EQ(out.admission, Admission::started);
  EXPECT_GT(out.completes_at, 12.5);
  EXPECT_EQ(rt.busy_servers, 1);
  EXPECT_TRUE(rt.queue.empty());
}

TEST(NodeService, TwoServersThirdWaitsFifo)
{
  const FogNode node{NodeId{1}, LocationId{1}, {}, 2, 1.0, 0, 0, 10, 20};
  NodeRuntime rt;
  Rng rng(1);
  const auto a = service_request(rt, node, {1, 1.0}, 0.0, rng);
  const auto b = service_request(rt, node, {2, 1.0}, 0.0, rng);
  const auto c = service_request(rt, node, {3, 1.0}, 0.0, rng);
  const auto d = service_request(rt, node, {4, 1.0}, 0.0, rng);
  EXPECT_EQ(a.admission, Admission::started);
  EXPECT_EQ(b.admission, Admission::started);
  EXPECT_EQ(c.admission, Admission::queued);
  EXPECT_EQ(d.admission, Admission::queued);
  EXPECT_EQ(rt.busy_servers, 2);

  const double first = std::min(a.completes_at, b.completes_at);
  rt.advance_to(first, node);
  const auto next = release_server(rt, node, first, rng);
  ASSERT_TRUE(next.has_value());
  EXPECT_EQ(next->request, 3u);
  EXPECT_GT(next->completes_at, first);
  EXPECT_EQ(rt.busy_servers, 2);
  ASSERT_EQ(rt.queue.size(), 1u);
  EXPECT_EQ(rt.queue.front().request, 4u);
}

TEST(NodeService, FiniteQueueRejects)
{
  const FogNode node{NodeId{1}, LocationId{1}, {}, 1, 1.0, 0, 0, 10, 20};
  NodeRuntime rt;
  Rng rng(1);
  EXPECT_EQ(service_request(rt, node, {1, 1.0}, 0.0, rng, 1).admission, Admission::started);
  EXPECT_EQ(service_request(rt, node, {2, 1.0}, 0.0, rng, 1).admission, Admission::queued);
  EXPECT_EQ(service_request(rt, node, {3, 1.0}, 0.0, rng, 1).admission, Admission::rejected);
}

TEST(NodeService, ServiceTimeMeanScalesWithSize)
{
  const FogNode node{NodeId{1}, LocationId{1}, {}, 1, 4.0, 0, 0, 0, 0};
  Rng rng(2);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    sum += draw_service_time(node, 2.0, rng);
  }
  EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(Energy, Examples)
{
  const FogNode idle50{NodeId{1}, LocationId{1}, {}, 2, 1.0, 0, 0, 50, 80};
  EXPECT_DOUBLE_EQ(account_energy(idle50, 10.0, 0.0), 500.0);
  const FogNode flat{NodeId{1}, LocationId{1}, {}, 3, 1.0, 0, 0, 100, 100};
  EXPECT_DOUBLE_EQ(account_energy(flat, 10.0, 0.0), 1000.0);
  EXPECT_DOUBLE_EQ(account_energy(flat, 10.0, 13.0), 1000.0);
  EXPECT_DOUBLE_EQ(account_energy(flat, 10.0, 30.0), 1000.0);
  const FogNode busy150{NodeId{1}, LocationId{1}, {}, 2, 1.0, 0, 0, 40, 150};
  EXPECT_DOUBLE_EQ(account_energy(busy150, 10.0, 20.0), 1500.0);
}

TEST(Estimator, ConvergesToConstantRate)
{
  LoadEstimator est(1, 1.0, 0.3);
  for (int w = 0; w < 100; ++w) {
    est.record(0, 2.0);
    est.advance_to(w + 1.0);
  }
  EXPECT_NEAR(est.rate(0), 2.0, 0.02);
}

TEST(Estimator, UnitAlphaIsLastWindow)
{
  LoadEstimator est(2, 2.0, 1.0);
  est.record(0, 10);
  est.advance_to(2.0);
  est.record(0, 3);
  EXPECT_DOUBLE_EQ(estimate_load(est, 0, 4.0), 1.5);
  EXPECT_EQ(estimate_load(est, 1, 4.0), 0.0);
  EXPECT_EQ(estimate_load(est, 1, 400.0), 0.0);
  EXPECT_THROW(LoadEstimator(1, 0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(LoadEstimator(1, 1.0, 0.0), std::invalid_argument);
}

TEST(Percentile, NearestRank)
{
  EXPECT_EQ(percentile({}, 0.95), 0.0);
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(i);
  EXPECT_EQ(percentile(v, 0.95), 95.0);
  EXPECT_EQ(percentile({3.0}, 0.95), 3.0);
  EXPECT_NEAR(coefficient_of_variation({1.0, 3.0}), 0.5, 1e-15);
  EXPECT_EQ(coefficient_of_variation({2.0, 2.0, 2.0}), 0.0);
}

TEST(Simulator, EmptyWorkloadIsIdle)
{
  auto sc = build_scenario(testing::table2_config());
  for (auto& d : sc.topology.devices) {
    d.arrival_rate = 0.0;
  }
  const auto r = run(sc, 1);
  EXPECT_EQ(r.summary.generated, 0u);
  EXPECT_TRUE(r.latencies.empty());
  EXPECT_EQ(r.summary.mean_utilization, 0.0);
  ASSERT_EQ(r.node_energy.size(), sc.topology.fog_nodes.size());
  for (std::size_t i = 0; i < r.node_energy.size(); ++i) {
    EXPECT_NEAR(r.node_energy[i], sc.topology.fog_nodes[i].power_idle * 500.0, 1e-6);
  }
}

TEST(Simulator, SingleDeviceSingleNodeConserves)
{
  const auto sc = testing::mm1_scenario(0.5, 2.0, 500.0);
  const auto r = run(sc, 3);
  const auto& s = r.summary;
  EXPECT_GT(s.generated, 150u);
  EXPECT_TRUE(s.conserved());
  EXPECT_EQ(s.completed, s.generated - s.in_flight);
  EXPECT_LE(s.in_flight, 10u);
}

TEST(Simulator, Table2MetricsShapeAndBounds)
{
  const auto sc = build_scenario(testing::table2_config());
  const auto r = run(sc, 1);
  const std::size_t ticks = static_cast<std::size_t>(std::ceil(500.0 / 5.0));
  EXPECT_EQ(r.intervals.size(), sc.topology.fog_nodes.size() * ticks);
  std::map<std::uint32_t, double> last_energy;
  for (const auto& m : r.intervals) {
    ASSERT_GE(m.utilization, 0.0);
    ASSERT_LE(m.utilization, 1.0);
    auto& prev = last_energy[m.node_id.value];
    ASSERT_GE(m.energy, prev);
    prev = m.energy;
  }
  EXPECT_TRUE(r.summary.conserved());
  EXPECT_GT(r.summary.local, 0u);
  EXPECT_GT(r.summary.handovers, 0u);
}

TEST(Simulator, MetricsTickAtHorizonWhenNotDivisible)
{
  auto sc = testing::mm1_scenario(0.5, 2.0, 23.0);
  sc.params.metrics_interval = 5.0;
  const auto r = run(sc, 1);
  ASSERT_EQ(r.intervals.size(), 5u);
  EXPECT_EQ(r.intervals.back().t, 23.0);
}

TEST(Simulator, SameSeedSameReport)
{
  const auto sc = build_scenario(testing::table2_config());
  const auto a = run(sc, 9);
  const auto b = run(sc, 9);
  ASSERT_EQ(a.latencies.size(), b.latencies.size());
  for (std::size_t i = 0; i < a.latencies.size(); ++i) {
    ASSERT_EQ(a.latencies[i].latency, b.latencies[i].latency);
    ASSERT_EQ(a.latencies[i].node_id, b.latencies[i].node_id);
  }
  EXPECT_EQ(a.summary.total_energy, b.summary.total_energy);
}

TEST(Simulator, MM1MeanSojourn)
{
  const auto r = run(testing::mm1_scenario(0.5, 1.0, 110000.0), 1);
  ASSERT_GE(r.latencies.size(), 50000u);
  EXPECT_NEAR(testing::mean_latency(r), 2.0, 0.2);
  EXPECT_EQ(r.summary.rejected, 0u);
}

TEST(Simulator, ConservationUnderStress)
{
  // Finite queues, heavy loss, no cloud, and random allocation all exercise other exit paths.
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto cfg = testing::table2_config();
    cfg.run.duration = 120;
    cfg.workload.devices = 250;
    cfg.model.queue_limit = static_cast<int>(seed);
    cfg.model.packet_error_rate = 0.05 * seed;
    cfg.topology.cloud_sinks = seed % 2 == 0 ? 0 : 2;
    cfg.model.allocation = seed % 2 == 0 ? AllocationPolicy::random : AllocationPolicy::fra;
    cfg.topology.radio_range = 150;
    const auto r = run(build_scenario(cfg), seed);
    const auto& s = r.summary;
    EXPECT_TRUE(s.conserved());
    EXPECT_EQ(s.generated, s.completed + s.dropped_loss + s.dropped_uncovered + s.rejected + s.in_flight);
    EXPECT_GT(s.dropped_loss, 0u);
    EXPECT_GT(s.rejected, 0u);
  }
}

TEST(Simulator, InvalidParamsRejected)
{
  auto sc = testing::mm1_scenario(0.5, 2.0, 10.0);
  sc.params.duration = 0.0;
  try {
    run(sc, 1);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("duration must be positive"), std::string::npos);
  }
  auto bad = testing::mm1_scenario(0.5, 2.0, 10.0);
  bad.topology.brokers.clear();
  EXPECT_THROW(run(bad, 1), ValidationError);
}

TEST(Simulator, LeasingSpillsOverUnderLoad)
{
  auto cfg = testing::table2_config();
  cfg.run.duration = 200;
  cfg.workload.devices = 200;
  const auto fed = run(build_scenario(cfg), 1).summary;
  cfg.model.leasing = false;
  const auto solo = run(build_scenario(cfg), 1).summary;
  EXPECT_GT(fed.leased, 0u);
  EXPECT_EQ(solo.leased, 0u);
  EXPECT_GT(solo.cloud, fed.cloud);
}

}  // namespace
}  // namespace fogfed
