#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fogfed/fogfed.hpp"
#include "support.hpp"

namespace fogfed {
namespace {

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::filesystem::path& p)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    for (const auto c : text::split(line, ',')) cells.emplace_back(c);
    rows.push_back(std::move(cells));
  }
  return rows;
}

TEST(ParseConfig, BundledTable2)
{
  const auto cfg = testing::table2_config();
  EXPECT_EQ(cfg.topology.locations, 5);
  EXPECT_EQ(cfg.run.duration, 500.0);
  EXPECT_EQ(cfg.topology.access_points, 20);
  EXPECT_EQ(cfg.workload.devices, 200);
  EXPECT_EQ(cfg.model.packet_error_rate, 1e-3);
  const auto sc = build_scenario(cfg);
  EXPECT_EQ(sc.topology.brokers.size(), 5u);
  EXPECT_EQ(sc.topology.cloud_sinks.size(), 2u);
  EXPECT_EQ(sc.params.duration, 500.0);
}

TEST(ParseConfig, OmittedMobilityDefaultsToRandomWaypoint)
{
  const auto cfg = parse_config("[run]\nduration = 50\n");
  EXPECT_EQ(cfg.mobility.model, MobilityKind::random_waypoint);
  EXPECT_EQ(cfg.mobility, MobilityConfig{});
  const auto sc = build_scenario(cfg);
  for (const auto& d : sc.topology.devices) {
    EXPECT_TRUE(std::holds_alternative<RandomWaypoint>(d.mobility));
  }
}

TEST(ParseConfig, ZeroDurationIsSemanticError)
{
  try {
    parse_config("[run]\nduration = 0\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("duration must be positive"), std::string::npos);
  }
}

TEST(ParseConfig, SyntaxErrorsCarryLineNumbers)
{
  const auto line_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigSyntaxError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("[run]\nduration = 10\nbogus = 3\n"), 3);
  EXPECT_EQ(line_of("# comment\n\n[nowhere]\n"), 3);
  EXPECT_EQ(line_of("[run]\nduration 10\n"), 2);
  EXPECT_EQ(line_of("seed = 3\n"), 1);
  EXPECT_EQ(line_of("[run]\nseed = 1\nseed = 2\n"), 3);
  EXPECT_EQ(line_of("[topology]\nlocations = five\n"), 2);
}

TEST(ParseConfig, RoundTripIsIdempotent)
{
  const auto cfg = testing::table2_config();
  const auto once = emit_config(cfg);
  const auto reparsed = parse_config(once);
  EXPECT_EQ(reparsed, cfg);
  EXPECT_EQ(emit_config(reparsed), once);

  auto odd = cfg;
  odd.model.costs.beta1 = 0.1 + 0.2;
  odd.topology.nodes_per_location = {2, 4, {2, 3, 4, 2, 3}};
  odd.model.constraints.max_price = 2.5;
  odd.mobility.model = MobilityKind::circular;
  odd.topology.queue_capacity = 17.25;
  const auto text = emit_config(odd);
  EXPECT_EQ(parse_config(text), odd);
  EXPECT_EQ(emit_config(parse_config(text)), text);
}

TEST(EmitCsv, EmptyReportWritesHeadersOnly)
{
  const auto dir = testing::scratch_dir("empty-report");
  MetricsReport empty;
  emit_csv(empty, dir);
  EXPECT_EQ(slurp(dir / "intervals.csv"), csv_schema_line() + intervals_header());
  EXPECT_EQ(slurp(dir / "latency.csv"), csv_schema_line() + latency_header());
  EXPECT_EQ(slurp(dir / "summary.csv"), csv_schema_line() + summary_header());
}

TEST(EmitCsv, IdenticalRunsAreByteIdentical)
{
  const auto sc = build_scenario(testing::table2_config());
  const auto a = testing::scratch_dir("run-a");
  const auto b = testing::scratch_dir("run-b");
  emit_csv(run(sc, 4), a);
  emit_csv(run(sc, 4), b);
  for (const char* f : {"intervals.csv", "latency.csv", "summary.csv"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(EmitCsv, IntervalRowsAndExactNumbers)
{
  const auto sc = build_scenario(testing::table2_config());
  const auto report = run(sc, 2);
  const auto dir = testing::scratch_dir("cells");
  emit_csv(report, dir);

  const auto intervals = csv_rows(dir / "intervals.csv");
  ASSERT_EQ(intervals.size() - 1, sc.topology.fog_nodes.size() * 100);
  for (std::size_t i = 0; i < report.intervals.size(); ++i) {
    const auto& row = intervals[i + 1];
    const auto& m = report.intervals[i];
    ASSERT_EQ(text::parse_double(row[0]), m.t);
    ASSERT_EQ(text::parse_double(row[2]), m.utilization);
    ASSERT_EQ(text::parse_double(row[5]), m.mean_latency);
    ASSERT_EQ(text::parse_double(row[6]), m.energy);
  }
  const auto latency = csv_rows(dir / "latency.csv");
  ASSERT_EQ(latency.size() - 1, report.latencies.size());
  for (std::size_t i = 0; i < report.latencies.size(); ++i) {
    ASSERT_EQ(text::parse_double(latency[i + 1][1]), report.latencies[i].created_at);
    ASSERT_EQ(text::parse_double(latency[i + 1][3]), report.latencies[i].latency);
  }
  const auto summary = csv_rows(dir / "summary.csv");
  ASSERT_EQ(summary.size(), 2u);
  EXPECT_EQ(text::parse_double(summary[1][15]), report.summary.p95_latency);
  EXPECT_EQ(text::parse_double(summary[1][17]), report.summary.total_energy);
}

TEST(Text, DoubleRoundTrip)
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    ASSERT_EQ(text::parse_double(text::format_double(v)), v);
  }
  EXPECT_FALSE(text::parse_double("1.5x").has_value());
}

ScenarioConfig small_config()
{
  auto cfg = testing::table2_config();
  cfg.run.duration = 40;
  cfg.workload.devices = 20;
  return cfg;
}

TEST(Sweep, CrossProductCount)
{
  const auto dir = testing::scratch_dir("sweep");
  const auto runs = sweep(small_config(), "interarrival", {"0.5", "1.0", "1.5"}, {1, 2, 3, 4, 5}, dir);
  EXPECT_EQ(runs.size(), 15u);
  EXPECT_EQ(csv_rows(dir / "sweep_summary.csv").size(), 16u);
  EXPECT_TRUE(std::filesystem::exists(dir / "interarrival=1.5" / "seed=5" / "summary.csv"));
}

TEST(Sweep, RunIsReproducibleInIsolation)
{
  const auto dir = testing::scratch_dir("sweep-iso");
  sweep(small_config(), "devices", {"10", "30"}, {7}, dir);
  auto cfg = small_config();
  cfg.workload.devices = 30;
  const auto solo = testing::scratch_dir("sweep-solo");
  emit_csv(run(build_scenario(cfg), 7), solo);
  EXPECT_EQ(slurp(dir / "devices=30" / "seed=7" / "latency.csv"), slurp(solo / "latency.csv"));
}

TEST(Sweep, Errors)
{
  const auto dir = testing::scratch_dir("sweep-err");
  EXPECT_THROW(sweep(small_config(), "interarrival", {}, {1}, dir), ValidationError);
  EXPECT_THROW(sweep(small_config(), "interarrival", {"1"}, {}, dir), ValidationError);
  EXPECT_THROW(sweep(small_config(), "price", {"1"}, {1}, dir), ValidationError);
}

TEST(Compare, DegenerateConfigGivesEqualArms)
{
  auto cfg = small_config();
  cfg.topology.nodes_per_location = {1, 1, {}};
  cfg.model.leasing = false;
  const auto r = compare_baseline(cfg, 1.5, {1, 2}, 64);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.federated_supported, row.single_supported);
  }
}

TEST(Compare, InfiniteBudgetReportsMax)
{
  const auto r = compare_baseline(small_config(), std::numeric_limits<double>::infinity(), {1}, 40);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].federated_supported, 40);
  EXPECT_EQ(r.rows[0].single_supported, 40);
}

TEST(Compare, Errors)
{
  EXPECT_THROW(compare_baseline(small_config(), 0.0, {1}), ValidationError);
  EXPECT_THROW(compare_baseline(small_config(), -1.0, {1}), ValidationError);
  auto one = small_config();
  one.topology.locations = 1;
  EXPECT_THROW(compare_baseline(one, 1.0, {1}), ValidationError);
}

TEST(Compare, SearchProbesBracketResult)
{
  const auto r = compare_baseline(small_config(), 1.2, {3}, 200);
  ASSERT_EQ(r.rows.size(), 1u);
  for (const auto arm : {Arm::federated, Arm::single_location}) {
    const int found = arm == Arm::federated ? r.rows[0].federated_supported : r.rows[0].single_supported;
    for (const auto& p : r.probes) {
      if (p.arm != arm) continue;
      if (p.devices <= found) {
        EXPECT_TRUE(p.within_budget) << p.devices;
      } else {
        EXPECT_FALSE(p.within_budget) << p.devices;
      }
    }
  }
}

int cli(const std::string& args)
{
  const std::string cmd = std::string(FOGFED_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST(Cli, ExitCodes)
{
  const auto dir = testing::scratch_dir("cli");
  const auto table2 = (testing::source_dir() / "configs" / "table2.cfg").string();
  {
    std::ofstream bad(dir / "bad.cfg");
    bad << "[run]\nduration = 0\n";
    std::ofstream small(dir / "small.cfg");
    small << "[run]\nduration = 20\n[workload]\ndevices = 5\n";
  }
  const auto small = (dir / "small.cfg").string();
  EXPECT_EQ(cli("validate --config " + table2), 0);
  EXPECT_EQ(cli("validate --config " + (dir / "bad.cfg").string()), 1);
  EXPECT_EQ(cli("validate"), 1);
  EXPECT_EQ(cli("simulate --config " + small + " --seed 3 --out " + (dir / "sim").string()), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "sim" / "summary.csv"));
  EXPECT_EQ(cli("sweep --config " + small + " --param interarrival=1,2 --seeds 1 --out " + (dir / "sw").string()), 0);
  EXPECT_EQ(cli("sweep --config " + small + " --param price=1 --seeds 1 --out " + (dir / "sw2").string()), 1);
  EXPECT_EQ(cli("compare --config " + small + " --budget 0 --seeds 1 --out " + (dir / "cmp").string()), 1);
  EXPECT_EQ(cli("compare --config " + small + " --budget inf --seeds 1 --max-devices 8 --out " +
                (dir / "cmp").string()),
            0);
  EXPECT_EQ(cli("simulate --config " + (dir / "missing.cfg").string() + " --out " + (dir / "x").string()), 2);
  // A regular file where the output directory should go is a runtime error.
  EXPECT_EQ(cli("simulate --config " + small + " --out " + small), 2);
}

}  // namespace
}  // namespace fogfed
