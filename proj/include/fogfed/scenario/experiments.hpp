#ifndef FOGFED_SCENARIO_EXPERIMENTS_HPP_
#define FOGFED_SCENARIO_EXPERIMENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fogfed/engine/simulator.hpp"
#include "fogfed/scenario/config.hpp"
#include "fogfed/scenario/csv.hpp"

namespace fogfed {

// Sweepable parameter names and the config keys they drive.
inline std::optional<std::string> sweep_key(const std::string& name)
{
  if (name == "interarrival" || name == "workload.mean_interarrival") return "workload.mean_interarrival";
  if (name == "devices" || name == "workload.devices") return "workload.devices";
  if (name == "locations" || name == "topology.locations") return "topology.locations";
  return std::nullopt;
}

struct SweepRun
{
  std::string value;
  std::uint64_t seed = 0;
  std::filesystem::path dir;
  RunSummary summary;
};

// Runs the cross product values x seeds. Each run writes its CSVs to
// <out>/<param>=<value>/seed=<seed>/, and <out>/sweep_summary.csv gets one row per run.
inline std::vector<SweepRun> sweep(const ScenarioConfig& base, const std::string& param,
                                   const std::vector<std::string>& values, const std::vector<std::uint64_t>& seeds,
                                   const std::filesystem::path& out_dir)
{
  const auto key = sweep_key(param);
  if (!key) {
    throw ValidationError("unknown sweep parameter '" + param + "' (expected interarrival, devices or locations)");
  }
  if (values.empty()) {
    throw ValidationError("sweep needs at least one value");
  }
  if (seeds.empty()) {
    throw ValidationError("sweep needs at least one seed");
  }

  // Build every variant first so a bad value fails before any output is written.
  std::vector<Scenario> scenarios;
  for (const auto& v : values) {
    ScenarioConfig cfg = base;
    try {
      set_config_value(cfg, *key, v);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
    scenarios.push_back(build_scenario(cfg));
  }

  detail::ensure_dir(out_dir);
  std::vector<SweepRun> runs;
  std::string combined = csv_schema_line() + "param,value," + summary_header();
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (const auto seed : seeds) {
      const auto report = run(scenarios[i], seed);
      SweepRun r;
      r.value = values[i];
      r.seed = seed;
      r.dir = out_dir / (param + "=" + values[i]) / ("seed=" + std::to_string(seed));
      r.summary = report.summary;
      emit_csv(report, r.dir);
      combined += param + "," + values[i] + "," + summary_row(report.summary);
      runs.push_back(std::move(r));
    }
  }
  detail::write_file(out_dir / "sweep_summary.csv", combined);
  return runs;
}

enum class Arm { federated, single_location };

inline const char* to_string(Arm a)
{
  return a == Arm::federated ? "federated" : "single_location";
}

struct SearchProbe
{
  Arm arm = Arm::federated;
  std::uint64_t seed = 0;
  int devices = 0;
  double p95 = 0.0;
  bool within_budget = false;
};

struct CompareRow
{
  std::uint64_t seed = 0;
  int federated_supported = 0;
  int single_supported = 0;
};

struct CompareReport
{
  double budget = 0.0;
  int max_devices = 0;
  std::vector<CompareRow> rows;
  std::vector<SearchProbe> probes;
};

// Scenario for one arm: the federated arm keeps the configured leasing, the single-location
// arm confines every request to its home location (leasing off).
inline ScenarioConfig arm_config(const ScenarioConfig& base, Arm arm, int devices)
{
  ScenarioConfig cfg = base;
  cfg.workload.devices = devices;
  if (arm == Arm::single_location) {
    cfg.model.leasing = false;
  }
  return cfg;
}

// Largest device count in [0, max_devices] whose effective p95 latency stays within budget,
// found by doubling from one device and then bisecting.
inline int supported_users(const ScenarioConfig& base, Arm arm, std::uint64_t seed, double budget, int max_devices,
                           std::vector<SearchProbe>* probes = nullptr)
{
  auto ok = [&](int n) {
    const auto report = run(build_scenario(arm_config(base, arm, n)), seed);
    const double p95 = effective_p95(report);
    const bool pass = p95 <= budget;
    if (probes != nullptr) {
      probes->push_back({arm, seed, n, p95, pass});
    }
    return pass;
  };

  if (!ok(1)) {
    return 0;
  }
  int lo = 1;
  int hi = 0;
  for (int n = 2;; n *= 2) {
    if (n >= max_devices) {
      if (ok(max_devices)) {
        return max_devices;
      }
      hi = max_devices;
      break;
    }
    if (!ok(n)) {
      hi = n;
      break;
    }
    lo = n;
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

inline CompareReport compare_baseline(const ScenarioConfig& base, double budget, const std::vector<std::uint64_t>& seeds,
                                      std::optional<int> max_devices = std::nullopt)
{
  if (!(budget > 0.0)) {
    throw ValidationError("latency budget must be positive");
  }
  if (base.topology.locations < 2) {
    throw ValidationError("compare needs at least 2 locations");
  }
  if (seeds.empty()) {
    throw ValidationError("compare needs at least one seed");
  }
  CompareReport report;
  report.budget = budget;
  report.max_devices = max_devices.value_or(base.workload.max_devices);
  if (report.max_devices < 1) {
    throw ValidationError("max devices must be at least 1");
  }
  build_scenario(base);
  for (const auto seed : seeds) {
    CompareRow row;
    row.seed = seed;
    row.federated_supported = supported_users(base, Arm::federated, seed, budget, report.max_devices, &report.probes);
    row.single_supported =
        supported_users(base, Arm::single_location, seed, budget, report.max_devices, &report.probes);
    report.rows.push_back(row);
  }
  return report;
}

// compare.csv (one row per seed) and compare_trace.csv (every probe of the search).
inline void emit_compare_csv(const CompareReport& r, const std::filesystem::path& out_dir)
{
  using text::format_double;
  detail::ensure_dir(out_dir);
  std::string buf = csv_schema_line() + "seed,budget_s,max_devices,federated_supported_users,single_supported_users\n";
  for (const auto& row : r.rows) {
    buf += std::to_string(row.seed) + ',' + format_double(r.budget) + ',' + std::to_string(r.max_devices) + ',' +
           std::to_string(row.federated_supported) + ',' + std::to_string(row.single_supported) + '\n';
  }
  detail::write_file(out_dir / "compare.csv", buf);

  buf = csv_schema_line() + "arm,seed,devices,p95_latency_s,within_budget\n";
  for (const auto& p : r.probes) {
    buf += std::string(to_string(p.arm)) + ',' + std::to_string(p.seed) + ',' + std::to_string(p.devices) + ',' +
           format_double(p.p95) + ',' + (p.within_budget ? "1" : "0") + '\n';
  }
  detail::write_file(out_dir / "compare_trace.csv", buf);
}

}  // namespace fogfed

#endif  // FOGFED_SCENARIO_EXPERIMENTS_HPP_
