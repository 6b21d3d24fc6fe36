// fogfed: command-line front end for the federated fog simulator.
//
//   fogfed validate --config <file>
//   fogfed simulate --config <file> --seed <int> --out <dir>
//   fogfed sweep    --config <file> --param <name>=<v1,v2,...> --seeds <s1,s2,...> --out <dir>
//   fogfed compare  --config <file> --budget <seconds> --seeds <...> --out <dir> [--max-devices <n>]
//
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fogfed/fogfed.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::vector<std::uint64_t> parse_seeds(const std::string& list)
{
  std::vector<std::uint64_t> seeds;
  for (const auto part : fogfed::text::split(list, ',')) {
    const auto v = fogfed::text::parse_int(part);
    if (!v || *v < 0) {
      throw fogfed::ValidationError("invalid seed '" + std::string(part) + "'");
    }
    seeds.push_back(static_cast<std::uint64_t>(*v));
  }
  return seeds;
}

double parse_budget(const std::string& s)
{
  const auto v = fogfed::text::parse_double(fogfed::text::trim(s));
  if (!v) {
    throw fogfed::ValidationError("invalid budget '" + s + "'");
  }
  return *v;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Federated fog computing discrete-event simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string param;
  std::string seeds_text;
  std::string budget_text;
  int max_devices = 0;

  auto* validate = app.add_subcommand("validate", "Check a scenario config and print its topology shape");
  validate->add_option("--config", config_path, "Scenario config file")->required();

  auto* simulate = app.add_subcommand("simulate", "Run one scenario and write CSV metrics");
  simulate->add_option("--config", config_path, "Scenario config file")->required();
  simulate->add_option("--seed", seed, "Run seed (defaults to run.seed from the config)")
      ->each([&](const std::string&) { seed_given = true; });
  simulate->add_option("--out", out_dir, "Output directory")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep across seeds");
  sweep_cmd->add_option("--config", config_path, "Scenario config file")->required();
  sweep_cmd->add_option("--param", param, "name=v1,v2,... (interarrival, devices, locations)")->required();
  sweep_cmd->add_option("--seeds", seeds_text, "Comma-separated seeds")->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory")->required();

  auto* compare = app.add_subcommand("compare", "Supported users: federated vs single-location");
  compare->add_option("--config", config_path, "Scenario config file")->required();
  compare->add_option("--budget", budget_text, "p95 latency budget in seconds (inf allowed)")->required();
  compare->add_option("--seeds", seeds_text, "Comma-separated seeds")->required();
  compare->add_option("--out", out_dir, "Output directory")->required();
  compare->add_option("--max-devices", max_devices, "Upper bound of the device-count search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    const auto cfg = fogfed::load_config(config_path);

    if (validate->parsed()) {
      const auto sc = fogfed::build_scenario(cfg);
      std::cout << "ok: " << sc.topology.locations.size() << " locations, " << sc.topology.fog_nodes.size()
                << " fog nodes, " << sc.topology.brokers.size() << " brokers, " << sc.topology.access_points.size()
                << " access points, " << sc.topology.cloud_sinks.size() << " cloud sinks, "
                << sc.topology.devices.size() << " devices, " << sc.params.duration << " s\n";
      return kExitOk;
    }

    if (simulate->parsed()) {
      const auto sc = fogfed::build_scenario(cfg);
      const auto report = fogfed::run(sc, seed_given ? seed : cfg.run.seed);
      fogfed::emit_csv(report, out_dir);
      const auto& s = report.summary;
      std::cout << "generated=" << s.generated << " completed=" << s.completed << " dropped=" << s.dropped
                << " rejected=" << s.rejected << " in_flight=" << s.in_flight << " mean_latency_s=" << s.mean_latency
                << " p95_latency_s=" << s.p95_latency << " total_energy_j=" << s.total_energy << '\n';
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      const auto eq = param.find('=');
      if (eq == std::string::npos) {
        throw fogfed::ValidationError("--param must look like name=v1,v2,...");
      }
      std::vector<std::string> values;
      for (const auto v : fogfed::text::split(std::string_view(param).substr(eq + 1), ',')) {
        if (!v.empty()) {
          values.emplace_back(v);
        }
      }
      const auto runs = fogfed::sweep(cfg, param.substr(0, eq), values, parse_seeds(seeds_text), out_dir);
      std::cout << runs.size() << " runs written to " << out_dir << '\n';
      return kExitOk;
    }

    if (compare->parsed()) {
      const auto report = fogfed::compare_baseline(cfg, parse_budget(budget_text), parse_seeds(seeds_text),
                                                   max_devices > 0 ? std::optional<int>(max_devices) : std::nullopt);
      fogfed::emit_compare_csv(report, out_dir);
      for (const auto& row : report.rows) {
        std::cout << "seed=" << row.seed << " federated=" << row.federated_supported
                  << " single_location=" << row.single_supported << '\n';
      }
      return kExitOk;
    }
  } catch (const fogfed::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
