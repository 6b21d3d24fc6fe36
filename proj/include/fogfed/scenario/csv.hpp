#ifndef FOGFED_SCENARIO_CSV_HPP_
#define FOGFED_SCENARIO_CSV_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "fogfed/engine/metrics.hpp"
#include "fogfed/errors.hpp"
#include "fogfed/scenario/text.hpp"

namespace fogfed {

inline constexpr int kCsvSchemaVersion = 1;

inline std::string csv_schema_line()
{
  return "# schema_version=" + std::to_string(kCsvSchemaVersion) + "\n";
}

inline const char* intervals_header()
{
  return "t,node_id,utilization,queue_len,completed,mean_latency_s,energy_j\n";
}

inline const char* latency_header()
{
  return "request_id,created_at,completed_at,latency_s,node_id,kind\n";
}

inline const char* summary_header()
{
  return "seed,devices,duration_s,generated,completed,dropped,dropped_loss,dropped_uncovered,rejected,in_flight,"
         "local,leased,cloud,handovers,mean_latency_s,p95_latency_s,mean_utilization,total_energy_j,"
         "supported_users\n";
}

inline std::string summary_row(const RunSummary& s)
{
  using text::format_double;
  std::string row;
  auto add = [&row](const std::string& cell) {
    if (!row.empty()) row += ',';
    row += cell;
  };
  add(std::to_string(s.seed));
  add(std::to_string(s.devices));
  add(format_double(s.duration));
  add(std::to_string(s.generated));
  add(std::to_string(s.completed));
  add(std::to_string(s.dropped));
  add(std::to_string(s.dropped_loss));
  add(std::to_string(s.dropped_uncovered));
  add(std::to_string(s.rejected));
  add(std::to_string(s.in_flight));
  add(std::to_string(s.local));
  add(std::to_string(s.leased));
  add(std::to_string(s.cloud));
  add(std::to_string(s.handovers));
  add(format_double(s.mean_latency));
  add(format_double(s.p95_latency));
  add(format_double(s.mean_utilization));
  add(format_double(s.total_energy));
  add(std::to_string(s.supported_users));
  return row + "\n";
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << content;
  out.close();
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

inline void ensure_dir(const std::filesystem::path& dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }
}

}  // namespace detail

struct CsvFiles
{
  std::filesystem::path intervals;
  std::filesystem::path latency;
  std::filesystem::path summary;
};

// Writes intervals.csv, latency.csv and summary.csv into `out_dir`. A report that never ran
// (zero duration) produces header-only files.
inline CsvFiles emit_csv(const MetricsReport& report, const std::filesystem::path& out_dir)
{
  using text::format_double;
  detail::ensure_dir(out_dir);
  CsvFiles files{out_dir / "intervals.csv", out_dir / "latency.csv", out_dir / "summary.csv"};

  std::string buf = csv_schema_line() + intervals_header();
  for (const auto& m : report.intervals) {
    buf += format_double(m.t) + ',' + std::to_string(m.node_id.value) + ',' + format_double(m.utilization) + ',' +
           std::to_string(m.queue_len) + ',' + std::to_string(m.completed) + ',' + format_double(m.mean_latency) +
           ',' + format_double(m.energy) + '\n';
  }
  detail::write_file(files.intervals, buf);

  buf = csv_schema_line() + latency_header();
  for (const auto& l : report.latencies) {
    buf += std::to_string(l.request_id) + ',' + format_double(l.created_at) + ',' + format_double(l.completed_at) +
           ',' + format_double(l.latency) + ',' + std::to_string(l.node_id.value) + ',' + to_string(l.kind) + '\n';
  }
  detail::write_file(files.latency, buf);

  buf = csv_schema_line() + summary_header();
  if (report.summary.duration > 0.0) {
    buf += summary_row(report.summary);
  }
  detail::write_file(files.summary, buf);
  return files;
}

}  // namespace fogfed

#endif  // FOGFED_SCENARIO_CSV_HPP_
