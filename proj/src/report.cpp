#include "headway/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace headway {

CsvError::CsvError(std::size_t row, std::string column, const std::string& message)
    : std::runtime_error("row " + std::to_string(row) + ", column '" + column + "': " + message),
      row_(row),
      column_(std::move(column)) {}

std::vector<TrajectoryRow> trajectory_rows(const EpisodeResult& result) {
  std::vector<TrajectoryRow> rows;
  rows.reserve(result.samples.size());
  for (const EpisodeSample& s : result.samples) {
    const UnicycleState& u = s.state.unicycle;
    rows.push_back({s.t, s.state.s, u.position.x, u.position.y, u.orientation, s.control.linear, s.control.angular,
                    s.safety, s.prediction_radius, s.margin});
  }
  return rows;
}

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.10g", v);
  out.append(buf, static_cast<std::size_t>(n));
}

std::array<double*, 10> fields(TrajectoryRow& r) {
  return {&r.t, &r.s, &r.x, &r.y, &r.theta, &r.v, &r.omega, &r.delta_f, &r.pred_radius, &r.margin};
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string write_trajectory_csv(std::span<const TrajectoryRow> rows) {
  std::string out;
  for (std::size_t i = 0; i < kTrajectoryColumns.size(); ++i) {
    if (i > 0) out += ',';
    out += kTrajectoryColumns[i];
  }
  out += '\n';
  for (TrajectoryRow r : rows) {
    const auto f = fields(r);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i > 0) out += ',';
      append_number(out, *f[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<TrajectoryRow> parse_trajectory_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::string_view line : split(text, '\n')) lines.push_back(trim(line));
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw CsvError(1, "t", "empty file, expected a header");

  const auto header = split(lines.front(), ',');
  if (header.size() != kTrajectoryColumns.size()) {
    throw CsvError(1, std::string(header.size() < kTrajectoryColumns.size() ? kTrajectoryColumns[header.size()] : "?"),
                   "expected " + std::to_string(kTrajectoryColumns.size()) + " columns, found " +
                       std::to_string(header.size()));
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) != kTrajectoryColumns[i]) {
      throw CsvError(1, std::string(kTrajectoryColumns[i]), "unexpected header '" + std::string(header[i]) + "'");
    }
  }
  if (lines.size() < 2) throw CsvError(2, "t", "trajectory has no samples");

  std::vector<TrajectoryRow> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split(lines[li], ',');
    if (cells.size() != kTrajectoryColumns.size()) {
      throw CsvError(li + 1, std::string(kTrajectoryColumns[std::min(cells.size(), kTrajectoryColumns.size() - 1)]),
                     "expected " + std::to_string(kTrajectoryColumns.size()) + " cells, found " +
                         std::to_string(cells.size()));
    }
    TrajectoryRow row;
    const auto f = fields(row);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string_view cell = trim(cells[c]);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw CsvError(li + 1, std::string(kTrajectoryColumns[c]), "not a finite number: '" + std::string(cell) + "'");
      }
      *f[c] = value;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string write_summary(const EpisodeResult& result, std::string_view scenario_name) {
  const EpisodeSummary& s = result.summary;
  nlohmann::ordered_json doc;
  doc["scenario"] = scenario_name;
  doc["method"] = std::string(to_string(result.method));
  doc["headway_coeff"] = result.headway_coeff;
  doc["converged"] = s.converged;
  doc["collision"] = s.collision;
  doc["travel_time"] = s.travel_time;
  doc["min_margin"] = s.min_margin;
  doc["avg_speed"] = s.avg_speed;
  doc["distance_travelled"] = s.distance_travelled;
  doc["final_goal_error"] = s.final_goal_error;
  doc["peak_linear_speed"] = s.peak_linear_speed;
  doc["peak_angular_speed"] = s.peak_angular_speed;
  doc["governor_evaluations"] = s.governor_evaluations;
  doc["seconds_per_evaluation"] = s.seconds_per_evaluation;
  return doc.dump(2) + "\n";
}

std::string comparison_table(std::span<const EpisodeResult> results) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %7s %12s %12s %12s %12s %10s %9s\n", "method", "epsilon", "travel_time_s",
                "avg_speed", "min_margin", "us_per_eval", "converged", "collision");
  out << line;
  for (const EpisodeResult& r : results) {
    const EpisodeSummary& s = r.summary;
    std::snprintf(line, sizeof line, "%-12s %7.3f %12.3f %12.4f %12.4f %12.2f %10s %9s\n",
                  std::string(to_string(r.method)).c_str(), r.headway_coeff, s.travel_time, s.avg_speed, s.min_margin,
                  s.seconds_per_evaluation * 1e6, s.converged ? "yes" : "no", s.collision ? "yes" : "no");
    out << line;
  }
  return out.str();
}

}  // namespace headway
