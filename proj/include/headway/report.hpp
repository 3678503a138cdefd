#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "headway/simulation.hpp"

namespace headway {

/// Column order of trajectory CSV files.
inline constexpr std::array<std::string_view, 10> kTrajectoryColumns = {
    "t", "s", "x", "y", "theta", "v", "omega", "delta_F", "pred_radius", "margin"};

struct TrajectoryRow {
  double t = 0.0;
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double v = 0.0;
  double omega = 0.0;
  double delta_f = 0.0;
  double pred_radius = 0.0;
  double margin = 0.0;

  bool operator==(const TrajectoryRow&) const = default;
};

/// Malformed trajectory CSV; the message names the row (1-based, header is
/// row 1) and the column.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t row, std::string column, const std::string& message);

  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

std::vector<TrajectoryRow> trajectory_rows(const EpisodeResult& result);

std::string write_trajectory_csv(std::span<const TrajectoryRow> rows);
std::vector<TrajectoryRow> parse_trajectory_csv(std::string_view text);

/// JSON summary block of one episode.
std::string write_summary(const EpisodeResult& result, std::string_view scenario_name);

/// Fixed-width comparison table, one line per episode.
std::string comparison_table(std::span<const EpisodeResult> results);

}  // namespace headway
