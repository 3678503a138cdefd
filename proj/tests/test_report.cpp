#include <doctest.h>

#include <filesystem>
#include <regex>
#include <string>

#include "headway/render.hpp"
#include "headway/report.hpp"
#include "headway/scenario.hpp"

using namespace headway;

namespace {

const std::filesystem::path kScenarioDir = HEADWAY_SCENARIO_DIR;

CsvError csv_error(const std::string& text) {
  try {
    parse_trajectory_csv(text);
  } catch (const CsvError& e) {
    return e;
  }
  FAIL("CSV was accepted");
  return CsvError(0, "", "");
}

const std::string kHeader = "t,s,x,y,theta,v,omega,delta_F,pred_radius,margin\n";

std::vector<TrajectoryRow> sample_rows() {
  return {{0.0, 0.0, 2.0, 5.0, 0.0, 0.0, 0.0, 0.3, 0.0, 0.7},
          {0.1, 0.2, 2.1, 5.0, 0.01, 1.0 / 3.0, -2.5e-7, 0.29, 0.1, 0.7},
          {0.2, 0.5, 2.3, 5.1, 0.02, 0.9, 0.1, 0.28, 0.2, 0.6}};
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("CSV header and column order") {
    const std::string csv = write_trajectory_csv(sample_rows());
    CHECK(csv.substr(0, kHeader.size()) == kHeader);
    CHECK(count(csv, "\n") == 4);
  }

  TEST_CASE("CSV round trip") {
    const auto rows = sample_rows();
    const std::string csv = write_trajectory_csv(rows);
    const auto parsed = parse_trajectory_csv(csv);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(parsed[i].v == doctest::Approx(rows[i].v).epsilon(1e-9));
      CHECK(parsed[i].omega == doctest::Approx(rows[i].omega).epsilon(1e-9));
    }
    CHECK(write_trajectory_csv(parsed) == csv);
  }

  TEST_CASE("CSV diagnostics name row and column") {
    CHECK(csv_error("").row() == 1);
    CHECK(csv_error(kHeader).row() == 2);

    const CsvError bad_header = csv_error("t,s,x,y,theta,v,omega,delta_F,radius,margin\n0,0,0,0,0,0,0,0,0,0\n");
    CHECK(bad_header.row() == 1);
    CHECK(bad_header.column() == "pred_radius");

    const CsvError bad_cell = csv_error(kHeader + "0,0,0,0,0,0,0,0,0,0\n0.1,0,abc,0,0,0,0,0,0,0\n");
    CHECK(bad_cell.row() == 3);
    CHECK(bad_cell.column() == "x");
    CHECK(std::string(bad_cell.what()).find("row 3") != std::string::npos);

    const CsvError short_row = csv_error(kHeader + "0,0,0\n");
    CHECK(short_row.row() == 2);

    CHECK(csv_error(kHeader + "0,0,0,0,0,0,0,0,nan,0\n").column() == "pred_radius");
  }

  TEST_CASE("comparison table lists every episode") {
    EpisodeResult a, b;
    a.method = PredictionMethod::circle;
    b.method = PredictionMethod::forward_sim;
    a.summary.travel_time = 39.5;
    b.summary.travel_time = 17.4;
    const std::vector<EpisodeResult> results = {a, b};
    const std::string table = comparison_table(results);
    CHECK(count(table, "\n") == 3);
    CHECK(table.find("circle") != std::string::npos);
    CHECK(table.find("forward-sim") != std::string::npos);
    CHECK(table.find("39.500") != std::string::npos);
  }

  TEST_CASE("summary JSON carries the headline numbers") {
    EpisodeResult r;
    r.summary.travel_time = 12.5;
    r.summary.converged = true;
    const std::string s = write_summary(r, "office");
    CHECK(s.find("\"scenario\": \"office\"") != std::string::npos);
    CHECK(s.find("\"travel_time\": 12.5") != std::string::npos);
    CHECK(s.find("\"converged\": true") != std::string::npos);
  }
}

TEST_SUITE("render") {
  TEST_CASE("triangle snapshot renders a three-vertex polygon") {
    const Scenario scenario = load_scenario(kScenarioDir / "empty.json");
    TrajectoryLayer layer{"tri", sample_rows(), PredictionMethod::triangle, 0.5};
    layer.rows[0].s = 1.0;  // local goal ahead of the robot
    RenderSpec spec;
    spec.snapshot_times = {0.0};
    const std::string svg = render_scene(spec, {&layer, 1}, &scenario);
    const std::regex snapshot("<polygon class=\"layer-0-snapshot\" points=\"([^\"]*)\"");
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, snapshot));
    const std::string pts = m[1];
    CHECK(count(pts, ",") == 3);
    CHECK(count(pts, " ") == 2);
  }

  TEST_CASE("circle and forward-sim snapshots") {
    const Scenario scenario = load_scenario(kScenarioDir / "empty.json");
    TrajectoryLayer circle{"c", sample_rows(), PredictionMethod::circle, 0.5};
    TrajectoryLayer fs{"f", sample_rows(), PredictionMethod::forward_sim, 0.5};
    circle.rows[0].s = fs.rows[0].s = 1.0;
    const std::vector<TrajectoryLayer> layers = {circle, fs};
    const std::string svg = render_scene(RenderSpec{}, layers, &scenario);
    CHECK(count(svg, "<circle class=\"layer-0-snapshot\"") == 1);
    CHECK(count(svg, "<polyline class=\"layer-1-snapshot\"") == 2);
  }

  TEST_CASE("two-method overlay uses two stroke classes") {
    const std::vector<TrajectoryLayer> layers = {{"triangle", sample_rows(), PredictionMethod::triangle, 0.5},
                                                 {"circle", sample_rows(), PredictionMethod::circle, 0.5}};
    const std::string svg = render_scene(RenderSpec{}, layers, nullptr);
    CHECK(count(svg, "<polyline class=\"layer-0\"") == 1);
    CHECK(count(svg, "<polyline class=\"layer-1\"") == 1);
    CHECK(svg.find(".layer-0 { fill: none; stroke: #1f77b4") != std::string::npos);
    CHECK(svg.find(".layer-1 { fill: none; stroke: #d62728") != std::string::npos);
  }

  TEST_CASE("layer toggles") {
    const Scenario scenario = load_scenario(kScenarioDir / "empty.json");
    const TrajectoryLayer layer{"tri", sample_rows(), PredictionMethod::triangle, 0.5};
    RenderSpec spec;
    spec.show_path = false;
    spec.show_snapshots = false;
    spec.show_speed_bars = false;
    const std::string svg = render_scene(spec, {&layer, 1}, &scenario);
    CHECK(svg.find("reference-path") == std::string::npos);
    CHECK(svg.find("snapshots") == std::string::npos);
    CHECK(svg.find("speed-bars") == std::string::npos);
    CHECK(svg.find("<g id=\"trajectories\">") != std::string::npos);
  }

  TEST_CASE("rendering is deterministic") {
    const Scenario scenario = load_scenario(kScenarioDir / "office.json");
    const TrajectoryLayer layer{"tri", sample_rows(), PredictionMethod::triangle, 0.5};
    CHECK(render_scene(RenderSpec{}, {&layer, 1}, &scenario) == render_scene(RenderSpec{}, {&layer, 1}, &scenario));
    CHECK(render_speed_profile(RenderSpec{}, {&layer, 1}) == render_speed_profile(RenderSpec{}, {&layer, 1}));
  }

  TEST_CASE("empty input is an error") {
    const TrajectoryLayer empty{"none", {}, std::nullopt, std::nullopt};
    CHECK_THROWS_AS(render_scene(RenderSpec{}, {&empty, 1}, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(render_scene(RenderSpec{}, {}, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(render_speed_profile(RenderSpec{}, {&empty, 1}), std::invalid_argument);
  }

  TEST_CASE("RenderSpec validation") {
    RenderSpec spec;
    spec.width = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = RenderSpec{};
    spec.snapshot_times = {-1.0};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  }
}
