#include "headway/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "headway/detail/overloaded.hpp"

namespace headway {

void RenderSpec::validate() const {
  if (width <= 0 || height <= 0) throw std::invalid_argument("render canvas size must be positive");
  if (!(path_stroke > 0.0) || !(trajectory_stroke > 0.0) || !(snapshot_stroke > 0.0)) {
    throw std::invalid_argument("render stroke widths must be positive");
  }
  if (!(speed_bar_interval > 0.0) || !(speed_bar_scale > 0.0)) {
    throw std::invalid_argument("speed bar interval and scale must be positive");
  }
  for (double t : snapshot_times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("snapshot times must be finite and >= 0");
  }
}

namespace {

constexpr double kMarginPx = 20.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void check_layers(std::span<const TrajectoryLayer> layers) {
  if (layers.empty()) throw std::invalid_argument("nothing to render: no trajectory given");
  for (const TrajectoryLayer& layer : layers) {
    if (layer.rows.empty()) throw std::invalid_argument("trajectory '" + layer.label + "' has no samples");
  }
}

// World-to-canvas map with equal axis scaling and the y axis pointing up.
class Viewport {
 public:
  Viewport(const RenderSpec& spec, Box world) : height_(spec.height), lo_(world.lo) {
    const double w = std::max(world.hi.x - world.lo.x, 1e-9);
    const double h = std::max(world.hi.y - world.lo.y, 1e-9);
    scale_ = std::min((spec.width - 2.0 * kMarginPx) / w, (spec.height - 2.0 * kMarginPx) / h);
    scale_ = std::max(scale_, 1e-9);
  }

  double x(double wx) const { return kMarginPx + (wx - lo_.x) * scale_; }
  double y(double wy) const { return height_ - kMarginPx - (wy - lo_.y) * scale_; }
  double length(double meters) const { return meters * scale_; }

  std::string point(Vec2 p) const { return px(x(p.x)) + "," + px(y(p.y)); }

  std::string points(std::span<const Vec2> ps) const {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i > 0) out += ' ';
      out += point(ps[i]);
    }
    return out;
  }

 private:
  double height_;
  Vec2 lo_;
  double scale_ = 1.0;
};

Box world_box(std::span<const TrajectoryLayer> layers, const Scenario* scenario) {
  if (scenario != nullptr) return scenario->environment.workspace().bounds();
  std::vector<Vec2> pts;
  for (const TrajectoryLayer& layer : layers) {
    for (const TrajectoryRow& r : layer.rows) pts.push_back({r.x, r.y});
  }
  Box b = bounding_box(pts);
  const double pad = 0.05 * std::max({b.hi.x - b.lo.x, b.hi.y - b.lo.y, 1.0});
  return {b.lo - Vec2{pad, pad}, b.hi + Vec2{pad, pad}};
}

std::string style_block(std::size_t n_layers, const RenderSpec& spec) {
  std::string out = "<style>\n";
  out += "  .workspace { fill: #ffffff; stroke: #000000; stroke-width: 1.5; }\n";
  out += "  .obstacle { fill: #7f7f7f; stroke: #000000; stroke-width: 1; }\n";
  out += "  .path { fill: none; stroke: #000000; stroke-dasharray: 6 4; stroke-width: " + px(spec.path_stroke) +
         "; }\n";
  for (std::size_t i = 0; i < n_layers; ++i) {
    const std::string c = kPalette[i % kPaletteSize];
    const std::string k = "layer-" + std::to_string(i);
    out += "  ." + k + " { fill: none; stroke: " + c + "; stroke-width: " + px(spec.trajectory_stroke) + "; }\n";
    out += "  ." + k + "-snapshot { fill: " + c + "; fill-opacity: 0.15; stroke: " + c +
           "; stroke-width: " + px(spec.snapshot_stroke) + "; }\n";
    out += "  ." + k + "-bar { stroke: " + c + "; stroke-opacity: 0.6; stroke-width: 1; }\n";
  }
  out += "  text { font-family: sans-serif; font-size: 12px; }\n";
  out += "</style>\n";
  return out;
}

std::string svg_open(const RenderSpec& spec) {
  const std::string w = std::to_string(spec.width), h = std::to_string(spec.height);
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w +
         " " + h + "\">\n";
}

std::string legend(const RenderSpec& spec, std::span<const TrajectoryLayer> layers) {
  std::string out;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const double y = kMarginPx + 14.0 * static_cast<double>(i);
    out += "<text class=\"legend layer-" + std::to_string(i) + "-label\" x=\"" + px(spec.width - kMarginPx - 4.0) +
           "\" y=\"" + px(y + 10.0) + "\" text-anchor=\"end\" fill=\"" + kPalette[i % kPaletteSize] + "\">" + escape_xml(layers[i].label) +
           "</text>\n";
  }
  return out;
}

const TrajectoryRow& row_at(const std::vector<TrajectoryRow>& rows, double t) {
  const auto it = std::lower_bound(rows.begin(), rows.end(), t,
                                   [](const TrajectoryRow& r, double value) { return r.t < value; });
  return it == rows.end() ? rows.back() : *it;
}

std::string snapshot_element(const PredictionSet& set, const Viewport& view, const std::string& cls) {
  return std::visit(
      detail::Overloaded{
          [&](const Disk& d) {
            return "<circle class=\"" + cls + "\" cx=\"" + px(view.x(d.center.x)) + "\" cy=\"" +
                   px(view.y(d.center.y)) + "\" r=\"" + px(view.length(d.radius)) + "\"/>\n";
          },
          [&](const Triangle& t) {
            const auto v = t.vertices();
            return "<polygon class=\"" + cls + "\" points=\"" + view.points(v) + "\"/>\n";
          },
          [&](const SampledHull& h) {
            // The padded polyline is drawn as a wide round-capped stroke under
            // the centre line.
            const std::string pts = view.points(h.points);
            return "<polyline class=\"" + cls + "\" points=\"" + pts +
                   "\" style=\"fill: none; stroke-opacity: 0.15; stroke-linecap: round; stroke-linejoin: round; "
                   "stroke-width: " +
                   px(std::max(2.0 * view.length(h.padding), 1.0)) + "\"/>\n" + "<polyline class=\"" + cls +
                   "\" points=\"" + pts + "\" style=\"fill: none\"/>\n";
          },
      },
      set);
}

}  // namespace

std::string render_scene(const RenderSpec& spec, std::span<const TrajectoryLayer> layers, const Scenario* scenario) {
  spec.validate();
  check_layers(layers);
  const Viewport view(spec, world_box(layers, scenario));

  std::string out = svg_open(spec);
  out += style_block(layers.size(), spec);

  if (scenario != nullptr) {
    const Environment& env = scenario->environment;
    out += "<g id=\"environment\">\n";
    out += "<polygon class=\"workspace\" points=\"" + view.points(env.workspace().vertices()) + "\"/>\n";
    for (const Polygon& o : env.obstacles()) {
      out += "<polygon class=\"obstacle\" points=\"" + view.points(o.vertices()) + "\"/>\n";
    }
    out += "</g>\n";
    if (spec.show_path) {
      out += "<polyline id=\"reference-path\" class=\"path\" points=\"" + view.points(scenario->path.waypoints()) +
             "\"/>\n";
    }
  }

  if (spec.show_snapshots && scenario != nullptr) {
    out += "<g id=\"snapshots\">\n";
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const TrajectoryLayer& layer = layers[i];
      if (!layer.method) continue;
      ControllerParams params = scenario->controller;
      if (layer.headway_coeff) params = ControllerParams(*layer.headway_coeff, params.ref_gain, params.goal_tolerance);
      for (double t : spec.snapshot_times) {
        const TrajectoryRow& r = row_at(layer.rows, t);
        const UnicycleState state({r.x, r.y}, r.theta);
        const Vec2 goal = scenario->path.eval(r.s);
        const PredictionSet set = predict(*layer.method, state, goal, params, scenario->sim.prediction);
        out += snapshot_element(set, view, "layer-" + std::to_string(i) + "-snapshot");
      }
    }
    out += "</g>\n";
  }

  if (spec.show_speed_bars) {
    out += "<g id=\"speed-bars\">\n";
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const std::string cls = "layer-" + std::to_string(i) + "-bar";
      double next = 0.0;
      for (const TrajectoryRow& r : layers[i].rows) {
        if (r.t + 1e-9 < next) continue;
        next = r.t + spec.speed_bar_interval;
        const Vec2 base{r.x, r.y};
        const Vec2 tip = base + heading_normal(r.theta) * (spec.speed_bar_scale * r.v);
        out += "<line class=\"" + cls + "\" x1=\"" + px(view.x(base.x)) + "\" y1=\"" + px(view.y(base.y)) +
               "\" x2=\"" + px(view.x(tip.x)) + "\" y2=\"" + px(view.y(tip.y)) + "\"/>\n";
      }
    }
    out += "</g>\n";
  }

  if (spec.show_trajectory) {
    out += "<g id=\"trajectories\">\n";
    for (std::size_t i = 0; i < layers.size(); ++i) {
      std::vector<Vec2> pts;
      pts.reserve(layers[i].rows.size());
      for (const TrajectoryRow& r : layers[i].rows) pts.push_back({r.x, r.y});
      out += "<polyline class=\"layer-" + std::to_string(i) + "\" data-label=\"" + escape_xml(layers[i].label) +
             "\" points=\"" + view.points(pts) + "\"/>\n";
    }
    out += "</g>\n";
  }

  out += legend(spec, layers);
  out += "</svg>\n";
  return out;
}

std::string render_speed_profile(const RenderSpec& spec, std::span<const TrajectoryLayer> layers) {
  spec.validate();
  check_layers(layers);

  double t_max = 0.0, v_min = 0.0, v_max = 0.0;
  for (const TrajectoryLayer& layer : layers) {
    for (const TrajectoryRow& r : layer.rows) {
      t_max = std::max(t_max, r.t);
      v_min = std::min(v_min, r.v);
      v_max = std::max(v_max, r.v);
    }
  }
  if (!(t_max > 0.0)) t_max = 1.0;
  if (!(v_max > v_min)) v_max = v_min + 1.0;

  const double left = 3.0 * kMarginPx, right = spec.width - kMarginPx;
  const double top = kMarginPx, bottom = spec.height - 2.0 * kMarginPx;
  auto sx = [&](double t) { return left + (right - left) * t / t_max; };
  auto sy = [&](double v) { return bottom - (bottom - top) * (v - v_min) / (v_max - v_min); };

  std::string out = svg_open(spec);
  out += style_block(layers.size(), spec);
  out += "<g id=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + px(left) + "\" y1=\"" + px(bottom) + "\" x2=\"" + px(right) + "\" y2=\"" + px(bottom) +
         "\"/>\n";
  out += "<line x1=\"" + px(left) + "\" y1=\"" + px(top) + "\" x2=\"" + px(left) + "\" y2=\"" + px(bottom) +
         "\"/>\n";
  out += "</g>\n";
  out += "<text x=\"" + px(right) + "\" y=\"" + px(bottom + 16.0) + "\" text-anchor=\"end\">t = " +
         fmt("%.2f", t_max) + " s</text>\n";
  out += "<text x=\"" + px(left - 4.0) + "\" y=\"" + px(top + 10.0) + "\" text-anchor=\"end\">" +
         fmt("%.2f", v_max) + "</text>\n";
  out += "<text x=\"" + px(left - 4.0) + "\" y=\"" + px(bottom) + "\" text-anchor=\"end\">" + fmt("%.2f", v_min) +
         "</text>\n";
  out += "<text x=\"" + px(left) + "\" y=\"" + px(bottom + 16.0) + "\">v [m/s] over t [s]</text>\n";

  out += "<g id=\"speed-profiles\">\n";
  for (std::size_t i = 0; i < layers.size(); ++i) {
    std::string pts;
    for (std::size_t k = 0; k < layers[i].rows.size(); ++k) {
      const TrajectoryRow& r = layers[i].rows[k];
      if (k > 0) pts += ' ';
      pts += px(sx(r.t)) + "," + px(sy(r.v));
    }
    out += "<polyline class=\"layer-" + std::to_string(i) + "\" data-label=\"" + escape_xml(layers[i].label) +
           "\" points=\"" + pts + "\"/>\n";
  }
  out += "</g>\n";
  out += legend(spec, layers);
  out += "</svg>\n";
  return out;
}

}  // namespace headway
