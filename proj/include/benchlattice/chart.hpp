// Copyright 2026 The BenchLattice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Radar charts of benches and configurations as SVG 1.1 text.
//
// One spoke per leaf dimension, evenly spaced, starting at 12 o'clock and
// running clockwise. Stage rings sit at style.stage_radii (1 = simulated,
// 2 = emulated, 3 = real). Elements sharing a leaf and a stage are fanned
// tangentially around their spoke by multiples of style.offset_step.
//
// Document structure (ids are stable):
//   <g id="stages">             rings and their 1/2/3 labels
//   <g id="spoke-<leaf id>">    one per leaf: axis line and display name
//   <g id="elements">           one <circle class="element ..."> per dot
//   <g id="composition">        configuration charts only: one <polygon>

#ifndef BENCHLATTICE_CHART_HPP_
#define BENCHLATTICE_CHART_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "benchlattice/configuration.hpp"
#include "benchlattice/error.hpp"
#include "benchlattice/taxonomy.hpp"

namespace benchlattice {

struct ChartStyle {
  double size = 640.0;                               // square viewport, px
  std::array<double, 3> stage_radii{0.25, 0.5, 0.75};  // fraction of size / 2
  std::string element_color = "blue";
  double element_radius = 5.0;
  std::string composition_color = "orange";
  double composition_width = 2.5;
  double offset_step = 4.0;  // degrees
  bool omit_unselected = false;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct ElementDot {
  std::string element;
  std::size_t leaf = 0;
  Stage stage = Stage::kSimulated;
  double angle = 0.0;   // degrees clockwise from 12 o'clock
  double radius = 0.0;  // px
  Point position;
};

struct ChartLayout {
  Point center;
  std::vector<double> spoke_angles;  // degrees, one per leaf
  std::vector<double> ring_radii;    // px, indexed by chart_index - 1
  std::vector<ElementDot> dots;      // bench element order
};

inline void validate_style(const ChartStyle& style) {
  std::vector<Diagnostic> diagnostics;
  if (!(style.size > 0.0)) diagnostics.push_back({Errc::kInvalidStyle, "size", "must be > 0"});
  const auto& r = style.stage_radii;
  if (!(r[0] > 0.0 && r[0] < r[1] && r[1] < r[2])) {
    diagnostics.push_back({Errc::kInvalidStyle, "stage_radii", "must be positive and increasing"});
  }
  if (!(r[2] * style.size / 2.0 + style.element_radius <= style.size / 2.0)) {
    diagnostics.push_back({Errc::kInvalidStyle, "stage_radii", "outer ring leaves the viewport"});
  }
  if (!(style.offset_step > 0.0)) {
    diagnostics.push_back({Errc::kInvalidStyle, "offset_step", "must be > 0"});
  }
  if (!(style.element_radius > 0.0)) {
    diagnostics.push_back({Errc::kInvalidStyle, "element_radius", "must be > 0"});
  }
  if (!diagnostics.empty()) throw Error(Errc::kInvalidStyle, "chart style", std::move(diagnostics));
}

/// Position of a polar coordinate measured clockwise from 12 o'clock.
inline Point polar(Point center, double radius, double angle_deg) {
  const double a = angle_deg * std::numbers::pi / 180.0;
  return {center.x + radius * std::sin(a), center.y - radius * std::cos(a)};
}

/// Tangential offset of the j-th of k co-located dots: 0, +s, -s, +2s, ...
/// for odd k and +s, -s, +2s, -2s, ... for even k, so the fan is symmetric.
inline double fan_offset(std::size_t j, std::size_t k, double step) {
  const std::size_t m = j + (k % 2 == 0 ? 1 : 0);
  const double magnitude = static_cast<double>((m + 1) / 2) * step;
  return m % 2 == 1 ? magnitude : -magnitude;
}

inline ChartLayout layout_chart(const TestBench& bench, const ChartStyle& style) {
  validate_style(style);
  ChartLayout layout;
  const double half = style.size / 2.0;
  layout.center = {half, half};
  for (double f : style.stage_radii) layout.ring_radii.push_back(f * half);

  const std::size_t n = bench.leaves().size();
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    layout.spoke_angles.push_back(360.0 * static_cast<double>(leaf) / static_cast<double>(n));
  }
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    const auto elements = bench.elements_of(leaf);
    for (Stage stage : kAllStages) {
      std::vector<const Element*> group;
      for (const auto& e : elements) {
        if (e.stage == stage) group.push_back(&e);
      }
      for (std::size_t j = 0; j < group.size(); ++j) {
        ElementDot dot;
        dot.element = group[j]->id;
        dot.leaf = leaf;
        dot.stage = stage;
        dot.angle = layout.spoke_angles[leaf] + fan_offset(j, group.size(), style.offset_step);
        dot.radius = layout.ring_radii[static_cast<std::size_t>(chart_index(stage) - 1)];
        dot.position = polar(layout.center, dot.radius, dot.angle);
        layout.dots.push_back(std::move(dot));
      }
    }
  }
  // Report dots in bench element order rather than stage-grouped order.
  std::vector<ElementDot> ordered;
  for (const auto& e : bench.elements()) {
    for (auto& d : layout.dots) {
      if (d.element == e.id) ordered.push_back(d);
    }
  }
  layout.dots = std::move(ordered);
  return layout;
}

/// Vertices of the composition polygon: the selected dot per leaf, or the
/// centroid of the selected dots on a combinable leaf with several.
inline std::vector<Point> composition_vertices(const TestBenchConfiguration& config,
                                               const TestBench& bench, const ChartLayout& layout) {
  require_configuration_of(config, bench);
  std::vector<Point> vertices;
  for (std::size_t leaf = 0; leaf < bench.leaves().size(); ++leaf) {
    Point sum;
    std::size_t count = 0;
    for (const auto& id : config.selection[leaf].element_ids) {
      for (const auto& d : layout.dots) {
        if (d.element == id) {
          sum.x += d.position.x;
          sum.y += d.position.y;
          ++count;
        }
      }
    }
    vertices.push_back({sum.x / static_cast<double>(count), sum.y / static_cast<double>(count)});
  }
  return vertices;
}

namespace detail {

inline std::string fmt(double v) {
  if (std::fabs(v) < 0.005) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string render(const TestBench& bench, const ChartStyle& style,
                          const TestBenchConfiguration* config) {
  const ChartLayout layout = layout_chart(bench, style);
  const Point c = layout.center;
  const double half = style.size / 2.0;
  const double axis_end = std::min(half - 2.0, layout.ring_radii[2] + 0.08 * half);
  const double label_radius = std::min(half - 4.0, layout.ring_radii[2] + 0.16 * half);

  std::set<std::string> selected;
  if (config != nullptr) {
    for (const auto& sel : config->selection) selected.insert(sel.element_ids.begin(), sel.element_ids.end());
  }

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(style.size) +
         "\" height=\"" + fmt(style.size) + "\" viewBox=\"0 0 " + fmt(style.size) + " " +
         fmt(style.size) + "\">\n";
  svg += "  <title>" + xml_escape(bench.display_name().empty() ? bench.id() : bench.display_name()) +
         "</title>\n";
  svg += "  <defs>\n    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
         "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\n"
         "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"black\"/>\n    </marker>\n  </defs>\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + fmt(style.size) + "\" height=\"" + fmt(style.size) +
         "\" fill=\"white\"/>\n";

  svg += "  <g id=\"stages\" fill=\"none\" stroke=\"#b0b0b0\">\n";
  for (Stage stage : kAllStages) {
    const int index = chart_index(stage);
    const double r = layout.ring_radii[static_cast<std::size_t>(index - 1)];
    svg += "    <circle class=\"stage-ring\" data-stage=\"" + std::to_string(index) + "\" cx=\"" +
           fmt(c.x) + "\" cy=\"" + fmt(c.y) + "\" r=\"" + fmt(r) + "\"/>\n";
    svg += "    <text class=\"stage-label\" x=\"" + fmt(c.x + 4.0) + "\" y=\"" + fmt(c.y - r - 3.0) +
           "\" fill=\"#606060\" stroke=\"none\" font-size=\"11\">" + std::to_string(index) +
           "</text>\n";
  }
  svg += "  </g>\n";

  for (std::size_t leaf = 0; leaf < bench.leaves().size(); ++leaf) {
    const auto& node = bench.leaves()[leaf];
    const double angle = layout.spoke_angles[leaf];
    const Point end = polar(c, axis_end, angle);
    const Point label = polar(c, label_radius, angle);
    const double sx = std::sin(angle * std::numbers::pi / 180.0);
    const char* anchor = sx > 0.2 ? "start" : (sx < -0.2 ? "end" : "middle");
    svg += "  <g id=\"spoke-" + xml_escape(node.id) + "\" class=\"spoke\" data-dimension=\"" +
           xml_escape(node.id) + "\">\n";
    svg += "    <line x1=\"" + fmt(c.x) + "\" y1=\"" + fmt(c.y) + "\" x2=\"" + fmt(end.x) +
           "\" y2=\"" + fmt(end.y) + "\" stroke=\"black\" marker-end=\"url(#arrow)\"/>\n";
    svg += "    <text x=\"" + fmt(label.x) + "\" y=\"" + fmt(label.y) + "\" text-anchor=\"" +
           anchor + "\" dominant-baseline=\"middle\" font-size=\"12\">" +
           xml_escape(node.display_name) + "</text>\n";
    svg += "  </g>\n";
  }

  svg += "  <g id=\"elements\">\n";
  for (const auto& d : layout.dots) {
    const bool is_selected = selected.contains(d.element);
    if (config != nullptr && style.omit_unselected && !is_selected) continue;
    svg += "    <circle class=\"element";
    if (is_selected) svg += " selected";
    svg += "\" data-element=\"" + xml_escape(d.element) + "\" data-dimension=\"" +
           xml_escape(bench.leaves()[d.leaf].id) + "\" data-stage=\"" +
           std::string(to_string(d.stage)) + "\" cx=\"" + fmt(d.position.x) + "\" cy=\"" +
           fmt(d.position.y) + "\" r=\"" + fmt(style.element_radius) + "\" fill=\"" +
           xml_escape(style.element_color) + "\"";
    if (is_selected) {
      svg += " stroke=\"" + xml_escape(style.composition_color) + "\" stroke-width=\"2\"";
    }
    svg += "/>\n";
  }
  svg += "  </g>\n";

  if (config != nullptr) {
    std::string points;
    for (const auto& p : composition_vertices(*config, bench, layout)) {
      if (!points.empty()) points += ' ';
      points += fmt(p.x) + "," + fmt(p.y);
    }
    svg += "  <g id=\"composition\">\n";
    svg += "    <polygon points=\"" + points + "\" fill=\"none\" stroke=\"" +
           xml_escape(style.composition_color) + "\" stroke-width=\"" +
           fmt(style.composition_width) + "\" stroke-linejoin=\"round\"/>\n";
    svg += "  </g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace detail

/// Radar chart of every element a bench provides.
inline std::string render_bench_chart(const TestBench& bench, const ChartStyle& style = {}) {
  return detail::render(bench, style, nullptr);
}

/// Bench chart plus the closed composition polygon of one configuration.
inline std::string render_configuration_chart(const TestBenchConfiguration& config,
                                              const TestBench& bench,
                                              const ChartStyle& style = {}) {
  require_configuration_of(config, bench);
  return detail::render(bench, style, &config);
}

}  // namespace benchlattice

#endif  // BENCHLATTICE_CHART_HPP_
