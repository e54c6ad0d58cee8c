#pragma once

// Static SVG 1.1 charts for the benchmark summary: cost-ratio histograms
// per precedence direction and box plots of cost/time ratios.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mpdtsp/bench.hpp"
#include "mpdtsp/instance_io.hpp"

namespace mpdtsp {

namespace detail {

inline std::string fmt(double v, int precision = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Panel {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;
};

inline std::string svg_open(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt(width, 0) + "\" height=\"" + fmt(height, 0) + "\" viewBox=\"0 0 " + fmt(width, 0) + ' ' + fmt(height, 0) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

inline std::string text(double x, double y, std::string_view s, const char* anchor = "middle") {
  return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + anchor + "\">" + xml_escape(s) + "</text>\n";
}

inline std::string line(double x1, double y1, double x2, double y2, const char* stroke = "black") {
  return "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" + fmt(y2) + "\" stroke=\"" +
         stroke + "\"/>\n";
}

inline std::string histogram_panel(const Panel& p, const Histogram& h, std::string_view title, std::string_view xlabel) {
  std::string out = text(p.x + p.w / 2, p.y - 8, title);
  out += line(p.x, p.y + p.h, p.x + p.w, p.y + p.h);
  out += line(p.x, p.y, p.x, p.y + p.h);
  out += text(p.x + p.w / 2, p.y + p.h + 30, xlabel);
  if (h.buckets.empty()) return out + text(p.x + p.w / 2, p.y + p.h / 2, "no data");

  const long lo = h.buckets.front().index;
  const long hi = h.buckets.back().index;
  const auto span = static_cast<double>(hi - lo + 1);
  std::size_t peak = 0;
  for (const auto& b : h.buckets) peak = std::max(peak, b.count);
  const double bar_w = p.w / span;
  for (const auto& b : h.buckets) {
    const double bh = p.h * static_cast<double>(b.count) / static_cast<double>(peak);
    const double bx = p.x + static_cast<double>(b.index - lo) * bar_w;
    out += "<rect x=\"" + fmt(bx) + "\" y=\"" + fmt(p.y + p.h - bh) + "\" width=\"" + fmt(bar_w) + "\" height=\"" +
           fmt(bh) + "\" fill=\"steelblue\" stroke=\"white\"><title>[" + fmt(b.lower) + ", " + fmt(b.lower + h.width) +
           "): " + std::to_string(b.count) + "</title></rect>\n";
  }
  out += text(p.x, p.y + p.h + 14, fmt(static_cast<double>(lo) * h.width));
  out += text(p.x + p.w, p.y + p.h + 14, fmt(static_cast<double>(hi + 1) * h.width));
  out += text(p.x - 4, p.y + 4, std::to_string(peak), "end");
  out += text(p.x - 4, p.y + p.h, "0", "end");
  return out;
}

inline std::string boxplot_panel(const Panel& p, const std::map<int, Quartiles>& groups, std::string_view title,
                                 std::string_view xlabel, std::string_view ylabel) {
  std::string out = text(p.x + p.w / 2, p.y - 8, title);
  out += line(p.x, p.y + p.h, p.x + p.w, p.y + p.h);
  out += line(p.x, p.y, p.x, p.y + p.h);
  out += text(p.x + p.w / 2, p.y + p.h + 30, xlabel);
  out += "<text x=\"" + fmt(p.x - 40) + "\" y=\"" + fmt(p.y + p.h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 " +
         fmt(p.x - 40) + ' ' + fmt(p.y + p.h / 2) + ")\">" + xml_escape(ylabel) + "</text>\n";
  if (groups.empty()) return out + text(p.x + p.w / 2, p.y + p.h / 2, "no data");

  double ymin = groups.begin()->second.min;
  double ymax = groups.begin()->second.max;
  for (const auto& [k, q] : groups) {
    ymin = std::min(ymin, q.min);
    ymax = std::max(ymax, q.max);
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  auto to_y = [&](double v) { return p.y + p.h - (v - ymin) / (ymax - ymin) * p.h; };
  const double slot = p.w / static_cast<double>(groups.size());
  std::size_t k = 0;
  for (const auto& [label, q] : groups) {
    const double cx = p.x + slot * (static_cast<double>(k) + 0.5);
    const double bw = std::min(30.0, slot * 0.6);
    out += line(cx, to_y(q.min), cx, to_y(q.q1));
    out += line(cx, to_y(q.q3), cx, to_y(q.max));
    out += "<rect x=\"" + fmt(cx - bw / 2) + "\" y=\"" + fmt(to_y(q.q3)) + "\" width=\"" + fmt(bw) + "\" height=\"" +
           fmt(std::max(0.0, to_y(q.q1) - to_y(q.q3))) + "\" fill=\"lightsteelblue\" stroke=\"black\"/>\n";
    out += line(cx - bw / 2, to_y(q.median), cx + bw / 2, to_y(q.median), "darkred");
    out += text(cx, p.y + p.h + 14, std::to_string(label));
    ++k;
  }
  out += text(p.x - 4, p.y + 4, fmt(ymax), "end");
  out += text(p.x - 4, p.y + p.h, fmt(ymin), "end");
  return out;
}

}  // namespace detail

// One histogram panel of CIH/NNH cost ratios per precedence direction.
inline std::string svg_ratio_histogram(const Summary& summary) {
  const double panel_h = 180;
  const double height = 60 + static_cast<double>(std::max<std::size_t>(1, summary.by_direction.size())) * (panel_h + 70);
  std::string out = detail::svg_open(640, height);
  double y = 40;
  for (const auto& ds : summary.by_direction) {
    const std::string title = "CIH / NNH tour cost, " + to_string(ds.direction) + " (NNH <= CIH in " +
                              detail::fmt(100.0 * ds.nnh_win_fraction, 1) + "% of " + std::to_string(ds.pairs) + ")";
    out += detail::histogram_panel({70, y, 540, panel_h}, ds.cost_ratio, title, "cost ratio (bucket width 0.02)");
    y += panel_h + 70;
  }
  if (summary.by_direction.empty()) out += detail::text(320, 80, "no data");
  return out + "</svg>\n";
}

inline std::string svg_cost_ratio_boxplot(const Summary& summary) {
  std::string out = detail::svg_open(640, 320);
  out += detail::boxplot_panel({80, 40, 530, 220}, summary.cost_ratio_by_capacity, "CIH / NNH tour cost by capacity",
                               "Q (items)", "cost ratio");
  return out + "</svg>\n";
}

inline std::string svg_time_ratio_boxplot(const Summary& summary) {
  std::string out = detail::svg_open(640, 320);
  out += detail::boxplot_panel({80, 40, 530, 220}, summary.time_ratio_by_node_count,
                               "CIH / NNH computation time by instance size", "nodes", "time ratio");
  return out + "</svg>\n";
}

// Histogram of per-start tour costs, as produced by a multi-start run.
inline std::string svg_cost_histogram(std::span<const double> costs, std::string_view title, double bucket_width) {
  std::string out = detail::svg_open(640, 300);
  out += detail::histogram_panel({70, 40, 540, 200}, histogram(costs, bucket_width), title, "tour cost");
  return out + "</svg>\n";
}

inline void emit_svg_histogram(const Summary& summary, const std::filesystem::path& path) {
  write_text_file(path, svg_ratio_histogram(summary));
}

inline void emit_svg_boxplots(const Summary& summary, const std::filesystem::path& cost_path,
                              const std::filesystem::path& time_path) {
  write_text_file(cost_path, svg_cost_ratio_boxplot(summary));
  write_text_file(time_path, svg_time_ratio_boxplot(summary));
}

}  // namespace mpdtsp
