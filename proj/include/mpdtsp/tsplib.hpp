#pragma once

// Reader for TSPLIB point clouds (EUC_2D only) and the two distance
// conventions used on them.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mpdtsp/detail/text.hpp"
#include "mpdtsp/error.hpp"

namespace mpdtsp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class MetricMode { TsplibRounded, ExactEuclidean, ExplicitMatrix };

struct IndexedPoint {
  int index = 0;  // node id as written in the file
  Point point;

  friend bool operator==(const IndexedPoint&, const IndexedPoint&) = default;
};

struct PointCloud {
  std::string name;
  std::vector<IndexedPoint> points;
  int declared_dimension = 0;
};

inline double euclidean(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// TSPLIB's nint(): round half up.
inline double tsplib_distance(Point a, Point b, MetricMode mode) {
  const double d = euclidean(a, b);
  if (mode == MetricMode::TsplibRounded) return std::floor(d + 0.5);
  return d;
}

namespace detail {

struct HeaderLine {
  std::string keyword;
  std::string value;
};

// "KEY : VALUE", "KEY: VALUE" and bare "KEY" (section markers).
inline HeaderLine split_header(std::string_view line) {
  line = trim(line);
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) {
    const auto fields = split_ws(line);
    HeaderLine h{upper(fields.empty() ? std::string_view{} : fields.front()), {}};
    if (fields.size() > 1) h.value = std::string(trim(line.substr(fields.front().size())));
    return h;
  }
  return {upper(trim(line.substr(0, colon))), std::string(trim(line.substr(colon + 1)))};
}

}  // namespace detail

inline PointCloud parse_tsplib(std::string_view text) {
  PointCloud cloud;
  std::optional<int> dimension;
  int dimension_line = 0;
  std::optional<std::string> weight_type;
  int coord_section_line = 0;
  bool saw_coord_section = false;

  const auto lines = detail::split_lines(text);
  std::size_t i = 0;
  while (i < lines.size()) {
    const int line_no = static_cast<int>(i) + 1;
    const auto raw = detail::trim(lines[i]);
    ++i;
    if (raw.empty()) continue;
    const auto h = detail::split_header(raw);

    if (h.keyword == "EOF") break;
    if (h.keyword == "NAME") {
      cloud.name = h.value;
    } else if (h.keyword == "COMMENT") {
      // ignored
    } else if (h.keyword == "TYPE") {
      if (detail::upper(h.value) != "TSP") {
        throw ParseError("TYPE", line_no, "unsupported problem type '" + h.value + "'");
      }
    } else if (h.keyword == "DIMENSION") {
      const auto v = detail::to_integer(h.value);
      if (!v || *v < 0) throw ParseError("DIMENSION", line_no, "expected a nonnegative integer");
      dimension = static_cast<int>(*v);
      dimension_line = line_no;
    } else if (h.keyword == "EDGE_WEIGHT_TYPE") {
      const auto type = detail::upper(h.value);
      if (type != "EUC_2D") {
        throw ParseError("EDGE_WEIGHT_TYPE", line_no, "unsupported edge weight type '" + h.value + "'");
      }
      weight_type = type;
    } else if (h.keyword == "NODE_COORD_TYPE") {
      if (detail::upper(h.value) != "TWOD_COORDS") {
        throw ParseError("NODE_COORD_TYPE", line_no, "only TWOD_COORDS is supported");
      }
    } else if (h.keyword == "DISPLAY_DATA_TYPE") {
      // harmless for coordinate files
    } else if (h.keyword == "NODE_COORD_SECTION") {
      if (saw_coord_section) throw ParseError("NODE_COORD_SECTION", line_no, "section repeated");
      saw_coord_section = true;
      coord_section_line = line_no;
      while (i < lines.size()) {
        const auto row = detail::trim(lines[i]);
        if (row.empty()) {
          ++i;
          continue;
        }
        const auto fields = detail::split_ws(row);
        const auto index = detail::to_integer(fields.front());
        if (!index) break;  // next keyword
        if (fields.size() != 3) {
          throw ParseError("NODE_COORD_SECTION", static_cast<int>(i) + 1,
                           "expected 'index x y', got " + std::to_string(fields.size()) + " fields");
        }
        const auto x = detail::to_double(fields[1]);
        const auto y = detail::to_double(fields[2]);
        if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) {
          throw ParseError("NODE_COORD_SECTION", static_cast<int>(i) + 1, "bad coordinate");
        }
        cloud.points.push_back({static_cast<int>(*index), {*x, *y}});
        ++i;
      }
    } else if (h.keyword.ends_with("_SECTION")) {
      throw ParseError(h.keyword, line_no, "unsupported section");
    } else {
      // Unknown specification keys (CAPACITY etc.) do not affect point clouds.
    }
  }

  const int last_line = static_cast<int>(lines.size());
  if (!saw_coord_section) throw ParseError("NODE_COORD_SECTION", last_line, "missing");
  if (!dimension) throw ParseError("DIMENSION", last_line, "missing");
  if (!weight_type) throw ParseError("EDGE_WEIGHT_TYPE", last_line, "missing");
  if (static_cast<int>(cloud.points.size()) != *dimension) {
    throw ParseError("NODE_COORD_SECTION", coord_section_line,
                     "DIMENSION " + std::to_string(*dimension) + " (line " + std::to_string(dimension_line) +
                         ") but " + std::to_string(cloud.points.size()) + " coordinate rows");
  }
  cloud.declared_dimension = *dimension;
  return cloud;
}

inline std::string to_tsplib_text(const PointCloud& cloud) {
  std::ostringstream out;
  out << "NAME : " << cloud.name << '\n'
      << "TYPE : TSP\n"
      << "DIMENSION : " << cloud.points.size() << '\n'
      << "EDGE_WEIGHT_TYPE : EUC_2D\n"
      << "NODE_COORD_SECTION\n";
  for (const auto& p : cloud.points) {
    out << p.index << ' ' << detail::format_number(p.point.x) << ' ' << detail::format_number(p.point.y) << '\n';
  }
  out << "EOF\n";
  return out.str();
}

}  // namespace mpdtsp
