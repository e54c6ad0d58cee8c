#pragma once

// Turns a TSPLIB point cloud into a precedence/capacity instance: rank the
// points by distance from the centroid, make the most central point the
// depot and pair ranks outside-in, (2, N), (3, N-1), ...

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mpdtsp/error.hpp"
#include "mpdtsp/instance.hpp"
#include "mpdtsp/tsplib.hpp"

namespace mpdtsp {

enum class Direction { PickupsCentral, DeliveriesCentral };

inline std::string to_string(Direction d) {
  return d == Direction::PickupsCentral ? "pickups-central" : "deliveries-central";
}

inline std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "pickups-central") return Direction::PickupsCentral;
  if (text == "deliveries-central") return Direction::DeliveriesCentral;
  return std::nullopt;
}

struct GenerationSpec {
  Direction direction = Direction::PickupsCentral;
  int capacity_items = 1;
  double unit_load = 1.0;
  MetricMode metric = MetricMode::ExactEuclidean;
};

struct GenerationMetadata {
  std::string source;
  Direction direction = Direction::PickupsCentral;
  int capacity_items = 0;
  double unit_load = 1.0;
  int point_count = 0;
  int pairs = 0;
  std::optional<int> dropped_index;  // file index of the self-paired middle rank
};

struct GeneratedInstance {
  Instance instance;
  GenerationMetadata metadata;
  std::vector<int> source_index;  // file index of each node id
};

inline Point centroid(const PointCloud& cloud) {
  if (cloud.points.empty()) throw InputError("centroid of an empty point cloud");
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& p : cloud.points) {
    sx += p.point.x;
    sy += p.point.y;
  }
  const auto n = static_cast<double>(cloud.points.size());
  return {sx / n, sy / n};
}

// Positions into cloud.points, most central first; ties keep the lower file index first.
inline std::vector<std::size_t> rank_by_centroid(const PointCloud& cloud) {
  std::vector<std::size_t> order(cloud.points.size());
  if (order.empty()) return order;
  const Point c = centroid(cloud);
  std::vector<double> dist2(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double dx = cloud.points[k].point.x - c.x;
    const double dy = cloud.points[k].point.y - c.y;
    dist2[k] = dx * dx + dy * dy;
  }
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dist2[a] != dist2[b]) return dist2[a] < dist2[b];
    return cloud.points[a].index < cloud.points[b].index;
  });
  return order;
}

inline GeneratedInstance generate(const PointCloud& cloud, const GenerationSpec& spec) {
  if (cloud.points.size() < 3) throw InputError("need at least 3 points to generate an instance");
  if (spec.capacity_items < 1) throw InputError("capacity must be at least one item");
  if (!(spec.unit_load > 0.0)) throw InputError("unit load must be positive");

  const auto ranked = rank_by_centroid(cloud);
  const auto count = static_cast<int>(ranked.size());
  const int pairs = (count - 1) / 2;
  // ranked[r - 1] is the point with rank r
  auto at_rank = [&](int r) -> const IndexedPoint& { return cloud.points[ranked[static_cast<std::size_t>(r - 1)]]; };

  std::vector<Point> coords(static_cast<std::size_t>(2 * pairs + 1));
  std::vector<int> source(coords.size());
  coords[0] = at_rank(1).point;
  source[0] = at_rank(1).index;
  for (int k = 1; k <= pairs; ++k) {
    const IndexedPoint& inner = at_rank(1 + k);
    const IndexedPoint& outer = at_rank(count + 1 - k);
    const bool inner_picks = spec.direction == Direction::PickupsCentral;
    const IndexedPoint& pickup = inner_picks ? inner : outer;
    const IndexedPoint& delivery = inner_picks ? outer : inner;
    coords[k] = pickup.point;
    source[k] = pickup.index;
    coords[pairs + k] = delivery.point;
    source[pairs + k] = delivery.index;
  }

  GenerationMetadata meta;
  meta.source = cloud.name;
  meta.direction = spec.direction;
  meta.capacity_items = spec.capacity_items;
  meta.unit_load = spec.unit_load;
  meta.point_count = count;
  meta.pairs = pairs;
  if ((count - 1) % 2 == 1) meta.dropped_index = at_rank(pairs + 2).index;

  auto instance = Instance::from_points(std::move(coords), std::vector<double>(static_cast<std::size_t>(pairs), spec.unit_load),
                                        spec.capacity_items * spec.unit_load, spec.metric);
  return {std::move(instance), std::move(meta), std::move(source)};
}

inline std::string serialize_metadata(const GenerationMetadata& meta) {
  std::string out;
  out += "source=" + meta.source + "\n";
  out += "direction=" + to_string(meta.direction) + "\n";
  out += "capacity_items=" + std::to_string(meta.capacity_items) + "\n";
  out += "unit_load=" + detail::format_number(meta.unit_load) + "\n";
  out += "point_count=" + std::to_string(meta.point_count) + "\n";
  out += "pairs=" + std::to_string(meta.pairs) + "\n";
  out += "dropped_index=" + (meta.dropped_index ? std::to_string(*meta.dropped_index) : std::string("none")) + "\n";
  return out;
}

}  // namespace mpdtsp
