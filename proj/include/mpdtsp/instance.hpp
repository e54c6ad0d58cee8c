#pragma once

// The m-PDTSP instance: a depot (node 0), pickups 1..n and deliveries
// n+1..2n, where pickup i pairs with delivery n+i. Node 2n+1 is accepted
// everywhere as an alias of the depot.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mpdtsp/error.hpp"
#include "mpdtsp/tsplib.hpp"

namespace mpdtsp {

using NodeId = int;

enum class RoleKind { Depot, Pickup, Delivery };

struct NodeRole {
  RoleKind kind = RoleKind::Depot;
  int pair = 0;  // 1..n for pickups and deliveries, 0 for the depot

  friend bool operator==(const NodeRole&, const NodeRole&) = default;
};

class Instance {
 public:
  // coords holds 2n+1 points in node order; masses holds the n pickup masses.
  static Instance from_points(std::vector<Point> coords, std::vector<double> masses, double capacity,
                              MetricMode metric = MetricMode::ExactEuclidean) {
    if (metric == MetricMode::ExplicitMatrix) {
      throw InputError("coordinate instances need a coordinate-derived metric");
    }
    const auto pairs = masses.size();
    if (coords.size() != 2 * pairs + 1) {
      throw InputError("expected " + std::to_string(2 * pairs + 1) + " coordinates for " + std::to_string(pairs) +
                       " pairs, got " + std::to_string(coords.size()));
    }
    for (const auto& p : coords) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InputError("non-finite coordinate");
    }
    Instance inst(static_cast<int>(pairs), std::move(masses), capacity, metric);
    const auto n = inst.node_count();
    inst.matrix_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double d = tsplib_distance(coords[i], coords[j], metric);
        inst.matrix_[inst.index(i, j)] = d;
        inst.matrix_[inst.index(j, i)] = d;
      }
    }
    inst.coords_ = std::move(coords);
    return inst;
  }

  // Row-major (2n+1)x(2n+1) cost matrix.
  static Instance from_matrix(std::vector<double> matrix, std::vector<double> masses, double capacity) {
    const auto pairs = masses.size();
    const auto n = 2 * pairs + 1;
    if (matrix.size() != n * n) {
      throw InputError("cost matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double c = matrix[i * n + j];
        if (!std::isfinite(c) || c < 0.0) throw InputError("cost matrix entries must be finite and nonnegative");
        if (i == j && c != 0.0) throw InputError("cost matrix diagonal must be zero");
      }
    }
    Instance inst(static_cast<int>(pairs), std::move(masses), capacity, MetricMode::ExplicitMatrix);
    inst.matrix_ = std::move(matrix);
    return inst;
  }

  int pairs() const noexcept { return pairs_; }
  // Physical nodes: depot plus 2n.
  int node_count() const noexcept { return 2 * pairs_ + 1; }
  static constexpr NodeId depot() noexcept { return 0; }
  NodeId terminal_alias() const noexcept { return 2 * pairs_ + 1; }

  bool valid_id(NodeId id) const noexcept { return id >= 0 && id <= terminal_alias(); }

  // Maps the terminal alias onto the depot; rejects anything out of range.
  NodeId canonical(NodeId id) const {
    if (!valid_id(id)) {
      throw InputError("node id " + std::to_string(id) + " out of range 0.." + std::to_string(terminal_alias()));
    }
    return id == terminal_alias() ? depot() : id;
  }

  NodeRole role(NodeId id) const {
    id = canonical(id);
    if (id == 0) return {RoleKind::Depot, 0};
    if (id <= pairs_) return {RoleKind::Pickup, id};
    return {RoleKind::Delivery, id - pairs_};
  }
  bool is_pickup(NodeId id) const noexcept { return id >= 1 && id <= pairs_; }
  bool is_delivery(NodeId id) const noexcept { return id > pairs_ && id <= 2 * pairs_; }
  NodeId pickup_of(int pair) const noexcept { return pair; }
  NodeId delivery_of(int pair) const noexcept { return pairs_ + pair; }

  // q_i; the depot (and its alias) carries nothing.
  double load(NodeId id) const noexcept {
    if (is_pickup(id)) return masses_[id - 1];
    if (is_delivery(id)) return -masses_[id - pairs_ - 1];
    return 0.0;
  }
  const std::vector<double>& masses() const noexcept { return masses_; }
  double capacity() const noexcept { return capacity_; }
  MetricMode metric() const noexcept { return metric_; }
  bool has_coords() const noexcept { return !coords_.empty(); }
  const std::vector<Point>& coords() const noexcept { return coords_; }

  // No tour exists when a single item is heavier than the agent can carry.
  bool has_oversized_item() const noexcept {
    return std::any_of(masses_.begin(), masses_.end(), [&](double m) { return m > capacity_; });
  }

  // Unchecked lookup on physical ids 0..2n.
  double cost(NodeId i, NodeId j) const noexcept { return matrix_[index(i, j)]; }
  const double* cost_row(NodeId i) const noexcept { return matrix_.data() + index(i, 0); }

  Instance with_metric(MetricMode metric) const {
    if (!has_coords()) throw InputError("instance has no coordinates to recompute costs from");
    return from_points(coords_, masses_, capacity_, metric);
  }

  Instance with_capacity(double capacity) const {
    Instance copy = *this;
    copy.capacity_ = checked_capacity(capacity);
    return copy;
  }

  Instance scaled(double factor) const {
    if (!has_coords()) throw InputError("instance has no coordinates to scale");
    auto coords = coords_;
    for (auto& p : coords) {
      p.x *= factor;
      p.y *= factor;
    }
    return from_points(std::move(coords), masses_, capacity_, metric_);
  }

 private:
  Instance(int pairs, std::vector<double> masses, double capacity, MetricMode metric)
      : pairs_(pairs), masses_(std::move(masses)), capacity_(checked_capacity(capacity)), metric_(metric) {
    for (double m : masses_) {
      if (!std::isfinite(m) || m <= 0.0) throw InputError("commodity masses must be positive");
    }
  }

  static double checked_capacity(double capacity) {
    if (!std::isfinite(capacity) || capacity < 0.0) throw InputError("capacity must be finite and nonnegative");
    return capacity;
  }

  std::size_t index(NodeId i, NodeId j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(node_count()) + static_cast<std::size_t>(j);
  }

  int pairs_ = 0;
  std::vector<double> masses_;
  double capacity_ = 0.0;
  MetricMode metric_ = MetricMode::ExactEuclidean;
  std::vector<Point> coords_;
  std::vector<double> matrix_;
};

// C_ij with range checks and alias mapping.
inline double arc_cost(const Instance& instance, NodeId i, NodeId j) {
  return instance.cost(instance.canonical(i), instance.canonical(j));
}

inline std::string to_string(RoleKind kind) {
  switch (kind) {
    case RoleKind::Depot:
      return "DEPOT";
    case RoleKind::Pickup:
      return "PICKUP";
    case RoleKind::Delivery:
      return "DELIVERY";
  }
  return "?";
}

inline std::string to_string(MetricMode mode) {
  switch (mode) {
    case MetricMode::TsplibRounded:
      return "ROUNDED";
    case MetricMode::ExactEuclidean:
      return "EXACT";
    case MetricMode::ExplicitMatrix:
      return "EXPLICIT";
  }
  return "?";
}

}  // namespace mpdtsp
