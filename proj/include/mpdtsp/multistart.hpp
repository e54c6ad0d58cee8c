#pragma once

// Pieces shared by the two construction heuristics: per-start outcomes,
// the deterministic best-of reduction and the comparison used for greedy
// choices.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpdtsp/error.hpp"
#include "mpdtsp/instance.hpp"
#include "mpdtsp/parallel.hpp"
#include "mpdtsp/tour.hpp"

namespace mpdtsp {

// Stuck construction: nodes remain but none passes the feasibility gates.
struct DeadEnd {
  std::vector<NodeId> partial;
  double payload = 0.0;  // load at the end of the partial tour (NNH) or its maximum (CIH)
  std::vector<NodeId> remainder;
};

struct Construction {
  NodeId init = 0;
  std::optional<Tour> tour;
  std::optional<DeadEnd> dead_end;

  bool ok() const noexcept { return tour.has_value(); }
};

struct MultiStartResult {
  std::optional<Tour> best;
  NodeId best_init = 0;
  std::vector<Construction> per_init;  // in the order the inits were given
  int dead_ends = 0;

  bool ok() const noexcept { return best.has_value(); }
};

namespace detail {

// Greedy choices treat values within a relative 1e-12 as tied so that
// rounding noise (e.g. after uniformly scaling coordinates) cannot reorder
// mathematically equal candidates; the scan order then breaks the tie.
inline constexpr double kTieTolerance = 1e-12;

inline bool clearly_less(double a, double b) {
  if (!(a < b)) return false;
  if (std::isinf(b)) return true;
  return (b - a) > kTieTolerance * std::max(std::abs(a), std::abs(b));
}

inline void check_init(const Instance& instance, NodeId init) {
  if (!instance.valid_id(init)) {
    throw InputError("start node " + std::to_string(init) + " out of range");
  }
}

// Every heuristic tour must pass the validator; anything else is a bug.
inline void postcondition(const Instance& instance, const Tour& tour, const char* who) {
  const auto report = validate(instance, tour);
  if (!report.feasible) {
    const auto& v = report.violations.front();
    throw InvariantError(std::string(who) + " produced an infeasible tour: " + to_string(v.kind) + " at position " +
                         std::to_string(v.position) + " (" + v.detail + ")");
  }
}

template <typename Construct>
MultiStartResult multi_start(const Instance& instance, std::span<const NodeId> inits, int threads, Construct&& construct) {
  if (inits.empty()) throw InputError("multi-start needs at least one start node");
  for (NodeId init : inits) check_init(instance, init);

  MultiStartResult result;
  result.per_init.resize(inits.size());
  parallel_for(inits.size(), threads, [&](std::size_t k) { result.per_init[k] = construct(instance, inits[k]); });

  // min by cost, then lowest init id
  for (const auto& c : result.per_init) {
    if (!c.ok()) {
      ++result.dead_ends;
      continue;
    }
    if (!result.best || c.tour->cost < result.best->cost ||
        (c.tour->cost == result.best->cost && c.init < result.best_init)) {
      result.best = c.tour;
      result.best_init = c.init;
    }
  }
  return result;
}

}  // namespace detail

inline std::vector<NodeId> all_nodes(const Instance& instance) {
  std::vector<NodeId> ids(static_cast<std::size_t>(instance.node_count()));
  for (NodeId id = 0; id < instance.node_count(); ++id) ids[static_cast<std::size_t>(id)] = id;
  return ids;
}

}  // namespace mpdtsp
