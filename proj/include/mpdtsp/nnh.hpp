#pragma once

// Multi-start nearest neighbor for the m-PDTSP. From each start the tour is
// extended by the nearest node that keeps precedence (a delivery only after
// its pickup) and capacity (current load + q_i <= Q); the cheapest closed
// tour over all starts wins.

#include <optional>
#include <span>
#include <vector>

#include "mpdtsp/instance.hpp"
#include "mpdtsp/multistart.hpp"
#include "mpdtsp/tour.hpp"

namespace mpdtsp {

struct NnhState {
  std::vector<NodeId> partial;
  double payload = 0.0;
  std::vector<char> in_tour;  // indexed by node id; the complement is the remainder
  double cost_so_far = 0.0;

  std::size_t remaining() const {
    std::size_t count = 0;
    for (char c : in_tour) count += c ? 0 : 1;
    return count;
  }
};

// Pickup starts carry their item from the outset; everything else starts empty.
inline NnhState nnh_init(const Instance& instance, NodeId init) {
  detail::check_init(instance, init);
  init = instance.canonical(init);
  NnhState state;
  state.partial = {init};
  state.payload = instance.is_pickup(init) ? instance.load(init) : 0.0;
  state.in_tour.assign(static_cast<std::size_t>(instance.node_count()), 0);
  state.in_tour[static_cast<std::size_t>(init)] = 1;
  return state;
}

inline bool nnh_admissible(const Instance& instance, const NnhState& state, NodeId i) {
  if (state.in_tour[static_cast<std::size_t>(i)]) return false;
  if (instance.is_delivery(i) && !state.in_tour[static_cast<std::size_t>(i - instance.pairs())]) return false;
  return state.payload + instance.load(i) <= instance.capacity() + kLoadTolerance;
}

inline std::vector<NodeId> feasible_candidates(const Instance& instance, const NnhState& state) {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < instance.node_count(); ++i) {
    if (nnh_admissible(instance, state, i)) out.push_back(i);
  }
  return out;
}

inline void nnh_append(const Instance& instance, NnhState& state, NodeId i) {
  state.cost_so_far += instance.cost(state.partial.back(), i);
  state.partial.push_back(i);
  state.payload += instance.load(i);
  state.in_tour[static_cast<std::size_t>(i)] = 1;
}

// Nearest admissible node from the tour end; equal distances go to the lowest id.
inline std::optional<NodeId> nnh_next(const Instance& instance, const NnhState& state) {
  const double* row = instance.cost_row(state.partial.back());
  std::optional<NodeId> best;
  for (NodeId i = 0; i < instance.node_count(); ++i) {
    if (!nnh_admissible(instance, state, i)) continue;
    if (!best || detail::clearly_less(row[i], row[*best])) best = i;
  }
  return best;
}

inline Construction nnh_from(const Instance& instance, NodeId init) {
  auto state = nnh_init(instance, init);
  Construction out;
  out.init = state.partial.front();
  const auto total = static_cast<std::size_t>(instance.node_count());
  // an oversized pickup start is already over capacity
  const bool overloaded = state.payload > instance.capacity() + kLoadTolerance;
  while (state.partial.size() < total) {
    const auto next = overloaded ? std::nullopt : nnh_next(instance, state);
    if (!next) {
      DeadEnd stuck{state.partial, state.payload, {}};
      for (NodeId i = 0; i < instance.node_count(); ++i) {
        if (!state.in_tour[static_cast<std::size_t>(i)]) stuck.remainder.push_back(i);
      }
      out.dead_end = std::move(stuck);
      return out;
    }
    nnh_append(instance, state, *next);
  }
  state.cost_so_far += instance.cost(state.partial.back(), out.init);
  state.partial.push_back(out.init);
  Tour tour{out.init, std::move(state.partial), state.cost_so_far};
  detail::postcondition(instance, tour, "nearest neighbor");
  out.tour = std::move(tour);
  return out;
}

inline MultiStartResult nnh_best(const Instance& instance, std::span<const NodeId> inits, int threads = worker_count()) {
  return detail::multi_start(instance, inits, threads, [](const Instance& inst, NodeId init) { return nnh_from(inst, init); });
}

inline MultiStartResult nnh_best(const Instance& instance, int threads = worker_count()) {
  const auto inits = all_nodes(instance);
  return nnh_best(instance, inits, threads);
}

}  // namespace mpdtsp
