#pragma once

// Multi-start cheapest insertion for the m-PDTSP.
//
// Each start grows the closed partial tour [init, init]. The payload vector
// is kept as an event prefix sum over the partial tour, so inserting node i
// after position s raises every entry from s on by q_i. A slot is therefore
// capacity-feasible iff max(payload[s..end]) + q_i <= Q, and because that
// suffix maximum never increases with s the feasible slots form a suffix of
// the tour. Deliveries are further limited to slots after their pickup.
// Among all feasible (node, slot) pairs the one with the smallest ratio
// (C(a,i) + C(i,b)) / C(a,b) is inserted.

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mpdtsp/error.hpp"
#include "mpdtsp/instance.hpp"
#include "mpdtsp/multistart.hpp"
#include "mpdtsp/tour.hpp"

namespace mpdtsp {

struct CihState {
  std::vector<NodeId> partial;   // closed: init at both ends
  std::vector<double> payload;   // one entry per position of partial
  std::vector<int> position;     // node id -> index in partial, -1 when not inserted
  double cost_so_far = 0.0;

  bool contains(NodeId id) const { return position[static_cast<std::size_t>(id)] >= 0; }
  std::size_t remaining() const {
    return static_cast<std::size_t>(std::count(position.begin(), position.end(), -1));
  }
};

// Insert after any position in [first, last]; empty when first > last.
struct SlotRange {
  int first = 0;
  int last = -1;

  bool empty() const noexcept { return first > last; }
  bool contains(int slot) const noexcept { return slot >= first && slot <= last; }
  friend bool operator==(const SlotRange&, const SlotRange&) = default;
};

struct InsertionChoice {
  NodeId node = 0;
  int slot = 0;
  double ratio = 0.0;
};

// Payload starts as [q, q] for a pickup (its event fires at the opening
// occurrence), [0, q] with q < 0 for a delivery (it delivers on closing)
// and [0, 0] for the depot.
inline CihState cih_init(const Instance& instance, NodeId init) {
  detail::check_init(instance, init);
  init = instance.canonical(init);
  CihState state;
  state.partial = {init, init};
  const double q = instance.load(init);
  if (instance.is_pickup(init)) {
    state.payload = {q, q};
  } else {
    state.payload = {0.0, q};
  }
  state.position.assign(static_cast<std::size_t>(instance.node_count()), -1);
  state.position[static_cast<std::size_t>(init)] = 0;
  return state;
}

inline double insertion_ratio(const Instance& instance, NodeId a, NodeId i, NodeId b) {
  const double added = arc_cost(instance, a, i) + arc_cost(instance, i, b);
  const double replaced = arc_cost(instance, a, b);
  return replaced > 0.0 ? added / replaced : added;
}

namespace detail {

inline std::vector<double> suffix_max(std::span<const double> payload) {
  std::vector<double> out(payload.size());
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t r = payload.size(); r-- > 0;) {
    running = std::max(running, payload[r]);
    out[r] = running;
  }
  return out;
}

inline SlotRange slots_from_suffix(const Instance& instance, const CihState& state, std::span<const double> smax, NodeId i) {
  const int last = static_cast<int>(state.partial.size()) - 2;
  const double q = instance.load(i);
  const double limit = instance.capacity() + kLoadTolerance;
  // smax is non-increasing; find the first slot whose suffix fits.
  int lo = 0;
  int hi = last + 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (smax[static_cast<std::size_t>(mid)] + q <= limit) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  SlotRange range{lo, last};
  if (instance.is_delivery(i)) {
    const int p = state.position[static_cast<std::size_t>(i - instance.pairs())];
    if (p < 0) return {0, -1};
    range.first = std::max(range.first, p);
  }
  return range;
}

// In-place splice without feasibility checks.
inline void insert_unchecked(const Instance& instance, CihState& state, NodeId i, int slot) {
  const auto s = static_cast<std::size_t>(slot);
  const NodeId a = state.partial[s];
  const NodeId b = state.partial[s + 1];
  const double q = instance.load(i);
  state.cost_so_far += instance.cost(a, i) + instance.cost(i, b) - instance.cost(a, b);
  state.partial.insert(state.partial.begin() + static_cast<std::ptrdiff_t>(s + 1), i);
  state.payload.insert(state.payload.begin() + static_cast<std::ptrdiff_t>(s + 1), state.payload[s] + q);
  for (std::size_t r = s + 2; r < state.payload.size(); ++r) state.payload[r] += q;
  for (std::size_t r = s + 1; r + 1 < state.partial.size(); ++r) {
    state.position[static_cast<std::size_t>(state.partial[r])] = static_cast<int>(r);
  }
}

}  // namespace detail

inline SlotRange feasible_slots(const Instance& instance, const CihState& state, NodeId i) {
  if (!instance.valid_id(i) || state.contains(instance.canonical(i))) {
    throw InputError("node " + std::to_string(i) + " is not in the remainder");
  }
  const auto smax = detail::suffix_max(state.payload);
  return detail::slots_from_suffix(instance, state, smax, i);
}

inline CihState apply_insertion(CihState state, const InsertionChoice& choice, const Instance& instance) {
  if (!instance.valid_id(choice.node) || state.contains(instance.canonical(choice.node))) {
    throw InvariantError("insertion of node " + std::to_string(choice.node) + " which is not in the remainder");
  }
  if (!feasible_slots(instance, state, choice.node).contains(choice.slot)) {
    throw InvariantError("slot " + std::to_string(choice.slot) + " is infeasible for node " + std::to_string(choice.node));
  }
  detail::insert_unchecked(instance, state, instance.canonical(choice.node), choice.slot);
  return state;
}

// Cheapest feasible insertion over all remainder nodes. Ties go to the lower
// node id, then the earlier slot.
inline std::optional<InsertionChoice> cheapest_insertion(const Instance& instance, const CihState& state) {
  const auto smax = detail::suffix_max(state.payload);
  const std::size_t edges = state.partial.size() - 1;
  std::vector<double> replaced(edges);
  for (std::size_t s = 0; s < edges; ++s) replaced[s] = instance.cost(state.partial[s], state.partial[s + 1]);

  std::optional<InsertionChoice> best;
  for (NodeId i = 0; i < instance.node_count(); ++i) {
    if (state.contains(i)) continue;
    const auto window = detail::slots_from_suffix(instance, state, smax, i);
    if (window.empty()) continue;  // ratio is infinite
    const double* row = instance.cost_row(i);
    for (int s = window.first; s <= window.last; ++s) {
      const auto su = static_cast<std::size_t>(s);
      const NodeId a = state.partial[su];
      const NodeId b = state.partial[su + 1];
      const double added = instance.cost(a, i) + row[b];
      const double ratio = replaced[su] > 0.0 ? added / replaced[su] : added;
      if (!best || detail::clearly_less(ratio, best->ratio)) best = InsertionChoice{i, s, ratio};
    }
  }
  return best;
}

inline Construction cih_from(const Instance& instance, NodeId init) {
  auto state = cih_init(instance, init);
  Construction out;
  out.init = state.partial.front();
  const auto total = static_cast<std::size_t>(instance.node_count()) + 1;
  const bool overloaded = state.payload.front() > instance.capacity() + kLoadTolerance;
  while (state.partial.size() < total) {
    const auto choice = overloaded ? std::nullopt : cheapest_insertion(instance, state);
    if (!choice) {
      DeadEnd stuck{state.partial, *std::max_element(state.payload.begin(), state.payload.end()), {}};
      for (NodeId i = 0; i < instance.node_count(); ++i) {
        if (!state.contains(i)) stuck.remainder.push_back(i);
      }
      out.dead_end = std::move(stuck);
      return out;
    }
    detail::insert_unchecked(instance, state, choice->node, choice->slot);
  }
  auto tour = make_tour(instance, std::move(state.partial));
  detail::postcondition(instance, tour, "cheapest insertion");
  out.tour = std::move(tour);
  return out;
}

inline MultiStartResult cih_best(const Instance& instance, std::span<const NodeId> inits, int threads = worker_count()) {
  return detail::multi_start(instance, inits, threads, [](const Instance& inst, NodeId init) { return cih_from(inst, init); });
}

inline MultiStartResult cih_best(const Instance& instance, int threads = worker_count()) {
  const auto inits = all_nodes(instance);
  return cih_best(instance, inits, threads);
}

}  // namespace mpdtsp
