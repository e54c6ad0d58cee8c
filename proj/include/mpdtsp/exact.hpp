#pragma once

// Exact depot-rooted solvers for small instances.
//
// held_karp is a dynamic program over (visited set, last node). Only sets
// closed under precedence can be reached, so each pair is in one of three
// states (untouched, picked up, delivered) and a set is a base-3 number with
// one digit per pair: 3^n sets instead of 4^n. The load of a set is the
// total mass of its picked-up-but-undelivered items.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mpdtsp/error.hpp"
#include "mpdtsp/instance.hpp"
#include "mpdtsp/tour.hpp"

namespace mpdtsp {

struct ExactOptions {
  int max_pairs = 10;
  bool enforce_capacity = true;  // false solves the precedence-only relaxation
};

struct ExactResult {
  std::optional<Tour> tour;  // empty: no feasible depot-rooted tour

  bool feasible() const noexcept { return tour.has_value(); }
};

inline ExactResult held_karp(const Instance& instance, const ExactOptions& options = {}) {
  const int n = instance.pairs();
  if (n > options.max_pairs) {
    throw LimitError("held_karp is limited to " + std::to_string(options.max_pairs) + " pairs, instance has " +
                     std::to_string(n));
  }
  if (n == 0) return {make_tour(instance, {0, 0})};

  std::vector<std::size_t> pow3(static_cast<std::size_t>(n) + 1, 1);
  for (int k = 1; k <= n; ++k) pow3[static_cast<std::size_t>(k)] = pow3[static_cast<std::size_t>(k) - 1] * 3;
  const std::size_t states = pow3[static_cast<std::size_t>(n)];
  const auto last_count = static_cast<std::size_t>(2 * n);  // node id v stored at v - 1
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best(states * last_count, kInf);
  std::vector<std::int16_t> from(states * last_count, -1);  // previous node id, 0 = depot

  auto digit = [&](std::size_t set, int pair) { return static_cast<int>((set / pow3[static_cast<std::size_t>(pair - 1)]) % 3); };
  const double q_max = instance.capacity() + kLoadTolerance;

  for (int k = 1; k <= n; ++k) {
    if (options.enforce_capacity && instance.load(k) > q_max) continue;
    const std::size_t set = pow3[static_cast<std::size_t>(k - 1)];
    best[set * last_count + static_cast<std::size_t>(k - 1)] = instance.cost(0, k);
    from[set * last_count + static_cast<std::size_t>(k - 1)] = 0;
  }

  // Each move adds one to a digit, so increasing set order is topological.
  for (std::size_t set = 1; set < states; ++set) {
    double load = 0.0;
    for (int k = 1; k <= n; ++k) {
      if (digit(set, k) == 1) load += instance.load(k);
    }
    for (std::size_t li = 0; li < last_count; ++li) {
      const double here = best[set * last_count + li];
      if (here == kInf) continue;
      const auto last = static_cast<NodeId>(li + 1);
      for (int k = 1; k <= n; ++k) {
        const int d = digit(set, k);
        if (d == 2) continue;
        const NodeId v = d == 0 ? instance.pickup_of(k) : instance.delivery_of(k);
        if (d == 0 && options.enforce_capacity && load + instance.load(v) > q_max) continue;
        const std::size_t next = set + pow3[static_cast<std::size_t>(k - 1)];
        const std::size_t slot = next * last_count + static_cast<std::size_t>(v - 1);
        const double candidate = here + instance.cost(last, v);
        if (candidate < best[slot]) {
          best[slot] = candidate;
          from[slot] = static_cast<std::int16_t>(last);
        }
      }
    }
  }

  const std::size_t full = states - 1;
  double optimum = kInf;
  NodeId final_node = -1;
  for (std::size_t li = 0; li < last_count; ++li) {
    const double here = best[full * last_count + li];
    if (here == kInf) continue;
    const double total = here + instance.cost(static_cast<NodeId>(li + 1), 0);
    if (total < optimum) {
      optimum = total;
      final_node = static_cast<NodeId>(li + 1);
    }
  }
  if (final_node < 0) return {};

  std::vector<NodeId> reversed{0};
  std::size_t set = full;
  NodeId v = final_node;
  while (v != 0) {
    reversed.push_back(v);
    const NodeId prev = from[set * last_count + static_cast<std::size_t>(v - 1)];
    const int pair = instance.is_pickup(v) ? v : v - n;
    set -= pow3[static_cast<std::size_t>(pair - 1)];
    v = prev;
  }
  reversed.push_back(0);
  std::reverse(reversed.begin(), reversed.end());
  return {make_tour(instance, std::move(reversed))};
}

// Enumerates every depot-rooted order and keeps the cheapest one the
// validator accepts; ties go to the lexicographically smallest sequence.
inline ExactResult brute_force(const Instance& instance, int max_pairs = 4) {
  if (instance.pairs() > max_pairs) {
    throw LimitError("brute_force is limited to " + std::to_string(max_pairs) + " pairs, instance has " +
                     std::to_string(instance.pairs()));
  }
  std::vector<NodeId> interior;
  for (NodeId id = 1; id < instance.node_count(); ++id) interior.push_back(id);
  std::vector<NodeId> sequence(interior.size() + 2, 0);
  ExactResult result;
  do {
    std::copy(interior.begin(), interior.end(), sequence.begin() + 1);
    if (!validate(instance, sequence).feasible) continue;
    const double cost = tour_cost(instance, sequence);
    if (!result.tour || cost < result.tour->cost) result.tour = Tour{0, sequence, cost};
  } while (std::next_permutation(interior.begin(), interior.end()));
  return result;
}

}  // namespace mpdtsp
