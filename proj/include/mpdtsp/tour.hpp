#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mpdtsp/error.hpp"
#include "mpdtsp/instance.hpp"

namespace mpdtsp {

// Loads are compared against [0, Q] with this slack so that sums of
// non-integer masses do not flip verdicts on rounding noise.
inline constexpr double kLoadTolerance = 1e-9;

// A closed visit sequence: sequence.front() == sequence.back() == start.
struct Tour {
  NodeId start = 0;
  std::vector<NodeId> sequence;
  double cost = 0.0;

  friend bool operator==(const Tour&, const Tour&) = default;
};

struct PayloadProfile {
  std::vector<double> entries;  // cargo on board when leaving each position
};

inline void require_closed(const Instance& instance, std::span<const NodeId> sequence) {
  if (sequence.size() < 2) throw StructuralError("a closed tour needs at least two positions");
  if (instance.canonical(sequence.front()) != instance.canonical(sequence.back())) {
    throw StructuralError("tour does not return to its start node " + std::to_string(sequence.front()));
  }
}

inline double tour_cost(const Instance& instance, std::span<const NodeId> sequence) {
  require_closed(instance, sequence);
  double total = 0.0;
  for (std::size_t r = 0; r + 1 < sequence.size(); ++r) total += arc_cost(instance, sequence[r], sequence[r + 1]);
  return total;
}

inline double tour_cost(const Instance& instance, const Tour& tour) { return tour_cost(instance, tour.sequence); }

inline Tour make_tour(const Instance& instance, std::vector<NodeId> sequence) {
  const double cost = tour_cost(instance, sequence);
  const NodeId start = instance.canonical(sequence.front());
  return {start, std::move(sequence), cost};
}

// Position at which a node's cargo event fires. Every node fires where it is
// visited, except a delivery start, which delivers on the closing occurrence.
inline std::size_t event_position(const Instance& instance, std::span<const NodeId> sequence, std::size_t r) {
  if (r == 0 && instance.is_delivery(instance.canonical(sequence.front()))) return sequence.size() - 1;
  return r;
}

inline PayloadProfile payload_profile(const Instance& instance, std::span<const NodeId> sequence) {
  require_closed(instance, sequence);
  std::vector<double> events(sequence.size(), 0.0);
  for (std::size_t r = 0; r + 1 < sequence.size(); ++r) {
    events[event_position(instance, sequence, r)] += instance.load(instance.canonical(sequence[r]));
  }
  PayloadProfile profile;
  profile.entries.resize(sequence.size());
  double running = 0.0;
  for (std::size_t r = 0; r < sequence.size(); ++r) {
    running += events[r];
    profile.entries[r] = running;
  }
  return profile;
}

inline PayloadProfile payload_profile(const Instance& instance, const Tour& tour) {
  return payload_profile(instance, tour.sequence);
}

enum class ViolationKind { VisitCount, Closure, Precedence, CapacityUpper, CapacityLower, TerminalLoad };

inline std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::VisitCount:
      return "VisitCount";
    case ViolationKind::Closure:
      return "Closure";
    case ViolationKind::Precedence:
      return "Precedence";
    case ViolationKind::CapacityUpper:
      return "CapacityUpper";
    case ViolationKind::CapacityLower:
      return "CapacityLower";
    case ViolationKind::TerminalLoad:
      return "TerminalLoad";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::size_t position = 0;
  std::string detail;
};

struct ValidationReport {
  bool feasible = true;
  std::vector<Violation> violations;

  bool has(ViolationKind kind) const {
    for (const auto& v : violations) {
      if (v.kind == kind) return true;
    }
    return false;
  }
};

// Checks every constraint of the formulation on a tour read from its start.
// Structural problems (bad ids, repeats, missing nodes, open sequence) are
// reported and the load checks are skipped, since they are meaningless then.
inline ValidationReport validate(const Instance& instance, std::span<const NodeId> sequence) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::size_t position, std::string detail) {
    report.violations.push_back({kind, position, std::move(detail)});
  };

  if (sequence.size() < 2) {
    add(ViolationKind::Closure, 0, "sequence has " + std::to_string(sequence.size()) + " positions");
  } else if (!instance.valid_id(sequence.front()) || !instance.valid_id(sequence.back()) ||
             instance.canonical(sequence.front()) != instance.canonical(sequence.back())) {
    add(ViolationKind::Closure, sequence.size() - 1,
        "ends at " + std::to_string(sequence.back()) + ", started at " + std::to_string(sequence.front()));
  }

  const auto n = static_cast<std::size_t>(instance.node_count());
  std::vector<int> seen(n, 0);
  std::vector<std::size_t> position(n, 0);
  const std::size_t interior = sequence.size() < 2 ? sequence.size() : sequence.size() - 1;
  for (std::size_t r = 0; r < interior; ++r) {
    if (!instance.valid_id(sequence[r])) {
      add(ViolationKind::VisitCount, r, "unknown node id " + std::to_string(sequence[r]));
      continue;
    }
    const auto id = static_cast<std::size_t>(instance.canonical(sequence[r]));
    if (++seen[id] == 2) add(ViolationKind::VisitCount, r, "node " + std::to_string(id) + " visited twice");
    position[id] = r;
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (seen[id] == 0) add(ViolationKind::VisitCount, 0, "node " + std::to_string(id) + " never visited");
  }

  if (!report.violations.empty()) {
    report.feasible = false;
    return report;
  }

  for (int pair = 1; pair <= instance.pairs(); ++pair) {
    const auto p = static_cast<std::size_t>(instance.pickup_of(pair));
    const auto d = static_cast<std::size_t>(instance.delivery_of(pair));
    if (event_position(instance, sequence, position[p]) >= event_position(instance, sequence, position[d])) {
      add(ViolationKind::Precedence, position[d],
          "delivery " + std::to_string(d) + " before its pickup " + std::to_string(p));
    }
  }

  const auto profile = payload_profile(instance, sequence);
  const double q_max = instance.capacity();
  for (std::size_t r = 0; r < profile.entries.size(); ++r) {
    const double y = profile.entries[r];
    if (y > q_max + kLoadTolerance) {
      add(ViolationKind::CapacityUpper, r,
          "load " + detail::format_number(y) + " exceeds capacity " + detail::format_number(q_max));
    } else if (y < -kLoadTolerance) {
      add(ViolationKind::CapacityLower, r, "load " + detail::format_number(y) + " is negative");
    }
  }
  if (std::abs(profile.entries.back()) > kLoadTolerance) {
    add(ViolationKind::TerminalLoad, profile.entries.size() - 1,
        "tour ends carrying " + detail::format_number(profile.entries.back()));
  }

  report.feasible = report.violations.empty();
  return report;
}

inline ValidationReport validate(const Instance& instance, const Tour& tour) {
  return validate(instance, tour.sequence);
}

}  // namespace mpdtsp
