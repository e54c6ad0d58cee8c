#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"

using namespace mpdtsp;
using fixtures::two_pair;

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Insert after each listed (node, slot) in turn.
CihState build(const Instance& inst, NodeId init, std::vector<std::pair<NodeId, int>> steps) {
  auto state = cih_init(inst, init);
  for (auto [node, slot] : steps) state = apply_insertion(state, {node, slot, 0.0}, inst);
  return state;
}

// Per-slot check straight from the definition.
std::vector<int> brute_slots(const Instance& inst, const CihState& state, NodeId i) {
  std::vector<int> out;
  const int last = static_cast<int>(state.partial.size()) - 2;
  for (int s = 0; s <= last; ++s) {
    bool ok = true;
    for (std::size_t r = static_cast<std::size_t>(s); r < state.payload.size(); ++r) {
      if (state.payload[r] + inst.load(i) > inst.capacity() + 1e-9) ok = false;
    }
    if (inst.is_delivery(i)) {
      const NodeId p = i - inst.pairs();
      const auto it = std::find(state.partial.begin(), state.partial.end() - 1, p);
      if (it == state.partial.end() - 1 || s < it - state.partial.begin()) ok = false;
    }
    if (ok) out.push_back(s);
  }
  return out;
}

std::vector<int> expand(SlotRange r) {
  std::vector<int> out;
  for (int s = r.first; s <= r.last; ++s) out.push_back(s);
  return out;
}

}  // namespace

TEST(CihInit, PayloadByRole) {
  const auto inst = two_pair();
  EXPECT_EQ(cih_init(inst, 0).payload, (std::vector<double>{0, 0}));
  EXPECT_EQ(cih_init(inst, 1).payload, (std::vector<double>{1, 1}));
  EXPECT_EQ(cih_init(inst, 3).payload, (std::vector<double>{0, -1}));
  EXPECT_EQ(cih_init(inst, 5).partial, (std::vector<NodeId>{0, 0}));
}

TEST(FeasibleSlots, FreshTourSingleSlot) {
  const auto inst = two_pair();
  EXPECT_EQ(feasible_slots(inst, cih_init(inst, 0), 1), (SlotRange{0, 0}));
}

TEST(FeasibleSlots, DeliveryAfterItsPickup) {
  const auto inst = two_pair(1.0);
  const auto state = build(inst, 0, {{1, 0}});
  EXPECT_EQ(feasible_slots(inst, state, 3), (SlotRange{1, 1}));
  EXPECT_TRUE(feasible_slots(inst, state, 4).empty());
}

TEST(FeasibleSlots, SuffixMaxBlocksEarlySlots) {
  const auto inst = two_pair(1.0);
  const auto state = build(inst, 0, {{1, 0}, {3, 1}});
  ASSERT_EQ(state.partial, (std::vector<NodeId>{0, 1, 3, 0}));
  ASSERT_EQ(state.payload, (std::vector<double>{0, 1, 0, 0}));
  EXPECT_EQ(feasible_slots(inst, state, 2), (SlotRange{2, 2}));
}

TEST(FeasibleSlots, RejectsNodeAlreadyPlaced) {
  const auto inst = two_pair();
  EXPECT_THROW(feasible_slots(inst, cih_init(inst, 0), 0), InputError);
}

TEST(InsertionRatio, Examples) {
  const auto line = Instance::from_points({{0, 0}, {1, 0}, {2, 0}}, {1.0}, 1.0);
  EXPECT_EQ(insertion_ratio(line, 0, 1, 2), 1.0);
  EXPECT_EQ(insertion_ratio(line, 0, 1, 0), 2.0);  // zero denominator: round trip
  const auto tri = Instance::from_points({{0, 0}, {0, 3}, {4, 0}}, {1.0}, 1.0);
  EXPECT_EQ(insertion_ratio(tri, 0, 1, 2), 2.0);
}

TEST(ApplyInsertion, PrefixSumUpdate) {
  const auto inst = fixtures::one_pair();
  auto state = build(inst, 0, {{1, 0}});
  EXPECT_EQ(state.partial, (std::vector<NodeId>{0, 1, 0}));
  EXPECT_EQ(state.payload, (std::vector<double>{0, 1, 1}));
  EXPECT_EQ(state.cost_so_far, 6.0);
  state = apply_insertion(state, {2, 1, 0.0}, inst);
  EXPECT_EQ(state.partial, (std::vector<NodeId>{0, 1, 2, 0}));
  EXPECT_EQ(state.payload, (std::vector<double>{0, 1, 0, 0}));
  EXPECT_EQ(state.cost_so_far, 12.0);
}

TEST(ApplyInsertion, InfeasibleSlotIsContractViolation) {
  const auto inst = two_pair(1.0);
  const auto state = build(inst, 0, {{1, 0}});
  EXPECT_THROW(apply_insertion(state, {2, 0, 0.0}, inst), InvariantError);
  EXPECT_THROW(apply_insertion(state, {1, 0, 0.0}, inst), InvariantError);
}

TEST(Cih, OnePairForcedTour) {
  const auto c = cih_from(fixtures::one_pair(), 0);
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c.tour->sequence, (std::vector<NodeId>{0, 1, 2, 0}));
}

// Hand simulation, Q = 2:
//   [0,0]      P1 round trip 2 < P2 4                       -> [0,1,0]
//   [0,1,0]    D1 after P1: 1+sqrt2; P2 anywhere: 3          -> [0,1,3,0]
//   [0,1,3,0]  P2 after P1 or after D1 both 1+sqrt2; earlier -> [0,1,2,3,0]
//   D2 after P2: 2/sqrt2 = sqrt2 beats (1+sqrt5)/sqrt2      -> [0,1,2,4,3,0]
TEST(Cih, FixtureHandSimulated) {
  const auto c = cih_from(two_pair(2.0), 0);
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c.tour->sequence, (std::vector<NodeId>{0, 1, 2, 4, 3, 0}));
  EXPECT_NEAR(c.tour->cost, 4.0 + kSqrt2, 1e-12);
}

TEST(Cih, FixtureTightCapacity) {
  const auto c = cih_from(two_pair(1.0), 0);
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c.tour->sequence, (std::vector<NodeId>{0, 1, 3, 2, 4, 0}));
  EXPECT_NEAR(c.tour->cost, 3.0 + kSqrt2 + std::sqrt(5.0), 1e-12);
}

TEST(Cih, FirstInsertionFromDeliveryIsAPickup) {
  const auto inst = generate(fixtures::load_cloud("eil51.tsp"), {Direction::DeliveriesCentral, 10}).instance;
  for (NodeId init = inst.pairs() + 1; init <= 2 * inst.pairs(); ++init) {
    const auto choice = cheapest_insertion(inst, cih_init(inst, init));
    ASSERT_TRUE(choice.has_value());
    EXPECT_NE(inst.role(choice->node).kind, RoleKind::Delivery);
  }
}

TEST(CihBest, MinOverStarts) {
  const auto inst = two_pair();
  const auto r = cih_best(inst, 1);
  ASSERT_TRUE(r.ok());
  for (const auto& c : r.per_init) {
    if (c.ok()) {
      EXPECT_LE(r.best->cost, c.tour->cost);
    }
  }
  const auto one = cih_best(fixtures::one_pair(), 1);
  EXPECT_EQ(one.best->cost, 12.0);
}

TEST(CihBest, Eil51AllCapacities) {
  const auto cloud = fixtures::load_cloud("eil51.tsp");
  for (int q : {2, 4, 6, 8, 10}) {
    const auto inst = generate(cloud, {Direction::PickupsCentral, q}).instance;
    const auto r = cih_best(inst, 1);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.per_init.size(), 51u);
    for (const auto& c : r.per_init) {
      if (c.ok()) {
        EXPECT_TRUE(validate(inst, *c.tour).feasible);
      }
    }
  }
}

TEST(CihBest, OverloadedStartDeadEnds) {
  const auto tiny = Instance::from_points({{0, 0}, {1, 0}, {2, 0}}, {2.0}, 1.0);
  const auto r = cih_best(tiny, 1);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.dead_ends, 3);
}

// Random insertion sequences: windows match the per-slot check, payloads
// match a from-scratch profile, bookkeeping matches a recomputed cost.
TEST(CihProperty, StateConsistency) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const int pairs = 1 + static_cast<int>(seed % 6);
    const auto inst = fixtures::random_instance(seed, pairs, 1.0 + seed % 3);
    for (NodeId init = 0; init < inst.node_count(); ++init) {
      auto state = cih_init(inst, init);
      while (true) {
        std::vector<std::pair<NodeId, int>> options;
        for (NodeId i = 0; i < inst.node_count(); ++i) {
          if (state.contains(i)) continue;
          const auto window = feasible_slots(inst, state, i);
          ASSERT_EQ(expand(window), brute_slots(inst, state, i));
          for (int s : expand(window)) options.emplace_back(i, s);
        }
        if (options.empty()) break;
        const auto [node, slot] = options[rng() % options.size()];
        state = apply_insertion(state, {node, slot, 0.0}, inst);
        ASSERT_EQ(state.payload, payload_profile(inst, state.partial).entries);
        ASSERT_NEAR(state.cost_so_far, tour_cost(inst, state.partial), 1e-9);
        for (std::size_t r = 0; r + 1 < state.partial.size(); ++r) {
          ASSERT_EQ(state.position[static_cast<std::size_t>(state.partial[r])], static_cast<int>(r));
        }
        for (double y : state.payload) ASSERT_LE(y, inst.capacity() + 1e-9);
      }
    }
  }
}

// The chosen insertion is no worse than any feasible (node, slot).
TEST(CihProperty, RatioRuleSound) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = fixtures::random_instance(seed, 2 + static_cast<int>(seed % 5), 1.0 + seed % 3);
    for (NodeId init = 0; init < inst.node_count(); ++init) {
      auto state = cih_init(inst, init);
      while (const auto choice = cheapest_insertion(inst, state)) {
        for (NodeId i = 0; i < inst.node_count(); ++i) {
          if (state.contains(i)) continue;
          for (int s : expand(feasible_slots(inst, state, i))) {
            const double g = insertion_ratio(inst, state.partial[s], i, state.partial[s + 1]);
            EXPECT_LE(choice->ratio, g * (1 + 1e-12));
          }
        }
        state = apply_insertion(state, *choice, inst);
      }
    }
  }
}

TEST(CihProperty, EveryTourValidates) {
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    const auto inst = fixtures::random_instance(seed, 1 + static_cast<int>(seed % 8), 1.0 + seed % 4, MetricMode::ExactEuclidean, 100.0);
    const auto r = cih_best(inst, 1);
    for (const auto& c : r.per_init) {
      if (c.ok()) {
        EXPECT_TRUE(fixtures::reference_feasible(inst, c.tour->sequence));
      }
    }
  }
}

TEST(CihProperty, ScalingKeepsSequence) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = fixtures::random_instance(seed, 6, 2, MetricMode::ExactEuclidean, 10.0);
    for (double alpha : {0.1, 7.0, 1000.0}) {
      const auto big = inst.scaled(alpha);
      for (NodeId init = 0; init < inst.node_count(); ++init) {
        const auto a = cih_from(inst, init);
        const auto b = cih_from(big, init);
        ASSERT_EQ(a.ok(), b.ok());
        if (!a.ok()) continue;
        EXPECT_EQ(a.tour->sequence, b.tour->sequence);
        EXPECT_NEAR(b.tour->cost / a.tour->cost, alpha, 1e-9 * alpha);
      }
    }
  }
}

TEST(CihProperty, Deterministic) {
  const auto inst = generate(fixtures::load_cloud("berlin52.tsp"), {Direction::DeliveriesCentral, 4}).instance;
  const auto a = cih_best(inst, 1);
  const auto b = cih_best(inst, 3);
  for (std::size_t k = 0; k < a.per_init.size(); ++k) EXPECT_EQ(a.per_init[k].tour, b.per_init[k].tour);
}
