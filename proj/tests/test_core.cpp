#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"

using namespace mpdtsp;
using fixtures::two_pair;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt5 = std::sqrt(5.0);

std::vector<double> entries(const Instance& inst, std::vector<NodeId> seq) { return payload_profile(inst, seq).entries; }

}  // namespace

TEST(ArcCost, DiagonalIsZero) {
  const auto inst = two_pair();
  for (NodeId i = 0; i < inst.node_count(); ++i) EXPECT_EQ(arc_cost(inst, i, i), 0.0);
}

TEST(ArcCost, RoundedPythagoreanTriple) {
  const auto inst = Instance::from_points({{0, 0}, {3, 4}, {1, 1}}, {1.0}, 1.0, MetricMode::TsplibRounded);
  EXPECT_EQ(arc_cost(inst, 0, 1), 5.0);
  EXPECT_EQ(arc_cost(inst, 0, 2), 1.0);  // nint(1.414...)
}

TEST(ArcCost, AliasMapsToDepotAndRangeIsChecked) {
  const auto inst = two_pair();
  EXPECT_EQ(inst.terminal_alias(), 5);
  for (NodeId j = 0; j < inst.node_count(); ++j) EXPECT_EQ(arc_cost(inst, 5, j), arc_cost(inst, 0, j));
  EXPECT_THROW(arc_cost(inst, 6, 0), InputError);
  EXPECT_THROW(arc_cost(inst, -1, 0), InputError);
}

TEST(ArcCost, SymmetricInBothCoordinateModes) {
  for (auto mode : {MetricMode::ExactEuclidean, MetricMode::TsplibRounded}) {
    const auto inst = fixtures::random_instance(7, 4, 2, mode, 100.0);
    for (NodeId i = 0; i < inst.node_count(); ++i) {
      for (NodeId j = 0; j < inst.node_count(); ++j) EXPECT_EQ(arc_cost(inst, i, j), arc_cost(inst, j, i));
    }
  }
}

TEST(Instance, RolesAndLoads) {
  const auto inst = two_pair();
  EXPECT_EQ(inst.role(0).kind, RoleKind::Depot);
  EXPECT_EQ(inst.role(2).kind, RoleKind::Pickup);
  EXPECT_EQ(inst.role(2).pair, 2);
  EXPECT_EQ(inst.role(3).kind, RoleKind::Delivery);
  EXPECT_EQ(inst.role(3).pair, 1);
  EXPECT_EQ(inst.role(5).kind, RoleKind::Depot);
  for (int k = 1; k <= inst.pairs(); ++k) EXPECT_EQ(inst.load(inst.pickup_of(k)) + inst.load(inst.delivery_of(k)), 0.0);
  EXPECT_EQ(inst.load(0), 0.0);
}

TEST(Instance, OversizedItemIsFlagged) {
  EXPECT_FALSE(two_pair(1.0).has_oversized_item());
  EXPECT_TRUE(two_pair(0.5).has_oversized_item());
}

TEST(Instance, RejectsBadInput) {
  EXPECT_THROW(Instance::from_points({{0, 0}, {1, 0}}, {1.0}, 1.0), InputError);
  EXPECT_THROW(Instance::from_points({{0, 0}, {1, 0}, {2, 0}}, {0.0}, 1.0), InputError);
  EXPECT_THROW(Instance::from_points({{0, 0}, {1, 0}, {2, 0}}, {1.0}, -1.0), InputError);
  EXPECT_THROW(Instance::from_matrix({0, 1, 1, 1, 0, 1, 1, 1, 5}, {1.0}, 1.0), InputError);
  EXPECT_THROW(Instance::from_matrix({0, -1, 1, 1, 0, 1, 1, 1, 0}, {1.0}, 1.0), InputError);
  EXPECT_NO_THROW(Instance::from_matrix({0, 1, 2, 1, 0, 3, 2, 3, 0}, {1.0}, 1.0));
}

TEST(TourCost, EmptyLoopIsZero) {
  const std::vector<NodeId> loop{0, 0};
  EXPECT_EQ(tour_cost(two_pair(), loop), 0.0);
}

TEST(TourCost, HandSummedFixtureTour) {
  // 1 + 1 + sqrt2 + 1 + sqrt5
  const std::vector<NodeId> seq{0, 1, 3, 2, 4, 0};
  EXPECT_NEAR(tour_cost(two_pair(), seq), 3.0 + kSqrt2 + kSqrt5, 1e-12);
}

TEST(TourCost, OpenSequenceIsStructuralError) {
  const std::vector<NodeId> seq{0, 1, 3, 2, 4};
  EXPECT_THROW(tour_cost(two_pair(), seq), StructuralError);
}

TEST(TourCost, ScalesWithCoordinates) {
  const auto inst = fixtures::random_instance(11, 5, 3, MetricMode::ExactEuclidean, 50.0);
  std::vector<NodeId> seq(static_cast<std::size_t>(inst.node_count()));
  std::iota(seq.begin(), seq.end(), 0);
  seq.push_back(0);
  for (double alpha : {0.5, 3.0, 10.0, 1234.5}) {
    const double base = tour_cost(inst, seq);
    EXPECT_NEAR(tour_cost(inst.scaled(alpha), seq) / base, alpha, 1e-9 * alpha);
  }
}

TEST(Payload, DepotStart) {
  EXPECT_EQ(entries(fixtures::one_pair(), {0, 1, 2, 0}), (std::vector<double>{0, 1, 0, 0}));
}

TEST(Payload, DeliveryStartUnloadsOnClose) {
  EXPECT_EQ(entries(fixtures::one_pair(), {2, 1, 0, 2}), (std::vector<double>{0, 1, 1, 0}));
}

TEST(Payload, PickupStartLoadsOnOpen) {
  EXPECT_EQ(entries(fixtures::one_pair(), {1, 2, 0, 1}), (std::vector<double>{1, 0, 0, 0}));
}

TEST(Validate, FixtureTourIsFeasible) {
  const auto report = validate(two_pair(), std::vector<NodeId>{0, 1, 2, 3, 4, 0});
  EXPECT_TRUE(report.feasible);
  EXPECT_TRUE(report.violations.empty());
}

TEST(Validate, DeliveryBeforePickup) {
  const auto report = validate(two_pair(), std::vector<NodeId>{0, 3, 1, 2, 4, 0});
  ASSERT_FALSE(report.feasible);
  ASSERT_TRUE(report.has(ViolationKind::Precedence));
  EXPECT_EQ(report.violations.front().position, 1u);
}

TEST(Validate, CapacityExceededAtSecondPickup) {
  const auto report = validate(two_pair(1.0), std::vector<NodeId>{0, 1, 2, 3, 4, 0});
  ASSERT_FALSE(report.feasible);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, ViolationKind::CapacityUpper);
  EXPECT_EQ(report.violations[0].position, 2u);
}

TEST(Validate, AliasClosesDepotTour) {
  EXPECT_TRUE(validate(two_pair(), std::vector<NodeId>{0, 1, 2, 3, 4, 5}).feasible);
}

TEST(Validate, StructuralProblemsAreReported) {
  const auto inst = two_pair();
  EXPECT_TRUE(validate(inst, std::vector<NodeId>{0, 1, 2, 3, 3, 0}).has(ViolationKind::VisitCount));
  EXPECT_TRUE(validate(inst, std::vector<NodeId>{0, 1, 2, 3, 0}).has(ViolationKind::VisitCount));
  EXPECT_TRUE(validate(inst, std::vector<NodeId>{0, 1, 2, 3, 4, 1}).has(ViolationKind::Closure));
  EXPECT_TRUE(validate(inst, std::vector<NodeId>{0, 1, 2, 9, 4, 0}).has(ViolationKind::VisitCount));
  EXPECT_TRUE(validate(inst, std::vector<NodeId>{0}).has(ViolationKind::Closure));
  EXPECT_FALSE(validate(inst, std::vector<NodeId>{}).feasible);
}

TEST(Validate, NegativeLoadIsLowerBoundViolation) {
  const auto inst = fixtures::one_pair();
  const auto report = validate(inst, std::vector<NodeId>{0, 2, 1, 0});
  EXPECT_TRUE(report.has(ViolationKind::Precedence));
  EXPECT_TRUE(report.has(ViolationKind::CapacityLower));
}

// Random complete and damaged sequences: the library validator and the
// reference walker must agree.
TEST(ValidateProperty, AgreesWithReferenceWalker) {
  std::mt19937_64 rng(2024);
  int feasible_seen = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int pairs = 1 + trial % 4;
    const auto inst = fixtures::random_instance(static_cast<std::uint64_t>(trial), pairs, 1.0 + trial % 3);
    std::vector<NodeId> seq(static_cast<std::size_t>(inst.node_count()));
    std::iota(seq.begin(), seq.end(), 0);
    std::shuffle(seq.begin(), seq.end(), rng);
    seq.push_back(seq.front());
    if (trial % 5 == 1) seq[rng() % seq.size()] = static_cast<NodeId>(rng() % (inst.node_count() + 1));
    if (trial % 7 == 2 && seq.front() == 0) seq.back() = inst.terminal_alias();
    if (trial % 11 == 3) seq.pop_back();
    const bool expected = fixtures::reference_feasible(inst, seq);
    const auto report = validate(inst, seq);
    ASSERT_EQ(report.feasible, expected) << "trial " << trial;
    ASSERT_EQ(report.feasible, report.violations.empty());
    if (expected) {
      ++feasible_seen;
      const auto prof = payload_profile(inst, seq);
      EXPECT_NEAR(prof.entries.back(), 0.0, 1e-12);
    }
  }
  EXPECT_GT(feasible_seen, 50);
}

TEST(ValidateProperty, VisitCountNeverFeasible) {
  const auto inst = two_pair(10.0);
  std::vector<NodeId> seq{0, 1, 2, 3, 4};
  do {
    auto broken = seq;
    broken.push_back(seq.front());
    broken[2] = broken[1];
    const auto report = validate(inst, broken);
    EXPECT_FALSE(report.feasible);
    EXPECT_TRUE(report.has(ViolationKind::VisitCount));
  } while (std::next_permutation(seq.begin(), seq.end()));
}

TEST(InstanceText, RoundTrip) {
  const auto inst = fixtures::random_instance(3, 3, 2, MetricMode::TsplibRounded, 100.0);
  const auto text = serialize_instance(inst);
  const auto back = parse_instance(text);
  EXPECT_EQ(serialize_instance(back), text);
  EXPECT_EQ(back.metric(), MetricMode::TsplibRounded);
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    for (NodeId j = 0; j < inst.node_count(); ++j) EXPECT_EQ(back.cost(i, j), inst.cost(i, j));
  }
}

TEST(InstanceText, FixedLayout) {
  EXPECT_EQ(serialize_instance(fixtures::one_pair()),
            "PAIRS 1\nCAPACITY 1\nMETRIC EXACT\n0 DEPOT 0 0 0 0\n1 PICKUP 1 3 0 1\n2 DELIVERY 1 3 4 -1\n");
}

TEST(InstanceText, ParseErrorsNameKeywordAndLine) {
  try {
    parse_instance("PAIRS 1\nCAPACITY 1\nMETRIC EXACT\n0 DEPOT 0 0 0 0\n1 PICKUP 1 3 0 1\n2 DELIVERY 1 3 4 -2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.keyword(), "NODE");
    EXPECT_EQ(e.line(), 6);
  }
  try {
    parse_instance("PAIRS 1\nCAPACITY 1\nMETRIC GEO\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.keyword(), "METRIC");
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(TourText, RoundTrip) {
  const auto tour = make_tour(two_pair(), {0, 1, 2, 4, 3, 0});
  EXPECT_EQ(serialize_tour(tour), "0\n1\n2\n4\n3\n0\n");
  EXPECT_EQ(parse_tour_sequence(serialize_tour(tour)), tour.sequence);
  EXPECT_THROW(parse_tour_sequence("0\nx\n"), ParseError);
}
