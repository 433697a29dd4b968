#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "vcsim/mobility.hpp"

using namespace vcsim;

namespace {

bool on_network(const Vec2& p) {
  auto on_street = [](double fixed, double along) {
    return (fixed == 50.0 || fixed == 150.0) && along >= 0.0 && along <= 200.0;
  };
  return on_street(p.x, p.y) || on_street(p.y, p.x);
}

}  // namespace

TEST(Mobility, ApSitsAtGridCenter) {
  RoadNetwork net = build_network(SimConfig{});
  EXPECT_EQ(net.ap.x, 100.0);
  EXPECT_EQ(net.ap.y, 100.0);
}

TEST(Mobility, FourStreetsEightLanes) {
  // 2 longitudinal + 2 latitudinal streets, two directed lanes each.
  EXPECT_EQ(RoadNetwork::street_count(), 4);
  EXPECT_EQ(RoadNetwork::lane_count(), 8);
}

TEST(Mobility, AllLanePointsInsideExtent) {
  RngSet rng(3);
  RngStream& s = rng.create("m");
  for (int i = 0; i < 500; ++i) {
    VehicleState v = random_vehicle_state(i, 3.0, s);
    Vec2 p = v.position();
    EXPECT_GE(p.x, 0.0);
    EXPECT_LE(p.x, 200.0);
    EXPECT_GE(p.y, 0.0);
    EXPECT_LE(p.y, 200.0);
    EXPECT_TRUE(on_network(p));
  }
}

TEST(Mobility, StraightSegmentDisplacementMatchesSpeed) {
  // 13.1 km/h = 13.1/3.6 m/s.
  RngSet rng(3);
  RngStream& s = rng.create("m");
  VehicleState v;
  v.lane = {Lane::Axis::Vertical, 50.0, +1};
  v.s = 100.0;  // mid-segment, no intersection within reach
  v.speed_mps = 13.1 / 3.6;
  VehicleState after = advance(v, 1.0, s);
  EXPECT_NEAR(after.s - v.s, 13.1 / 3.6, 1e-12);
  EXPECT_EQ(after.lane.offset, 50.0);
}

TEST(Mobility, ZeroDtLeavesStateUnchanged) {
  RngSet rng(3);
  RngStream& s = rng.create("m");
  VehicleState v = random_vehicle_state(0, 5.0, s);
  VehicleState after = advance(v, 0.0, s);
  EXPECT_EQ(after.s, v.s);
  EXPECT_EQ(after.lane.offset, v.lane.offset);
  EXPECT_EQ(after.lane.dir, v.lane.dir);
}

TEST(Mobility, IntersectionTurnReplaysUnderSameSeed) {
  VehicleState v;
  v.lane = {Lane::Axis::Vertical, 50.0, +1};
  v.s = 45.0;  // intersection at 50 ahead
  v.speed_mps = 10.0;
  RngSet rng_a(77), rng_b(77);
  VehicleState a = advance(v, 1.0, rng_a.create("m"));
  VehicleState b = advance(v, 1.0, rng_b.create("m"));
  EXPECT_EQ(a.lane.offset, b.lane.offset);
  EXPECT_EQ(a.lane.dir, b.lane.dir);
  EXPECT_EQ(a.s, b.s);
}

TEST(Mobility, NoUTurnAtIntersections) {
  // From below an intersection heading +y, the continuation can be +y on the
  // same street or +/-x on the crossing street, never -y back.
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    VehicleState v;
    v.lane = {Lane::Axis::Vertical, 50.0, +1};
    v.s = 49.0;
    v.speed_mps = 2.0;
    RngSet rng(seed);
    VehicleState after = advance(v, 1.0, rng.create("m"));
    if (after.lane.axis == Lane::Axis::Vertical) {
      EXPECT_EQ(after.lane.dir, +1);
    } else {
      EXPECT_EQ(after.lane.offset, 50.0);  // turned onto y = 50
    }
  }
}

TEST(Mobility, ToroidalWrapKeepsVehicleOnSameStreet) {
  RngSet rng(3);
  RngStream& s = rng.create("m");
  VehicleState v;
  v.lane = {Lane::Axis::Horizontal, 150.0, +1};
  v.s = 199.0;
  v.speed_mps = 2.0;
  VehicleState after = advance(v, 1.0, s);  // crosses 200 -> wraps to ~1
  EXPECT_EQ(after.lane.offset, 150.0);
  EXPECT_NEAR(after.s, 1.0, 1e-12);
}

// Path length is conserved under arbitrary sub-stepping: one advance(dt)
// lands where many small advances do, because turn draws replay identically.
TEST(Mobility, SubSteppingMatchesSingleStep) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RngSet rng_one(seed), rng_many(seed);
    RngStream& s1 = rng_one.create("m");
    RngStream& sn = rng_many.create("m");
    VehicleState v0 = random_vehicle_state(0, 13.9, s1);
    VehicleState v0b = random_vehicle_state(0, 13.9, sn);

    VehicleState one = advance(v0, 60.0, s1);
    VehicleState many = v0b;
    for (int i = 0; i < 600; ++i) many = advance(many, 0.1, sn);

    EXPECT_EQ(one.lane.offset, many.lane.offset);
    EXPECT_EQ(one.lane.dir, many.lane.dir);
    EXPECT_NEAR(one.s, many.s, 1e-7);
  }
}

TEST(Mobility, OnNetworkClosureUnderLongRuns) {
  RngSet rng(5);
  RngStream& s = rng.create("m");
  for (int rep = 0; rep < 20; ++rep) {
    VehicleState v = random_vehicle_state(rep, 13.9, s);
    for (int i = 0; i < 100; ++i) {
      v = advance(v, 0.731, s);
      EXPECT_TRUE(on_network(v.position()));
    }
  }
}

TEST(Mobility, SupportsSweepSpeeds) {
  RngSet rng(5);
  RngStream& s = rng.create("m");
  for (double kmh : {13.1, 30.0, 50.0}) {
    VehicleState v;
    v.lane = {Lane::Axis::Vertical, 150.0, -1};
    v.s = 120.0;
    v.speed_mps = kmh / 3.6;
    VehicleState after = advance(v, 0.5, s);
    EXPECT_NEAR(v.s - after.s, kmh / 3.6 * 0.5, 1e-12);
  }
}

TEST(Coverage, CenterIsCovered) {
  EXPECT_TRUE(in_coverage({100.0, 100.0}, {100.0, 100.0}, 100.0));
}

TEST(Coverage, BoundaryIsInclusive) {
  EXPECT_TRUE(in_coverage({200.0, 100.0}, {100.0, 100.0}, 100.0));
}

TEST(Coverage, JustOutsideIsNotCovered) {
  EXPECT_FALSE(in_coverage({200.001, 100.0}, {100.0, 100.0}, 100.0));
}

TEST(Coverage, RejectsNonPositiveRadius) {
  EXPECT_THROW(in_coverage({0.0, 0.0}, {0.0, 0.0}, 0.0), std::invalid_argument);
}

TEST(Coverage, DiskPlacementStaysInside) {
  RngSet rng(8);
  RngStream& s = rng.create("p");
  Vec2 center{100.0, 100.0};
  for (int i = 0; i < 2000; ++i) {
    Vec2 p = random_point_in_disk(center, 120.0, s);
    EXPECT_TRUE(in_coverage(p, center, 120.0));
  }
}
