#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "vcsim/controller.hpp"

using namespace vcsim;

namespace {

EdgeNode make_edge(int held = 0) {
  EdgeNode edge(749070.0, 100);
  Task t;
  t.workload_mi = 500.0;
  t.input_size_bytes = t.result_size_bytes = 4000;
  for (int i = 0; i < held; ++i) edge.submit(t, 0.0);
  return edge;
}

}  // namespace

TEST(Registry, NewBeaconAddsEntry) {
  BeaconRegistry reg;
  reg.on_beacon({7, 0.0, true}, 1.0);
  EXPECT_EQ(reg.size(), 1u);
  EXPECT_TRUE(reg.contains(7));
}

TEST(Registry, RepeatBeaconRefreshesWithoutGrowth) {
  BeaconRegistry reg;
  reg.on_beacon({7, 0.0, true}, 1.0);
  reg.on_beacon({7, 0.0, true}, 1.4);
  EXPECT_EQ(reg.size(), 1u);
  // A later eviction pass relative to the refreshed time keeps it.
  reg.evict_stale(1.8, 0.5);
  EXPECT_TRUE(reg.contains(7));
}

TEST(Registry, BusyVehicleRetainedButNotSelectable) {
  BeaconRegistry reg;
  reg.on_beacon({3, 0.0, false}, 1.0);
  EXPECT_EQ(reg.size(), 1u);
  EXPECT_TRUE(reg.free_vehicles().empty());
}

TEST(Registry, EvictionBoundary) {
  BeaconRegistry reg;
  reg.on_beacon({1, 0.0, true}, 0.0);
  reg.on_beacon({2, 0.0, true}, 0.400);
  reg.on_beacon({3, 0.0, true}, 0.499);

  // now = 0.501: vehicle 1 is 0.501 stale -> evicted; 0.101 and 0.002 stay.
  auto removed = reg.evict_stale(0.501, 0.5);
  ASSERT_EQ(removed.size(), 1u);
  EXPECT_EQ(removed[0], 1);
  EXPECT_FALSE(reg.contains(1));
  EXPECT_TRUE(reg.contains(2));
  EXPECT_TRUE(reg.contains(3));
}

TEST(Registry, ExactlyAtStalenessSurvives) {
  BeaconRegistry reg;
  reg.on_beacon({1, 0.0, true}, 1.0);
  reg.evict_stale(1.5, 0.5);  // age exactly 0.500: strict inequality evicts
  EXPECT_TRUE(reg.contains(1));
  reg.evict_stale(1.5000001, 0.5);
  EXPECT_FALSE(reg.contains(1));
}

TEST(Registry, FreshnessAfterEviction) {
  BeaconRegistry reg;
  for (int v = 0; v < 20; ++v) reg.on_beacon({v, 0.0, true}, 0.05 * v);
  reg.evict_stale(1.2, 0.5);
  EXPECT_LE(reg.max_staleness(1.2), 0.5);
}

TEST(Decide, ECFirstPrefersEdge) {
  BeaconRegistry reg;
  RngSet rng(1);
  RngStream& sel = rng.create("vehicle-selection");
  EdgeNode edge = make_edge(40);
  Destination d = decide(Strategy::ECFirst, 1.0, reg, 0.5, edge, sel);
  EXPECT_EQ(d.kind, Destination::Kind::Edge);
}

TEST(Decide, ECFirstFallsBackToCloudWhenEdgeFull) {
  BeaconRegistry reg;
  RngSet rng(1);
  RngStream& sel = rng.create("vehicle-selection");
  EdgeNode edge = make_edge(100);
  Destination d = decide(Strategy::ECFirst, 1.0, reg, 0.5, edge, sel);
  EXPECT_EQ(d.kind, Destination::Kind::Cloud);
}

TEST(Decide, VCCFirstWithEmptyRegistryUsesCloud) {
  BeaconRegistry reg;
  RngSet rng(1);
  RngStream& sel = rng.create("vehicle-selection");
  EdgeNode edge = make_edge();
  Destination d = decide(Strategy::VCCFirst, 1.0, reg, 0.5, edge, sel);
  EXPECT_EQ(d.kind, Destination::Kind::Cloud);
}

TEST(Decide, VCCFirstNeverPicksEdge) {
  BeaconRegistry reg;
  reg.on_beacon({5, 0.0, true}, 1.0);
  RngSet rng(1);
  RngStream& sel = rng.create("vehicle-selection");
  EdgeNode edge = make_edge();
  for (int i = 0; i < 50; ++i) {
    Destination d = decide(Strategy::VCCFirst, 1.0, reg, 0.5, edge, sel);
    EXPECT_NE(d.kind, Destination::Kind::Edge);
  }
}

TEST(Decide, SelectionReplaysUnderSameSeed) {
  BeaconRegistry reg;
  for (int v : {3, 7, 9}) reg.on_beacon({v, 0.0, true}, 1.0);
  EdgeNode edge = make_edge();
  RngSet rng_a(42), rng_b(42);
  Destination a = decide(Strategy::VCCFirst, 1.0, reg, 0.5, edge, rng_a.create("sel"));
  Destination b = decide(Strategy::VCCFirst, 1.0, reg, 0.5, edge, rng_b.create("sel"));
  EXPECT_EQ(a.kind, Destination::Kind::Vehicle);
  EXPECT_EQ(a.vehicle_id, b.vehicle_id);
}

TEST(Decide, EvictsBeforeSelecting) {
  BeaconRegistry reg;
  reg.on_beacon({1, 0.0, true}, 0.0);    // stale by decision time
  reg.on_beacon({2, 0.0, true}, 0.95);   // fresh
  EdgeNode edge = make_edge();
  RngSet rng(3);
  RngStream& sel = rng.create("sel");
  for (int i = 0; i < 20; ++i) {
    Destination d = decide(Strategy::VCCFirst, 1.0, reg, 0.5, edge, sel);
    ASSERT_EQ(d.kind, Destination::Kind::Vehicle);
    EXPECT_EQ(d.vehicle_id, 2);
  }
}

TEST(Decide, UniformSelectionOverFreeSet) {
  // 10^4 decisions over a static 3-vehicle free set: each frequency within
  // 3 sigma of 1/3.
  BeaconRegistry reg;
  for (int v : {3, 7, 9}) reg.on_beacon({v, 0.0, true}, 1.0);
  EdgeNode edge = make_edge();
  RngSet rng(7);
  RngStream& sel = rng.create("sel");
  std::map<int, int> counts;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    Destination d = decide(Strategy::VCCFirst, 1.0, reg, 0.5, edge, sel);
    ASSERT_EQ(d.kind, Destination::Kind::Vehicle);
    ++counts[d.vehicle_id];
  }
  double p = 1.0 / 3.0;
  double sigma = std::sqrt(p * (1.0 - p) / n);
  for (int v : {3, 7, 9}) {
    double freq = counts[v] / static_cast<double>(n);
    EXPECT_NEAR(freq, p, 3.0 * sigma);
  }
}
