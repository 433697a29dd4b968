#include <gtest/gtest.h>

#include <vector>

#include "vcsim/medium.hpp"
#include "vcsim/rng.hpp"

using vcsim::MediumModel;

TEST(Medium, IdleTransferTimeIsArithmetic) {
  // 4000 bytes at 6 Mb/s, zero overhead: 32000 / 6e6 s = 5.333 ms.
  MediumModel m("p_up", 6e6, 0.0);
  double delivered = m.enqueue_frame(4000, 0.0);
  EXPECT_NEAR(delivered, 32000.0 / 6e6, 1e-15);
  EXPECT_NEAR(delivered, 5.3333333e-3, 1e-9);
}

TEST(Medium, SecondFrameQueuesFifo) {
  MediumModel m("p_up", 6e6, 0.0);
  double first = m.enqueue_frame(4000, 0.0);
  double second = m.enqueue_frame(4000, 0.0);
  EXPECT_NEAR(first, 5.3333333e-3, 1e-9);
  EXPECT_NEAR(second, 10.6666667e-3, 1e-9);
}

TEST(Medium, OverheadFloorsDeliveryTime) {
  // 1-bit-ish frame on an essentially infinite pipe: overhead dominates.
  MediumModel m("ax_up", 1e15, 0.004);
  double delivered = m.enqueue_frame(1, 2.0);
  EXPECT_NEAR(delivered, 2.004, 1e-12);
}

TEST(Medium, PathTimeExamples) {
  MediumModel fast("ax_up", 100e6, 0.0);
  EXPECT_NEAR(fast.path_time(4000), 0.32e-3, 1e-12);
  MediumModel slow("p_up", 6e6, 0.0);
  EXPECT_NEAR(slow.path_time(4000), 5.3333333e-3, 1e-9);
  // Linearity at zero overhead.
  EXPECT_NEAR(slow.path_time(8000), 2.0 * slow.path_time(4000), 1e-15);
}

TEST(Medium, WorkConservation) {
  MediumModel m("p_up", 6e6, 0.0);
  m.enqueue_frame(4000, 0.0);  // busy until ~5.33 ms
  double delivered = m.enqueue_frame(4000, 1.0);  // idle again: starts at 1.0
  EXPECT_NEAR(delivered, 1.0 + 32000.0 / 6e6, 1e-12);
}

TEST(Medium, RejectsBadArguments) {
  MediumModel m("p_up", 6e6, 0.0);
  EXPECT_THROW(m.enqueue_frame(0, 0.0), std::invalid_argument);
  EXPECT_THROW(m.enqueue_frame(-4, 0.0), std::invalid_argument);
  EXPECT_THROW(m.path_time(0), std::invalid_argument);
  EXPECT_THROW(MediumModel("x", 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(MediumModel("x", 1e6, -1.0), std::invalid_argument);
}

TEST(Medium, CnDelayDefaultsAndOverride) {
  vcsim::SimConfig cfg;
  EXPECT_EQ(vcsim::cn_delay(cfg), 0.035);
  EXPECT_EQ(2.0 * vcsim::cn_delay(cfg), 0.070);  // round trip
  cfg.cn_latency_s = 0.010;
  EXPECT_EQ(vcsim::cn_delay(cfg), 0.010);
}

// FIFO order and load monotonicity, checked over random frame patterns.
TEST(Medium, FifoOrderProperty) {
  vcsim::RngSet rng(21);
  vcsim::RngStream& s = rng.create("gen");
  for (int round = 0; round < 30; ++round) {
    MediumModel m("p_up", 5e6, 0.0005);
    double now = 0.0;
    double prev_delivery = 0.0;
    for (int i = 0; i < 100; ++i) {
      now += s.uniform(0.0, 0.004);
      long bytes = 100 + static_cast<long>(s.uniform() * 4000);
      double delivered = m.enqueue_frame(bytes, now);
      EXPECT_GE(delivered, prev_delivery);  // delivery order = submission order
      EXPECT_GE(delivered, now);
      prev_delivery = delivered;
    }
  }
}

TEST(Medium, LoadMonotonicityProperty) {
  // Replaying the same schedule with one extra frame inserted never makes
  // any later frame arrive earlier.
  vcsim::RngSet rng(22);
  vcsim::RngStream& s = rng.create("gen");
  for (int round = 0; round < 20; ++round) {
    std::vector<std::pair<double, long>> frames;
    double now = 0.0;
    for (int i = 0; i < 50; ++i) {
      now += s.uniform(0.0, 0.006);
      frames.emplace_back(now, 200 + static_cast<long>(s.uniform() * 3000));
    }
    std::size_t insert_at = s.uniform_index(frames.size());

    MediumModel base("m", 6e6, 0.0002), loaded("m", 6e6, 0.0002);
    std::vector<double> base_deliveries, loaded_deliveries;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      base_deliveries.push_back(base.enqueue_frame(frames[i].second, frames[i].first));
      if (i == insert_at) loaded.enqueue_frame(1500, frames[i].first);
      loaded_deliveries.push_back(loaded.enqueue_frame(frames[i].second, frames[i].first));
    }
    for (std::size_t i = 0; i < frames.size(); ++i) {
      EXPECT_GE(loaded_deliveries[i], base_deliveries[i]);
    }
  }
}

TEST(Medium, DefaultCalibrationKeepsWaveSlowerThanWifi) {
  vcsim::SimConfig cfg;
  MediumModel ax("ax", cfg.ax_throughput_bps, cfg.per_frame_overhead_s);
  MediumModel p("p", cfg.p_throughput_bps, cfg.per_frame_overhead_s);
  EXPECT_GT(p.path_time(cfg.task_size_bytes), ax.path_time(cfg.task_size_bytes));
}
