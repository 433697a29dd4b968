#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vcsim/config.hpp"
#include "vcsim/rng.hpp"

namespace vcsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance_sq(const Vec2& a, const Vec2& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Coverage is a closed disk: a point exactly on the boundary is covered.
// Compared in squared form so the boundary case is exact.
inline bool in_coverage(const Vec2& pos, const Vec2& ap, double radius_m) {
  if (radius_m <= 0.0) throw std::invalid_argument("in_coverage: radius must be > 0");
  return distance_sq(pos, ap) <= radius_m * radius_m;
}

// Orthogonal street grid: a 200 m x 200 m block with two vertical and two
// horizontal streets at offsets 50 m and 150 m, each carrying one lane per
// direction, and the access point at the center. Streets wrap toroidally,
// so the vehicle population is constant.
struct RoadNetwork {
  static constexpr double kExtent = 200.0;
  static constexpr std::array<double, 2> kStreetOffsets = {50.0, 150.0};

  Vec2 ap{kExtent / 2.0, kExtent / 2.0};

  static int street_count() { return 4; }
  static int lane_count() { return 8; }
};

inline RoadNetwork build_network(const SimConfig&) { return RoadNetwork{}; }

// A directed lane: vertical lanes run along y at fixed x, horizontal lanes
// along x at fixed y.
struct Lane {
  enum class Axis { Vertical, Horizontal };
  Axis axis = Axis::Vertical;
  double offset = 50.0;  // the fixed coordinate
  int dir = +1;          // travel direction along the free coordinate
};

struct VehicleState {
  int vehicle_id = 0;
  Lane lane;
  double s = 0.0;  // position along the lane's free coordinate, in [0, 200)
  double speed_mps = 0.0;

  Vec2 position() const {
    return lane.axis == Lane::Axis::Vertical ? Vec2{lane.offset, s} : Vec2{s, lane.offset};
  }
};

namespace detail {

inline double wrap_coord(double s) {
  double w = std::fmod(s, RoadNetwork::kExtent);
  return w < 0.0 ? w + RoadNetwork::kExtent : w;
}

// Distance to the next intersection strictly ahead of s in direction dir.
// Returns the distance and the intersection coordinate.
inline std::pair<double, double> next_intersection(double s, int dir) {
  double best = RoadNetwork::kExtent + 1.0;
  double coord = 0.0;
  for (double c : RoadNetwork::kStreetOffsets) {
    double d = dir > 0 ? wrap_coord(c - s) : wrap_coord(s - c);
    if (d == 0.0) d = RoadNetwork::kExtent;  // already there: next lap
    if (d < best) {
      best = d;
      coord = c;
    }
  }
  return {best, coord};
}

}  // namespace detail

// Moves a vehicle along its lane for dt seconds. At each intersection the
// continuation is drawn uniformly from the three legal options: straight on,
// or onto the crossing street in either direction (no U-turns; the grid has
// no dead ends). Street ends wrap around to the opposite edge of the same
// street.
inline VehicleState advance(VehicleState state, double dt, RngStream& rng) {
  if (dt < 0.0) throw std::invalid_argument("advance: dt must be >= 0");
  double remaining = state.speed_mps * dt;
  while (remaining > 0.0) {
    auto [d_next, coord] = detail::next_intersection(state.s, state.lane.dir);
    if (remaining < d_next) {
      state.s = detail::wrap_coord(state.s + state.lane.dir * remaining);
      break;
    }
    // Arrive exactly at the intersection, then pick the continuation.
    remaining -= d_next;
    state.s = coord;
    std::size_t turn = rng.uniform_index(3);
    if (turn != 0) {
      double along = state.lane.offset;  // position along the crossing street
      state.lane.axis = state.lane.axis == Lane::Axis::Vertical ? Lane::Axis::Horizontal
                                                                : Lane::Axis::Vertical;
      state.lane.offset = coord;
      state.lane.dir = turn == 1 ? +1 : -1;
      state.s = along;
    }
  }
  return state;
}

// Uniform placement over the eight directed lanes.
inline VehicleState random_vehicle_state(int vehicle_id, double speed_mps, RngStream& rng) {
  VehicleState v;
  v.vehicle_id = vehicle_id;
  v.speed_mps = speed_mps;
  std::size_t lane_idx = rng.uniform_index(8);
  v.lane.axis = lane_idx < 4 ? Lane::Axis::Vertical : Lane::Axis::Horizontal;
  v.lane.offset = RoadNetwork::kStreetOffsets[(lane_idx / 2) % 2];
  v.lane.dir = (lane_idx % 2 == 0) ? +1 : -1;
  v.s = rng.uniform(0.0, RoadNetwork::kExtent);
  return v;
}

// Uniform placement inside the coverage disk (pedestrians sit still).
inline Vec2 random_point_in_disk(const Vec2& center, double radius, RngStream& rng) {
  double r = radius * std::sqrt(rng.uniform());
  double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

}  // namespace vcsim
