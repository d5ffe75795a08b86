#ifndef EVTRACK_DVS_SYNTH_HPP
#define EVTRACK_DVS_SYNTH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "evtrack/event_model.hpp"
#include "evtrack/hand_tracker.hpp"

namespace evtrack {

struct Waypoint {
    std::uint64_t t = 0; // microseconds
    double x_cm = 0;
    double y_cm = 0;
    double z_cm = 0;
};

/// A square object of known physical size moving along a piecewise-linear
/// 3D path, observed by a pinhole camera at the given scale. Events appear
/// on the projected outline at edge_event_rate (per second) plus uniform
/// background noise at noise_rate.
struct SceneSpec {
    SensorGeometry geometry;
    double focal_px = 120.0;
    double object_size_cm = 7.0;
    std::vector<Waypoint> path;
    double edge_event_rate = 0;
    double noise_rate = 0;
    std::uint64_t seed = 0;
};

struct SyntheticScene {
    EventStream events;
    Trajectory truth; // sampled at the waypoints
};

/// Object position at time t, linearly interpolated between waypoints and
/// clamped to the path ends.
WorldPoint path_position(std::span<const Waypoint> path, double t_us);

/// Seed-deterministic event stream plus its ground-truth trajectory.
/// Outline samples falling outside the frame are dropped.
SyntheticScene generate(const SceneSpec& spec);

/// Scene config text: `<key> <value>` lines (width, height, focal_px,
/// object_size_cm, edge_event_rate, noise_rate, seed) and one
/// `waypoint <t_us> <x_cm> <y_cm> <z_cm>` line per path vertex.
SceneSpec read_scene_spec(std::istream& in);

} // namespace evtrack

#endif // EVTRACK_DVS_SYNTH_HPP
