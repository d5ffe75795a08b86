#include <doctest.h>

#include <cmath>

#include "evtrack/dvs_synth.hpp"
#include "evtrack/hand_tracker.hpp"
#include "evtrack/trajectory_eval.hpp"

using namespace evtrack;

namespace {

// waypoints every step_us along a piecewise-linear route, so ground truth is
// densely sampled for alignment
std::vector<Waypoint> densify(const std::vector<Waypoint>& route, std::uint64_t step_us) {
    std::vector<Waypoint> out;
    const std::uint64_t t0 = route.front().t;
    const std::uint64_t t1 = route.back().t;
    for (std::uint64_t t = t0; t <= t1; t += step_us) {
        const WorldPoint p = path_position(route, static_cast<double>(t));
        out.push_back({t, p.x, p.y, p.z});
    }
    if (out.back().t != t1) {
        const WorldPoint p = path_position(route, static_cast<double>(t1));
        out.push_back({t1, p.x, p.y, p.z});
    }
    return out;
}

} // namespace

TEST_CASE("calibration fit and depth mapping agree on noiseless records") {
    const double f = 118.0;
    const double s = 7.0;
    std::vector<CalibrationRecord> records;
    for (double d = 35.0; d <= 90.0; d += 2.5) {
        records.push_back({d, f * s / d});
    }
    const auto model = fit_calibration(records, s);
    CHECK(model.focal_px == doctest::Approx(f).epsilon(1e-6));

    // full inversion at the working distance
    const double side = projected_side_px(60.0, model);
    const double z = model.focal_px * model.object_size_cm / side;
    CHECK(z == doctest::Approx(60.0).epsilon(1e-6));
}

TEST_CASE("a blob translating at constant depth tracks in the image plane") {
    SceneSpec spec;
    spec.geometry = {240, 180};
    spec.focal_px = 120.0;
    spec.object_size_cm = 7.0;
    spec.edge_event_rate = 98'000.0;
    spec.noise_rate = 2'000.0;
    spec.seed = 2024;
    const std::vector<Waypoint> route = {
        {0, -6.0, 0.0, 60.0}, {1'200'000, 6.0, 0.0, 60.0}, {2'400'000, -6.0, 0.0, 60.0}};
    spec.path = densify(route, 40'000);

    const auto scene = generate(spec);
    CalibrationModel calib{spec.focal_px, spec.object_size_cm, 120.0, 90.0};
    TrackStats stats;
    const auto traj =
        track(scene.events, FramingPolicy::by_count(3000), 3, calib, TrackerConfig{}, &stats);

    CHECK(stats.frames >= 60);
    REQUIRE(traj.size() >= 50);

    double err_sum = 0;
    for (const auto& p : traj.points) {
        err_sum += std::abs(p.z - 60.0);
    }
    CHECK(err_sum / static_cast<double>(traj.size()) <= 5.0);

    const auto xy = dtw(traj, scene.truth, DistancePlane::XY);
    CHECK(xy.avg_distance <= 1.5);
}

TEST_CASE("an approaching blob yields strictly decreasing smoothed depth") {
    SceneSpec spec;
    spec.geometry = {240, 180};
    spec.focal_px = 120.0;
    spec.object_size_cm = 7.0;
    // slow frame cadence: each smoothing window spans a large depth change,
    // so the trend dominates the one-pixel size quantization
    spec.edge_event_rate = 50'000.0;
    spec.noise_rate = 1'000.0;
    spec.seed = 5;
    const std::vector<Waypoint> route = {{0, 0.0, 0.0, 80.0}, {2'400'000, 0.0, 0.0, 45.0}};
    spec.path = densify(route, 50'000);

    const auto scene = generate(spec);
    CalibrationModel calib{spec.focal_px, spec.object_size_cm, 120.0, 90.0};
    TrackerConfig config;
    const auto traj = track(scene.events, FramingPolicy::by_count(3000), 3, calib, config);

    REQUIRE(traj.size() >= 30);
    for (std::size_t i = static_cast<std::size_t>(config.smoothing_length) + 1;
         i < traj.points.size(); ++i) {
        CHECK(traj.points[i].z < traj.points[i - 1].z);
    }
}
