#ifndef EVTRACK_HAND_TRACKER_HPP
#define EVTRACK_HAND_TRACKER_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "evtrack/event_model.hpp"
#include "evtrack/frame_builder.hpp"
#include "evtrack/roi_finder.hpp"

namespace evtrack {

/// Single-parameter pinhole model: an object of physical side S centimetres
/// at depth z projects to focal_px * S / z pixels.
struct CalibrationModel {
    double focal_px = 0;
    double object_size_cm = 0;
    double principal_x = 0; // pixels
    double principal_y = 0;
};

struct WorldPoint {
    double x = 0; // centimetres
    double y = 0;
    double z = 0;
};

struct PixelPoint {
    double x = 0;
    double y = 0;
};

struct TrackedPoint {
    std::int64_t frame_index = 0;
    std::uint64_t t = 0; // last event time of the frame, microseconds
    double x = 0;        // centimetres
    double y = 0;
    double z = 0;
};

struct Trajectory {
    std::vector<TrackedPoint> points;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

struct TrackerConfig {
    int smoothing_length = 20;        // frames averaged per output coordinate
    double min_active_fraction = 0.20; // inclusive validity threshold
};

struct CalibrationRecord {
    double distance_cm = 0;
    double side_px = 0;
};

/// Least-squares fit of the pinhole scale from (distance, measured side)
/// pairs; the principal point defaults to the geometry center.
CalibrationModel fit_calibration(std::span<const CalibrationRecord> records,
                                 double object_size_cm, const SensorGeometry& geometry = {});

/// Depth from the square-ROI size, then image-plane coordinates through the
/// pinhole at that depth.
WorldPoint pixel_to_world(const RoiFeatures& features, const CalibrationModel& calib);

/// Forward projection of a world point, the inverse of pixel_to_world.
PixelPoint world_to_pixel(const WorldPoint& p, const CalibrationModel& calib);

/// Projected side in pixels of the calibration-sized object at depth z_cm.
double projected_side_px(double z_cm, const CalibrationModel& calib);

bool is_valid_frame(const RoiFeatures& features, const TrackerConfig& config);

/// Moving average over the l preceding raw positions, per coordinate
/// independently. Index 0 passes through; short history averages what is
/// available. Frame index and timestamp are copied from the raw input.
Trajectory smooth(const Trajectory& raw, int l);

struct TrackStats {
    std::uint64_t frames = 0;
    std::uint64_t skipped = 0;          // no ROI or below the validity threshold
    double mean_roi_reduction = 0;      // mean of 1 - roi_area/frame_area where an ROI exists
};

/// Full pipeline: integrate frames, locate the ROI, gate on active pixels,
/// map to world coordinates, smooth.
Trajectory track(const EventStream& stream, const FramingPolicy& framing, int c,
                 const CalibrationModel& calib, const TrackerConfig& config,
                 TrackStats* stats = nullptr);

// --- file formats ---------------------------------------------------------

/// Trajectory text: `<frame_index> <t_us> <x_cm> <y_cm> <z_cm>` per line.
void write_trajectory(const Trajectory& trajectory, std::ostream& out);
Trajectory read_trajectory(std::istream& in);

/// Fitted model text: `focal_px`, `object_size_cm`, `principal_point` keys.
void write_calibration(const CalibrationModel& model, std::ostream& out);
CalibrationModel read_calibration(std::istream& in);

/// Raw measurement file: header `object_size_cm <S>`, then
/// `<distance_cm> <side_px>` lines.
struct CalibrationRecords {
    double object_size_cm = 0;
    std::vector<CalibrationRecord> records;
};
CalibrationRecords read_calibration_records(std::istream& in);
void write_calibration_records(const CalibrationRecords& records, std::ostream& out);

} // namespace evtrack

#endif // EVTRACK_HAND_TRACKER_HPP
