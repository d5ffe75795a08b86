#ifndef EVTRACK_ROI_FINDER_HPP
#define EVTRACK_ROI_FINDER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "evtrack/frame_builder.hpp"

namespace evtrack {

/// Axis-aligned rectangle within the sensor frame, inclusive bounds.
struct Roi {
    int x_min = 0;
    int x_max = 0;
    int y_min = 0;
    int y_max = 0;

    int x_extent() const noexcept { return x_max - x_min + 1; }
    int y_extent() const noexcept { return y_max - y_min + 1; }
    std::int64_t area() const noexcept {
        return static_cast<std::int64_t>(x_extent()) * y_extent();
    }
    bool is_square() const noexcept { return x_extent() == y_extent(); }
    bool contains(const Roi& other) const noexcept {
        return x_min <= other.x_min && other.x_max <= x_max && y_min <= other.y_min &&
               other.y_max <= y_max;
    }

    friend bool operator==(const Roi&, const Roi&) = default;
};

struct RoiFeatures {
    double center_x = 0;
    double center_y = 0;
    int side = 0;
    double active_fraction = 0; // pixels with count > 0 over side^2
};

enum class Axis { Columns, Rows };

/// Per-column (or per-row) totals of the pixel counts.
std::vector<std::uint64_t> axis_sums(const IntensityImage& image, Axis axis);

/// First and last index whose sum is strictly above the mean of `sums`.
/// Absent when nothing exceeds the mean (constant vectors).
std::optional<std::pair<int, int>> bounds_simple(std::span<const std::uint64_t> sums);

/// Boundaries requiring a run of c consecutive above-mean sums: the smallest
/// index starting such a run and the largest index ending one. c = 1
/// degenerates to bounds_simple. Mirrored at the right edge so both
/// boundaries obey the same rule.
std::optional<std::pair<int, int>> bounds_consecutive(std::span<const std::uint64_t> sums,
                                                      int c);

/// Shrinks the longer axis of `roi` to the shorter one's inclusive extent,
/// keeping the window that maximizes the whole-image sums over that axis
/// (ties take the smallest start). Square input comes back unchanged.
Roi squarify(const IntensityImage& image, const Roi& roi);

/// Column and row bounds via the consecutive-run rule, then the square rule.
/// Absent when either axis has no qualifying run; callers treat that as
/// "no distinct region / static scene".
std::optional<Roi> extract_roi(const IntensityImage& image, int c);

RoiFeatures roi_features(const IntensityImage& image, const Roi& roi);

} // namespace evtrack

#endif // EVTRACK_ROI_FINDER_HPP
