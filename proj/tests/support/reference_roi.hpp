#ifndef EVTRACK_TESTS_REFERENCE_ROI_HPP
#define EVTRACK_TESTS_REFERENCE_ROI_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "evtrack/frame_builder.hpp"
#include "evtrack/roi_finder.hpp"

namespace evtrack::testing {

// Brute-force reference for the ROI chain. Deliberately written the slow way:
// naive double-loop sums, long-double mean, explicit enumeration of every run
// and every candidate square window.

inline std::vector<std::uint64_t> ref_axis_sums(const IntensityImage& image, Axis axis) {
    const int w = image.geometry.width;
    const int h = image.geometry.height;
    std::vector<std::uint64_t> sums(axis == Axis::Columns ? w : h, 0);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) {
            sums[axis == Axis::Columns ? x : y] += image.at(x, y);
        }
    }
    return sums;
}

inline std::vector<bool> ref_above_mean(const std::vector<std::uint64_t>& sums) {
    long double total = 0;
    for (auto s : sums) total += static_cast<long double>(s);
    const long double mean = total / static_cast<long double>(sums.size());
    std::vector<bool> above(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) {
        above[i] = static_cast<long double>(sums[i]) > mean;
    }
    return above;
}

inline std::optional<std::pair<int, int>> ref_bounds_simple(
    const std::vector<std::uint64_t>& sums) {
    if (sums.empty()) return std::nullopt;
    const auto above = ref_above_mean(sums);
    std::optional<int> lo, hi;
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (above[i]) {
            if (!lo) lo = static_cast<int>(i);
            hi = static_cast<int>(i);
        }
    }
    if (!lo) return std::nullopt;
    return std::make_pair(*lo, *hi);
}

inline std::optional<std::pair<int, int>> ref_bounds_consecutive(
    const std::vector<std::uint64_t>& sums, int c) {
    const int n = static_cast<int>(sums.size());
    if (n == 0 || c > n) return std::nullopt;
    const auto above = ref_above_mean(sums);

    auto run_at = [&](int start) {
        for (int k = 0; k < c; ++k) {
            if (!above[start + k]) return false;
        }
        return true;
    };

    std::optional<int> lo, hi;
    for (int i = 0; i + c - 1 < n; ++i) {
        if (run_at(i)) {
            if (!lo) lo = i;
            hi = i + c - 1;
        }
    }
    if (!lo) return std::nullopt;
    return std::make_pair(*lo, *hi);
}

inline Roi ref_squarify(const IntensityImage& image, const Roi& roi) {
    const int x_ext = roi.x_max - roi.x_min + 1;
    const int y_ext = roi.y_max - roi.y_min + 1;
    if (x_ext == y_ext) return roi;

    Roi out = roi;
    if (x_ext > y_ext) {
        const auto sums = ref_axis_sums(image, Axis::Columns);
        std::uint64_t best = 0;
        int best_start = -1;
        for (int start = roi.x_min; start + y_ext - 1 <= roi.x_max; ++start) {
            std::uint64_t window = 0;
            for (int k = 0; k < y_ext; ++k) window += sums[start + k];
            if (best_start < 0 || window > best) {
                best = window;
                best_start = start;
            }
        }
        out.x_min = best_start;
        out.x_max = best_start + y_ext - 1;
    } else {
        const auto sums = ref_axis_sums(image, Axis::Rows);
        std::uint64_t best = 0;
        int best_start = -1;
        for (int start = roi.y_min; start + x_ext - 1 <= roi.y_max; ++start) {
            std::uint64_t window = 0;
            for (int k = 0; k < x_ext; ++k) window += sums[start + k];
            if (best_start < 0 || window > best) {
                best = window;
                best_start = start;
            }
        }
        out.y_min = best_start;
        out.y_max = best_start + x_ext - 1;
    }
    return out;
}

inline std::optional<Roi> ref_extract_roi(const IntensityImage& image, int c) {
    const auto xb = ref_bounds_consecutive(ref_axis_sums(image, Axis::Columns), c);
    if (!xb) return std::nullopt;
    const auto yb = ref_bounds_consecutive(ref_axis_sums(image, Axis::Rows), c);
    if (!yb) return std::nullopt;
    return ref_squarify(image, Roi{xb->first, xb->second, yb->first, yb->second});
}

} // namespace evtrack::testing

#endif // EVTRACK_TESTS_REFERENCE_ROI_HPP
