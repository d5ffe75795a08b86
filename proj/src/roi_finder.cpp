#include "evtrack/roi_finder.hpp"

#include <numeric>

#include "evtrack/errors.hpp"

namespace evtrack {

namespace {

// sums[i] > total/len without division; exact for the full uint64 range.
bool above_mean(std::uint64_t value, std::uint64_t total, std::size_t len) {
    return static_cast<unsigned __int128>(value) * len > total;
}

// Best window of `size` entries inside [lo, hi], by windowed sum; smallest
// start wins ties.
int best_window_start(std::span<const std::uint64_t> sums, int lo, int hi, int size) {
    std::uint64_t window = 0;
    for (int i = lo; i < lo + size; ++i) window += sums[i];
    std::uint64_t best = window;
    int best_start = lo;
    for (int start = lo + 1; start + size - 1 <= hi; ++start) {
        window += sums[start + size - 1];
        window -= sums[start - 1];
        if (window > best) {
            best = window;
            best_start = start;
        }
    }
    return best_start;
}

Roi squarify_with_sums(const Roi& roi, std::span<const std::uint64_t> col_sums,
                       std::span<const std::uint64_t> row_sums) {
    const int x_ext = roi.x_extent();
    const int y_ext = roi.y_extent();
    if (x_ext == y_ext) {
        return roi;
    }
    Roi out = roi;
    if (x_ext > y_ext) {
        const int start = best_window_start(col_sums, roi.x_min, roi.x_max, y_ext);
        out.x_min = start;
        out.x_max = start + y_ext - 1;
    } else {
        const int start = best_window_start(row_sums, roi.y_min, roi.y_max, x_ext);
        out.y_min = start;
        out.y_max = start + x_ext - 1;
    }
    return out;
}

} // namespace

std::vector<std::uint64_t> axis_sums(const IntensityImage& image, Axis axis) {
    const int w = image.geometry.width;
    const int h = image.geometry.height;
    std::vector<std::uint64_t> sums(axis == Axis::Columns ? w : h, 0);
    const std::uint32_t* row = image.counts.data();
    if (axis == Axis::Columns) {
        for (int y = 0; y < h; ++y, row += w) {
            for (int x = 0; x < w; ++x) sums[x] += row[x];
        }
    } else {
        for (int y = 0; y < h; ++y, row += w) {
            std::uint64_t acc = 0;
            for (int x = 0; x < w; ++x) acc += row[x];
            sums[y] = acc;
        }
    }
    return sums;
}

std::optional<std::pair<int, int>> bounds_simple(std::span<const std::uint64_t> sums) {
    const std::size_t n = sums.size();
    if (n == 0) {
        return std::nullopt;
    }
    const std::uint64_t total = std::accumulate(sums.begin(), sums.end(), std::uint64_t{0});

    int min_index = -1;
    int max_index = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (above_mean(sums[i], total, n)) {
            if (min_index < 0) min_index = static_cast<int>(i);
            max_index = static_cast<int>(i);
        }
    }
    if (min_index < 0) {
        return std::nullopt;
    }
    return std::make_pair(min_index, max_index);
}

std::optional<std::pair<int, int>> bounds_consecutive(std::span<const std::uint64_t> sums,
                                                      int c) {
    if (c < 1) {
        throw DataError(Errc::InvalidPolicy, "run length must be >= 1");
    }
    const std::size_t n = sums.size();
    if (n == 0 || static_cast<std::size_t>(c) > n) {
        return std::nullopt;
    }
    const std::uint64_t total = std::accumulate(sums.begin(), sums.end(), std::uint64_t{0});

    int min_index = -1;
    int max_index = -1;
    int run = 0;
    for (std::size_t i = 0; i < n; ++i) {
        run = above_mean(sums[i], total, n) ? run + 1 : 0;
        if (run >= c) {
            if (min_index < 0) min_index = static_cast<int>(i) - c + 1;
            max_index = static_cast<int>(i);
        }
    }
    if (min_index < 0) {
        return std::nullopt;
    }
    return std::make_pair(min_index, max_index);
}

Roi squarify(const IntensityImage& image, const Roi& roi) {
    if (roi.x_extent() == roi.y_extent()) {
        return roi;
    }
    const auto col_sums = axis_sums(image, Axis::Columns);
    const auto row_sums = axis_sums(image, Axis::Rows);
    return squarify_with_sums(roi, col_sums, row_sums);
}

std::optional<Roi> extract_roi(const IntensityImage& image, int c) {
    const auto col_sums = axis_sums(image, Axis::Columns);
    const auto row_sums = axis_sums(image, Axis::Rows);
    const auto x_bounds = bounds_consecutive(col_sums, c);
    if (!x_bounds) return std::nullopt;
    const auto y_bounds = bounds_consecutive(row_sums, c);
    if (!y_bounds) return std::nullopt;
    const Roi rect{x_bounds->first, x_bounds->second, y_bounds->first, y_bounds->second};
    return squarify_with_sums(rect, col_sums, row_sums);
}

RoiFeatures roi_features(const IntensityImage& image, const Roi& roi) {
    RoiFeatures f;
    f.center_x = (roi.x_min + roi.x_max) / 2.0;
    f.center_y = (roi.y_min + roi.y_max) / 2.0;
    f.side = roi.x_extent();
    std::uint64_t active = 0;
    for (int y = roi.y_min; y <= roi.y_max; ++y) {
        for (int x = roi.x_min; x <= roi.x_max; ++x) {
            if (image.at(x, y) > 0) ++active;
        }
    }
    f.active_fraction = static_cast<double>(active) /
                        (static_cast<double>(f.side) * static_cast<double>(f.side));
    return f;
}

} // namespace evtrack
