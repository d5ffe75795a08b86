#ifndef EVTRACK_TESTS_REFERENCE_DTW_HPP
#define EVTRACK_TESTS_REFERENCE_DTW_HPP

#include <cmath>
#include <cstddef>
#include <limits>

#include "evtrack/hand_tracker.hpp"
#include "evtrack/trajectory_eval.hpp"

namespace evtrack::testing {

struct RefDtwBest {
    double total = std::numeric_limits<double>::infinity();
    std::size_t length = 0;

    double average() const { return total / static_cast<double>(length); }
};

// Exhaustive enumeration of every monotone warping path; only usable for
// small inputs. Distances accumulate in path order, matching the forward
// order of a DP sweep.
inline RefDtwBest ref_dtw_enumerate(const Trajectory& a, const Trajectory& b,
                                    DistancePlane plane) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();

    auto dist = [&](std::size_t i, std::size_t j) {
        const double dx = a.points[i].x - b.points[j].x;
        const double dy = a.points[i].y - b.points[j].y;
        if (plane == DistancePlane::XY) return std::sqrt(dx * dx + dy * dy);
        const double dz = a.points[i].z - b.points[j].z;
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };

    RefDtwBest best;
    auto visit = [&](auto&& self, std::size_t i, std::size_t j, double sum,
                     std::size_t len) -> void {
        if (i == n - 1 && j == m - 1) {
            if (sum < best.total) {
                best.total = sum;
                best.length = len;
            }
            return;
        }
        if (i + 1 < n && j + 1 < m) self(self, i + 1, j + 1, sum + dist(i + 1, j + 1), len + 1);
        if (i + 1 < n) self(self, i + 1, j, sum + dist(i + 1, j), len + 1);
        if (j + 1 < m) self(self, i, j + 1, sum + dist(i, j + 1), len + 1);
    };
    visit(visit, 0, 0, dist(0, 0), 1);
    return best;
}

} // namespace evtrack::testing

#endif // EVTRACK_TESTS_REFERENCE_DTW_HPP
