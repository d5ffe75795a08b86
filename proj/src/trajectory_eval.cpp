#include "evtrack/trajectory_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evtrack/errors.hpp"

namespace evtrack {

namespace {

double point_distance(const TrackedPoint& a, const TrackedPoint& b, DistancePlane plane) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    if (plane == DistancePlane::XY) {
        return std::sqrt(dx * dx + dy * dy);
    }
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace

DtwResult dtw(const Trajectory& a, const Trajectory& b, DistancePlane plane) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n == 0 || m == 0) {
        throw DataError(Errc::EmptyTrajectory, "both trajectories need at least one point");
    }

    std::vector<double> table(n * m);
    auto cell = [&](std::size_t i, std::size_t j) -> double& { return table[i * m + j]; };

    cell(0, 0) = point_distance(a.points[0], b.points[0], plane);
    for (std::size_t i = 1; i < n; ++i) {
        cell(i, 0) = cell(i - 1, 0) + point_distance(a.points[i], b.points[0], plane);
    }
    for (std::size_t j = 1; j < m; ++j) {
        cell(0, j) = cell(0, j - 1) + point_distance(a.points[0], b.points[j], plane);
    }
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; j < m; ++j) {
            const double best =
                std::min({cell(i - 1, j - 1), cell(i - 1, j), cell(i, j - 1)});
            cell(i, j) = best + point_distance(a.points[i], b.points[j], plane);
        }
    }

    DtwResult result;
    result.plane = plane;

    // Walk back preferring the diagonal, then the i step, on equal costs.
    std::size_t i = n - 1;
    std::size_t j = m - 1;
    result.path.emplace_back(i, j);
    while (i > 0 || j > 0) {
        if (i == 0) {
            --j;
        } else if (j == 0) {
            --i;
        } else {
            const double diag = cell(i - 1, j - 1);
            const double up = cell(i - 1, j);
            const double left = cell(i, j - 1);
            if (diag <= up && diag <= left) {
                --i;
                --j;
            } else if (up <= left) {
                --i;
            } else {
                --j;
            }
        }
        result.path.emplace_back(i, j);
    }
    std::reverse(result.path.begin(), result.path.end());

    result.avg_distance = cell(n - 1, m - 1) / static_cast<double>(result.path.size());
    return result;
}

EvalReport report(const Trajectory& a, const Trajectory& b) {
    return {dtw(a, b, DistancePlane::XY).avg_distance,
            dtw(a, b, DistancePlane::XYZ).avg_distance};
}

} // namespace evtrack
