#ifndef EVTRACK_TRAJECTORY_EVAL_HPP
#define EVTRACK_TRAJECTORY_EVAL_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "evtrack/hand_tracker.hpp"

namespace evtrack {

/// Which coordinates enter the point distance.
enum class DistancePlane { XY, XYZ };

/// Result of aligning two trajectories. The path is monotone from (0,0) to
/// (|A|-1, |B|-1); avg_distance is the summed matched distance divided by the
/// number of matched pairs, in centimetres.
struct DtwResult {
    std::vector<std::pair<std::size_t, std::size_t>> path;
    double avg_distance = 0;
    DistancePlane plane = DistancePlane::XY;
};

/// Classic dynamic-time-warping alignment with Euclidean point distance
/// restricted to `plane`. Ties prefer the diagonal step, keeping the result
/// deterministic.
DtwResult dtw(const Trajectory& a, const Trajectory& b, DistancePlane plane);

struct EvalReport {
    double xy_error_cm = 0;
    double xyz_error_cm = 0;
};

/// Runs dtw in the image plane and in full space. The two alignments may
/// choose different paths, so no ordering between the errors is implied.
EvalReport report(const Trajectory& a, const Trajectory& b);

} // namespace evtrack

#endif // EVTRACK_TRAJECTORY_EVAL_HPP
