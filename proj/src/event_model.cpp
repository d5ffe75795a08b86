#include "evtrack/event_model.hpp"

namespace evtrack {

ValidationReport validate_stream(const EventStream& stream) {
    ValidationReport report;
    std::uint64_t prev_t = 0;
    for (std::size_t i = 0; i < stream.events.size(); ++i) {
        const Event& e = stream.events[i];
        if (!stream.geometry.contains(e.x, e.y)) {
            report.violations.push_back({StreamViolation::Kind::OutOfBounds, i});
        }
        if (i > 0 && e.t < prev_t) {
            report.violations.push_back({StreamViolation::Kind::NonMonotonicTime, i});
        }
        prev_t = e.t;
    }
    return report;
}

} // namespace evtrack
