#ifndef EVTRACK_EVENT_MODEL_HPP
#define EVTRACK_EVENT_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace evtrack {

/// Pixel dimensions of the sensor array. Defaults to the DAVIS 240C layout.
struct SensorGeometry {
    int width = 240;
    int height = 180;

    bool contains(int x, int y) const noexcept {
        return x >= 0 && x < width && y >= 0 && y < height;
    }

    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    friend bool operator==(const SensorGeometry&, const SensorGeometry&) = default;
};

/// Sign of the brightness change that produced an event.
enum class Polarity : std::uint8_t {
    Negative = 0,
    Positive = 1,
};

/// One brightness-change record. Timestamps are integer microseconds;
/// there is no floating-point time anywhere in the pipeline.
struct Event {
    std::uint64_t t = 0;
    std::uint16_t x = 0;
    std::uint16_t y = 0;
    Polarity polarity = Polarity::Positive;

    friend bool operator==(const Event&, const Event&) = default;
};

/// An ordered event sequence plus the geometry it was captured with.
/// Valid streams have non-decreasing timestamps (ties keep arrival order)
/// and every event inside the geometry bounds.
struct EventStream {
    SensorGeometry geometry;
    std::vector<Event> events;

    friend bool operator==(const EventStream&, const EventStream&) = default;
};

struct StreamViolation {
    enum class Kind {
        OutOfBounds,
        NonMonotonicTime,
    };

    Kind kind;
    std::size_t index;

    friend bool operator==(const StreamViolation&, const StreamViolation&) = default;
};

/// Result of checking a stream against the invariants above. Violations are
/// data, not failures: every offending index is listed.
struct ValidationReport {
    std::vector<StreamViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_stream(const EventStream& stream);

} // namespace evtrack

#endif // EVTRACK_EVENT_MODEL_HPP
