#ifndef EVTRACK_FRAME_BUILDER_HPP
#define EVTRACK_FRAME_BUILDER_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "evtrack/errors.hpp"
#include "evtrack/event_model.hpp"

namespace evtrack {

/// Per-pixel event-count grid for one integrated frame. Both polarities add
/// to the count. first_t/last_t are the timestamps of the first and last
/// contributing event; an empty frame carries its window start in both.
struct IntensityImage {
    SensorGeometry geometry;
    std::vector<std::uint32_t> counts; // row-major, y * width + x
    std::uint64_t first_t = 0;
    std::uint64_t last_t = 0;
    std::uint64_t n_events = 0;

    explicit IntensityImage(SensorGeometry g = {})
        : geometry(g), counts(g.pixel_count(), 0) {}

    std::uint32_t& at(int x, int y) {
        return counts[static_cast<std::size_t>(y) * geometry.width + x];
    }
    std::uint32_t at(int x, int y) const {
        return counts[static_cast<std::size_t>(y) * geometry.width + x];
    }
};

/// How the stream is cut into frames: a fixed event count per frame
/// (framerate adapts to motion) or a fixed time interval.
struct FramingPolicy {
    enum class Kind { CountBased, TimeBased };

    Kind kind = Kind::CountBased;
    std::uint64_t events_per_frame = 3000;
    std::uint64_t interval_us = 0;

    static FramingPolicy by_count(std::uint64_t n) {
        return {Kind::CountBased, n, 0};
    }
    static FramingPolicy by_time(std::uint64_t dt) {
        return {Kind::TimeBased, 0, dt};
    }
};

/// Streams the frames of `stream` under `policy` through `sink`, reusing one
/// image buffer. Count-based framing drops a trailing partial group; time-based
/// framing emits all-zero images for empty windows and stops with the window
/// containing the last event.
template <typename Sink>
void integrate(const EventStream& stream, const FramingPolicy& policy, Sink&& sink) {
    IntensityImage image(stream.geometry);

    if (policy.kind == FramingPolicy::Kind::CountBased) {
        const std::uint64_t n = policy.events_per_frame;
        if (n == 0) {
            throw DataError(Errc::InvalidPolicy, "events per frame must be >= 1");
        }
        std::uint64_t in_frame = 0;
        for (const Event& e : stream.events) {
            if (in_frame == 0) {
                image.first_t = e.t;
            }
            ++image.at(e.x, e.y);
            image.last_t = e.t;
            if (++in_frame == n) {
                image.n_events = n;
                sink(static_cast<const IntensityImage&>(image));
                std::fill(image.counts.begin(), image.counts.end(), 0u);
                in_frame = 0;
            }
        }
        return;
    }

    const std::uint64_t dt = policy.interval_us;
    if (dt == 0) {
        throw DataError(Errc::InvalidPolicy, "frame interval must be >= 1 us");
    }
    if (stream.events.empty()) {
        return;
    }

    const std::uint64_t t0 = stream.events.front().t;
    std::uint64_t window = 0; // frame k covers [t0 + k*dt, t0 + (k+1)*dt)
    std::uint64_t in_window = 0;
    image.first_t = image.last_t = t0;

    auto emit = [&] {
        image.n_events = in_window;
        sink(static_cast<const IntensityImage&>(image));
        std::fill(image.counts.begin(), image.counts.end(), 0u);
        in_window = 0;
    };

    for (const Event& e : stream.events) {
        const std::uint64_t k = (e.t - t0) / dt;
        while (window < k) {
            emit();
            ++window;
            image.first_t = image.last_t = t0 + window * dt;
        }
        if (in_window == 0) {
            image.first_t = e.t;
        }
        ++image.at(e.x, e.y);
        image.last_t = e.t;
        ++in_window;
    }
    emit();
}

std::vector<IntensityImage> integrate_count(const EventStream& stream, std::uint64_t n);
std::vector<IntensityImage> integrate_time(const EventStream& stream, std::uint64_t dt);

} // namespace evtrack

#endif // EVTRACK_FRAME_BUILDER_HPP
