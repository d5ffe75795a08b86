#include "evtrack/frame_builder.hpp"

namespace evtrack {

std::vector<IntensityImage> integrate_count(const EventStream& stream, std::uint64_t n) {
    std::vector<IntensityImage> frames;
    integrate(stream, FramingPolicy::by_count(n),
              [&](const IntensityImage& image) { frames.push_back(image); });
    return frames;
}

std::vector<IntensityImage> integrate_time(const EventStream& stream, std::uint64_t dt) {
    std::vector<IntensityImage> frames;
    integrate(stream, FramingPolicy::by_time(dt),
              [&](const IntensityImage& image) { frames.push_back(image); });
    return frames;
}

} // namespace evtrack
