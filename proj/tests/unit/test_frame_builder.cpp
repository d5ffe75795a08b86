#include <doctest.h>

#include <random>

#include "evtrack/errors.hpp"
#include "evtrack/frame_builder.hpp"

#include "../support/generators.hpp"

using namespace evtrack;

namespace {

EventStream stream_at(std::initializer_list<std::uint64_t> times, int x = 5, int y = 7) {
    EventStream stream;
    stream.geometry = {240, 180};
    for (auto t : times) {
        stream.events.push_back({t, static_cast<std::uint16_t>(x),
                                 static_cast<std::uint16_t>(y), Polarity::Positive});
    }
    return stream;
}

std::uint64_t total_counts(const IntensityImage& image) {
    std::uint64_t sum = 0;
    for (auto c : image.counts) sum += c;
    return sum;
}

} // namespace

TEST_CASE("integrate_count accumulates events of either polarity at one pixel") {
    auto stream = stream_at({10, 20, 30});
    stream.events[1].polarity = Polarity::Negative;
    const auto frames = integrate_count(stream, 3);
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].at(5, 7) == 3);
    CHECK(frames[0].n_events == 3);
    CHECK(total_counts(frames[0]) == 3);
    CHECK(frames[0].first_t == 10);
    CHECK(frames[0].last_t == 30);
}

TEST_CASE("integrate_count drops the trailing partial group") {
    const auto frames = integrate_count(stream_at({1, 2, 3, 4, 5, 6, 7}), 3);
    CHECK(frames.size() == 2);
}

TEST_CASE("integrate_count rejects n = 0") {
    CHECK_THROWS_AS(integrate_count(stream_at({1}), 0), DataError);
    try {
        integrate_count(stream_at({1}), 0);
    } catch (const DataError& e) {
        CHECK(e.code() == Errc::InvalidPolicy);
    }
}

TEST_CASE("integrate_count partitions a random stream exactly like a direct split") {
    std::mt19937_64 rng(11);
    EventStream stream;
    stream.geometry = {240, 180};
    std::uniform_int_distribution<int> xd(0, 239), yd(0, 179), pd(0, 1);
    for (int i = 0; i < 10'000; ++i) {
        stream.events.push_back({static_cast<std::uint64_t>(i),
                                 static_cast<std::uint16_t>(xd(rng)),
                                 static_cast<std::uint16_t>(yd(rng)),
                                 pd(rng) ? Polarity::Positive : Polarity::Negative});
    }

    const std::uint64_t n = 3000;
    const auto frames = integrate_count(stream, n);
    REQUIRE(frames.size() == 3);

    for (std::size_t k = 0; k < frames.size(); ++k) {
        CHECK(frames[k].n_events == n);
        CHECK(total_counts(frames[k]) == n);
        // direct partition of the event list as the oracle
        IntensityImage expected(stream.geometry);
        for (std::uint64_t i = k * n; i < (k + 1) * n; ++i) {
            ++expected.at(stream.events[i].x, stream.events[i].y);
        }
        CHECK(frames[k].counts == expected.counts);
        CHECK(frames[k].first_t == stream.events[k * n].t);
        CHECK(frames[k].last_t == stream.events[(k + 1) * n - 1].t);
    }
}

TEST_CASE("integrate_time groups events into half-open windows") {
    SUBCASE("both events inside one window") {
        const auto frames = integrate_time(stream_at({0, 999}), 1000);
        REQUIRE(frames.size() == 1);
        CHECK(frames[0].n_events == 2);
    }
    SUBCASE("boundary event opens the next window") {
        const auto frames = integrate_time(stream_at({0, 1000}), 1000);
        REQUIRE(frames.size() == 2);
        CHECK(frames[0].n_events == 1);
        CHECK(frames[1].n_events == 1);
    }
    SUBCASE("empty middle window is emitted as all-zero") {
        const auto frames = integrate_time(stream_at({0, 2500}), 1000);
        REQUIRE(frames.size() == 3);
        CHECK(frames[0].n_events == 1);
        CHECK(frames[1].n_events == 0);
        CHECK(total_counts(frames[1]) == 0);
        CHECK(frames[2].n_events == 1);
    }
}

TEST_CASE("integrate_time windows start at the first event") {
    const auto frames = integrate_time(stream_at({500, 1499}), 1000);
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].n_events == 2);
}

TEST_CASE("integrate_time rejects dt = 0 and handles empty streams") {
    CHECK_THROWS_AS(integrate_time(stream_at({1}), 0), DataError);
    EventStream empty;
    CHECK(integrate_time(empty, 1000).empty());
    CHECK(integrate_count(empty, 10).empty());
}

TEST_CASE("random streams obey the framing conservation laws") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const EventStream stream = testing::random_stream(rng, 2000);
        std::uniform_int_distribution<std::uint64_t> nd(1, 700);
        const std::uint64_t n = nd(rng);

        const auto count_frames = integrate_count(stream, n);
        CHECK(count_frames.size() == stream.events.size() / n);
        std::uint64_t emitted = 0;
        for (const auto& f : count_frames) {
            CHECK(total_counts(f) == f.n_events);
            emitted += f.n_events;
        }
        CHECK(emitted == n * (stream.events.size() / n));

        std::uniform_int_distribution<std::uint64_t> dtd(1, 200'000);
        const auto time_frames = integrate_time(stream, dtd(rng));
        std::uint64_t time_total = 0;
        for (const auto& f : time_frames) {
            CHECK(f.first_t <= f.last_t);
            time_total += f.n_events;
        }
        CHECK(time_total == stream.events.size());
    }
}

TEST_CASE("flipping every polarity leaves the images unchanged") {
    std::mt19937_64 rng(31);
    const EventStream stream = testing::random_stream(rng, 3000);
    EventStream flipped = stream;
    for (auto& e : flipped.events) {
        e.polarity = e.polarity == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
    }
    const auto a = integrate_count(stream, 500);
    const auto b = integrate_count(flipped, 500);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].counts == b[i].counts);
    }
}

TEST_CASE("integration is deterministic") {
    std::mt19937_64 rng(37);
    const EventStream stream = testing::random_stream(rng, 3000);
    const auto a = integrate_count(stream, 250);
    const auto b = integrate_count(stream, 250);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].counts == b[i].counts);
        CHECK(a[i].first_t == b[i].first_t);
        CHECK(a[i].last_t == b[i].last_t);
    }
}

TEST_CASE("time-framed window assignment matches an explicit oracle") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const EventStream stream = testing::random_stream(rng, 400, 100'000);
        if (stream.events.empty()) continue;
        std::uniform_int_distribution<std::uint64_t> dtd(1, 20'000);
        const std::uint64_t dt = dtd(rng);

        const auto frames = integrate_time(stream, dt);
        const std::uint64_t t0 = stream.events.front().t;

        // oracle: assign each event to its window index directly
        std::vector<std::uint64_t> per_window;
        for (const Event& e : stream.events) {
            const std::size_t k = static_cast<std::size_t>((e.t - t0) / dt);
            if (per_window.size() <= k) per_window.resize(k + 1, 0);
            ++per_window[k];
        }
        REQUIRE(frames.size() == per_window.size());
        for (std::size_t k = 0; k < frames.size(); ++k) {
            CHECK(frames[k].n_events == per_window[k]);
        }
    }
}
