#include "evtrack/dvs_synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <random>
#include <string>
#include <string_view>

#include "evtrack/errors.hpp"

namespace evtrack {

namespace {

// Hand-rolled draws keep the stream identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double exponential_gap(std::mt19937_64& rng, double rate_per_us) {
    return -std::log(1.0 - uniform01(rng)) / rate_per_us;
}

struct PerimeterSample {
    int edge = 0;      // 0 left, 1 right, 2 top, 3 bottom
    double frac = 0;   // position along the edge in [0,1)
};

PixelPoint perimeter_point(const SceneSpec& spec, const CalibrationModel& calib,
                           const PerimeterSample& sample, double t_us) {
    const WorldPoint center = path_position(spec.path, t_us);
    const PixelPoint c = world_to_pixel(center, calib);
    const double side = projected_side_px(center.z, calib);
    const double half = side / 2.0;
    switch (sample.edge) {
    case 0: return {c.x - half, c.y - half + sample.frac * side};
    case 1: return {c.x + half, c.y - half + sample.frac * side};
    case 2: return {c.x - half + sample.frac * side, c.y - half};
    default: return {c.x - half + sample.frac * side, c.y + half};
    }
}

void validate(const SceneSpec& spec) {
    if (spec.path.empty()) {
        throw DataError(Errc::InvalidPath, "path needs at least one waypoint");
    }
    for (std::size_t i = 0; i < spec.path.size(); ++i) {
        if (spec.path[i].z_cm <= 0) {
            throw DataError(Errc::InvalidPath, "waypoint depth must be positive");
        }
        if (i > 0 && spec.path[i].t < spec.path[i - 1].t) {
            throw DataError(Errc::InvalidPath, "waypoint times must be non-decreasing");
        }
    }
    if (spec.edge_event_rate < 0 || spec.noise_rate < 0) {
        throw DataError(Errc::InvalidPolicy, "event rates must be non-negative");
    }
    if (spec.focal_px <= 0 || spec.object_size_cm <= 0) {
        throw DataError(Errc::NonPositiveInput, "focal length and object size must be positive");
    }
    if (spec.geometry.width < 1 || spec.geometry.height < 1) {
        throw DataError(Errc::BadHeader, "geometry must be at least 1x1");
    }
}

} // namespace

WorldPoint path_position(std::span<const Waypoint> path, double t_us) {
    if (t_us <= static_cast<double>(path.front().t)) {
        const Waypoint& w = path.front();
        return {w.x_cm, w.y_cm, w.z_cm};
    }
    if (t_us >= static_cast<double>(path.back().t)) {
        const Waypoint& w = path.back();
        return {w.x_cm, w.y_cm, w.z_cm};
    }
    std::size_t hi = 1;
    while (static_cast<double>(path[hi].t) < t_us) ++hi;
    const Waypoint& a = path[hi - 1];
    const Waypoint& b = path[hi];
    if (a.t == b.t) {
        return {b.x_cm, b.y_cm, b.z_cm};
    }
    const double u = (t_us - static_cast<double>(a.t)) / static_cast<double>(b.t - a.t);
    return {a.x_cm + u * (b.x_cm - a.x_cm), a.y_cm + u * (b.y_cm - a.y_cm),
            a.z_cm + u * (b.z_cm - a.z_cm)};
}

SyntheticScene generate(const SceneSpec& spec) {
    validate(spec);

    CalibrationModel calib;
    calib.focal_px = spec.focal_px;
    calib.object_size_cm = spec.object_size_cm;
    calib.principal_x = spec.geometry.width / 2.0;
    calib.principal_y = spec.geometry.height / 2.0;

    const double t_begin = static_cast<double>(spec.path.front().t);
    const double t_end = static_cast<double>(spec.path.back().t);

    std::mt19937_64 rng(spec.seed);
    std::vector<Event> events;
    bool alternate = false;

    auto push_event = [&](double t_us, double px, double py, Polarity polarity) {
        const long xi = std::lround(px);
        const long yi = std::lround(py);
        if (!spec.geometry.contains(static_cast<int>(xi), static_cast<int>(yi))) {
            return;
        }
        const double clamped = std::clamp(t_us, t_begin, t_end);
        events.push_back({static_cast<std::uint64_t>(std::llround(clamped)),
                          static_cast<std::uint16_t>(xi), static_cast<std::uint16_t>(yi),
                          polarity});
    };

    if (spec.edge_event_rate > 0 && t_end > t_begin) {
        const double rate = spec.edge_event_rate / 1e6; // events per microsecond
        // Finite-difference step for the boundary-point velocity.
        const double vel_dt = std::min(1000.0, (t_end - t_begin) / 2.0);
        double t = t_begin + exponential_gap(rng, rate);
        while (t <= t_end) {
            const double u = uniform01(rng) * 4.0;
            PerimeterSample sample;
            sample.edge = std::min(3, static_cast<int>(u));
            sample.frac = u - sample.edge;

            const PixelPoint p0 = perimeter_point(spec, calib, sample, t);
            const double t1 = t + vel_dt <= t_end ? t + vel_dt : t - vel_dt;
            const PixelPoint p1 = perimeter_point(spec, calib, sample, t1);
            const double sgn = t1 >= t ? 1.0 : -1.0;
            const double vx = sgn * (p1.x - p0.x);
            const double vy = sgn * (p1.y - p0.y);

            double outward = 0;
            switch (sample.edge) {
            case 0: outward = -vx; break;
            case 1: outward = vx; break;
            case 2: outward = -vy; break;
            default: outward = vy; break;
            }

            Polarity polarity;
            if (outward > 1e-9) {
                polarity = Polarity::Positive;
            } else if (outward < -1e-9) {
                polarity = Polarity::Negative;
            } else {
                alternate = !alternate;
                polarity = alternate ? Polarity::Positive : Polarity::Negative;
            }
            push_event(t, p0.x, p0.y, polarity);
            t += exponential_gap(rng, rate);
        }
    }

    if (spec.noise_rate > 0 && t_end > t_begin) {
        const double rate = spec.noise_rate / 1e6;
        double t = t_begin + exponential_gap(rng, rate);
        while (t <= t_end) {
            const int x = std::min(spec.geometry.width - 1,
                                   static_cast<int>(uniform01(rng) * spec.geometry.width));
            const int y = std::min(spec.geometry.height - 1,
                                   static_cast<int>(uniform01(rng) * spec.geometry.height));
            const Polarity polarity =
                uniform01(rng) < 0.5 ? Polarity::Negative : Polarity::Positive;
            push_event(t, x, y, polarity);
            t += exponential_gap(rng, rate);
        }
    }

    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });

    SyntheticScene scene;
    scene.events.geometry = spec.geometry;
    scene.events.events = std::move(events);
    scene.truth.points.reserve(spec.path.size());
    for (std::size_t i = 0; i < spec.path.size(); ++i) {
        const Waypoint& w = spec.path[i];
        scene.truth.points.push_back(
            {static_cast<std::int64_t>(i), w.t, w.x_cm, w.y_cm, w.z_cm});
    }
    return scene;
}

namespace {

bool parse_double_token(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool parse_u64_token(std::string_view token, std::uint64_t& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
        if (pos > start) fields.push_back(line.substr(start, pos - start));
    }
    return fields;
}

} // namespace

SceneSpec read_scene_spec(std::istream& in) {
    SceneSpec spec;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i == line.size() || line[i] == '#') continue;

        const auto fields = split_fields(line);
        const std::string_view key = fields[0];
        bool ok = false;
        if (key == "width" && fields.size() == 2) {
            double v;
            ok = parse_double_token(fields[1], v);
            spec.geometry.width = static_cast<int>(v);
        } else if (key == "height" && fields.size() == 2) {
            double v;
            ok = parse_double_token(fields[1], v);
            spec.geometry.height = static_cast<int>(v);
        } else if (key == "focal_px" && fields.size() == 2) {
            ok = parse_double_token(fields[1], spec.focal_px);
        } else if (key == "object_size_cm" && fields.size() == 2) {
            ok = parse_double_token(fields[1], spec.object_size_cm);
        } else if (key == "edge_event_rate" && fields.size() == 2) {
            ok = parse_double_token(fields[1], spec.edge_event_rate);
        } else if (key == "noise_rate" && fields.size() == 2) {
            ok = parse_double_token(fields[1], spec.noise_rate);
        } else if (key == "seed" && fields.size() == 2) {
            ok = parse_u64_token(fields[1], spec.seed);
        } else if (key == "waypoint" && fields.size() == 5) {
            Waypoint w;
            ok = parse_u64_token(fields[1], w.t) && parse_double_token(fields[2], w.x_cm) &&
                 parse_double_token(fields[3], w.y_cm) && parse_double_token(fields[4], w.z_cm);
            if (ok) spec.path.push_back(w);
        }
        if (!ok) {
            throw DataError(Errc::MalformedLine, "unrecognized scene line", line_no);
        }
    }
    return spec;
}

} // namespace evtrack
