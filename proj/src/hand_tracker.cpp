#include "evtrack/hand_tracker.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "evtrack/errors.hpp"

namespace evtrack {

namespace {

bool parse_double(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

template <typename T>
bool parse_integer(std::string_view token, T& out) {
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

bool is_blank_or_comment(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    return i == line.size() || line[i] == '#';
}

std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

} // namespace

CalibrationModel fit_calibration(std::span<const CalibrationRecord> records,
                                 double object_size_cm, const SensorGeometry& geometry) {
    if (records.size() < 2) {
        throw DataError(Errc::TooFewRecords, "calibration needs at least two records");
    }
    if (object_size_cm <= 0) {
        throw DataError(Errc::NonPositiveInput, "object size must be positive");
    }
    // side = f * S / d is linear in f, so the least-squares scale has the
    // closed form f = sum(side_i * r_i) / sum(r_i^2) with r_i = S / d_i.
    double num = 0;
    double den = 0;
    for (const CalibrationRecord& rec : records) {
        if (rec.distance_cm <= 0 || rec.side_px <= 0) {
            throw DataError(Errc::NonPositiveInput,
                            "distances and measured sides must be positive");
        }
        const double r = object_size_cm / rec.distance_cm;
        num += rec.side_px * r;
        den += r * r;
    }
    CalibrationModel model;
    model.focal_px = num / den;
    model.object_size_cm = object_size_cm;
    model.principal_x = geometry.width / 2.0;
    model.principal_y = geometry.height / 2.0;
    return model;
}

WorldPoint pixel_to_world(const RoiFeatures& features, const CalibrationModel& calib) {
    if (features.side < 1) {
        throw DataError(Errc::DegenerateRoi, "ROI side must be >= 1 pixel");
    }
    WorldPoint p;
    p.z = calib.focal_px * calib.object_size_cm / features.side;
    p.x = (features.center_x - calib.principal_x) * p.z / calib.focal_px;
    p.y = (features.center_y - calib.principal_y) * p.z / calib.focal_px;
    return p;
}

PixelPoint world_to_pixel(const WorldPoint& p, const CalibrationModel& calib) {
    return {calib.principal_x + p.x * calib.focal_px / p.z,
            calib.principal_y + p.y * calib.focal_px / p.z};
}

double projected_side_px(double z_cm, const CalibrationModel& calib) {
    return calib.focal_px * calib.object_size_cm / z_cm;
}

bool is_valid_frame(const RoiFeatures& features, const TrackerConfig& config) {
    return features.active_fraction >= config.min_active_fraction;
}

Trajectory smooth(const Trajectory& raw, int l) {
    if (l < 1) {
        throw DataError(Errc::InvalidPolicy, "smoothing length must be >= 1");
    }
    Trajectory out;
    out.points.reserve(raw.points.size());
    for (std::size_t i = 0; i < raw.points.size(); ++i) {
        TrackedPoint p = raw.points[i];
        if (i > 0) {
            const std::size_t take = std::min<std::size_t>(i, static_cast<std::size_t>(l));
            double sx = 0;
            double sy = 0;
            double sz = 0;
            for (std::size_t j = i - take; j < i; ++j) {
                sx += raw.points[j].x;
                sy += raw.points[j].y;
                sz += raw.points[j].z;
            }
            p.x = sx / static_cast<double>(take);
            p.y = sy / static_cast<double>(take);
            p.z = sz / static_cast<double>(take);
        }
        out.points.push_back(p);
    }
    return out;
}

Trajectory track(const EventStream& stream, const FramingPolicy& framing, int c,
                 const CalibrationModel& calib, const TrackerConfig& config,
                 TrackStats* stats) {
    Trajectory raw;
    std::uint64_t frames = 0;
    std::uint64_t skipped = 0;
    double reduction_sum = 0;
    std::uint64_t reduction_count = 0;
    const double frame_area = static_cast<double>(stream.geometry.pixel_count());

    integrate(stream, framing, [&](const IntensityImage& image) {
        const std::int64_t index = static_cast<std::int64_t>(frames);
        ++frames;
        const auto roi = extract_roi(image, c);
        if (!roi) {
            ++skipped;
            return;
        }
        reduction_sum += 1.0 - static_cast<double>(roi->area()) / frame_area;
        ++reduction_count;
        const RoiFeatures features = roi_features(image, *roi);
        if (!is_valid_frame(features, config)) {
            ++skipped;
            return;
        }
        const WorldPoint p = pixel_to_world(features, calib);
        raw.points.push_back({index, image.last_t, p.x, p.y, p.z});
    });

    if (stats) {
        stats->frames = frames;
        stats->skipped = skipped;
        stats->mean_roi_reduction =
            reduction_count > 0 ? reduction_sum / static_cast<double>(reduction_count) : 0.0;
    }
    return smooth(raw, config.smoothing_length);
}

void write_trajectory(const Trajectory& trajectory, std::ostream& out) {
    char buf[160];
    for (const TrackedPoint& p : trajectory.points) {
        std::snprintf(buf, sizeof(buf), "%" PRId64 " %" PRIu64 " %.6f %.6f %.6f\n",
                      static_cast<std::int64_t>(p.frame_index),
                      static_cast<std::uint64_t>(p.t), p.x, p.y, p.z);
        out << buf;
    }
}

Trajectory read_trajectory(std::istream& in) {
    Trajectory trajectory;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim_cr(raw);
        if (is_blank_or_comment(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 5) {
            throw DataError(Errc::MalformedLine,
                            "expected '<frame_index> <t_us> <x_cm> <y_cm> <z_cm>'", line_no);
        }
        TrackedPoint p;
        if (!parse_integer(fields[0], p.frame_index) || !parse_integer(fields[1], p.t) ||
            !parse_double(fields[2], p.x) || !parse_double(fields[3], p.y) ||
            !parse_double(fields[4], p.z)) {
            throw DataError(Errc::MalformedLine, "non-numeric trajectory field", line_no);
        }
        trajectory.points.push_back(p);
    }
    return trajectory;
}

void write_calibration(const CalibrationModel& model, std::ostream& out) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "focal_px %.9f\nobject_size_cm %.9f\nprincipal_point %.6f %.6f\n",
                  model.focal_px, model.object_size_cm, model.principal_x, model.principal_y);
    out << buf;
}

CalibrationModel read_calibration(std::istream& in) {
    CalibrationModel model;
    bool have_f = false;
    bool have_s = false;
    bool have_pp = false;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim_cr(raw);
        if (is_blank_or_comment(line)) continue;
        const auto fields = split_fields(line);
        if (fields[0] == "focal_px" && fields.size() == 2 &&
            parse_double(fields[1], model.focal_px)) {
            have_f = true;
        } else if (fields[0] == "object_size_cm" && fields.size() == 2 &&
                   parse_double(fields[1], model.object_size_cm)) {
            have_s = true;
        } else if (fields[0] == "principal_point" && fields.size() == 3 &&
                   parse_double(fields[1], model.principal_x) &&
                   parse_double(fields[2], model.principal_y)) {
            have_pp = true;
        } else {
            throw DataError(Errc::MalformedLine, "unrecognized calibration line", line_no);
        }
    }
    if (!have_f || !have_s || !have_pp) {
        throw DataError(Errc::BadHeader, "calibration file is missing required keys");
    }
    if (model.focal_px <= 0 || model.object_size_cm <= 0) {
        throw DataError(Errc::NonPositiveInput, "calibration constants must be positive");
    }
    return model;
}

CalibrationRecords read_calibration_records(std::istream& in) {
    CalibrationRecords records;
    bool have_header = false;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim_cr(raw);
        if (is_blank_or_comment(line)) continue;
        const auto fields = split_fields(line);
        if (!have_header) {
            if (fields.size() != 2 || fields[0] != "object_size_cm" ||
                !parse_double(fields[1], records.object_size_cm)) {
                throw DataError(Errc::BadHeader, "expected 'object_size_cm <S>' header",
                                line_no);
            }
            have_header = true;
            continue;
        }
        CalibrationRecord rec;
        if (fields.size() != 2 || !parse_double(fields[0], rec.distance_cm) ||
            !parse_double(fields[1], rec.side_px)) {
            throw DataError(Errc::MalformedLine, "expected '<distance_cm> <side_px>'",
                            line_no);
        }
        records.records.push_back(rec);
    }
    if (!have_header) {
        throw DataError(Errc::BadHeader, "missing object_size_cm header");
    }
    return records;
}

void write_calibration_records(const CalibrationRecords& records, std::ostream& out) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "object_size_cm %.9f\n", records.object_size_cm);
    out << buf;
    for (const CalibrationRecord& rec : records.records) {
        std::snprintf(buf, sizeof(buf), "%.6f %.6f\n", rec.distance_cm, rec.side_px);
        out << buf;
    }
}

} // namespace evtrack
