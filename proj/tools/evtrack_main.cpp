// evtrack: event-stream to 3D-trajectory pipeline.
//
// Subcommands: synth (scene config -> events + ground truth), track (events ->
// smoothed trajectory), calibrate (measurements -> pinhole model), eval
// (trajectory pair -> DTW report), frames (events -> PGM dumps + ROI index).
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 IO error. Diagnostics
// go to stderr; data only to the declared output paths.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "evtrack/dvs_synth.hpp"
#include "evtrack/errors.hpp"
#include "evtrack/frame_builder.hpp"
#include "evtrack/hand_tracker.hpp"
#include "evtrack/roi_finder.hpp"
#include "evtrack/stream_io.hpp"
#include "evtrack/trajectory_eval.hpp"

namespace fs = std::filesystem;
using namespace evtrack;

namespace {

// All outputs land via temp-file + rename so failures never leave a partial
// file at the destination.
template <typename Fn>
void atomic_write(const fs::path& path, Fn&& fn) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        fn(out);
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return in;
}

FramingPolicy make_policy(std::uint64_t n, std::uint64_t dt, bool dt_given) {
    return dt_given ? FramingPolicy::by_time(dt) : FramingPolicy::by_count(n);
}

void write_pgm(const IntensityImage& image, std::ostream& out) {
    const int w = image.geometry.width;
    const int h = image.geometry.height;
    std::uint32_t max_count = 0;
    for (auto c : image.counts) max_count = std::max(max_count, c);

    out << "P5\n" << w << ' ' << h << "\n255\n";
    std::string row(static_cast<std::size_t>(w), '\0');
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::uint32_t c = image.at(x, y);
            const unsigned v =
                max_count == 0
                    ? 0u
                    : static_cast<unsigned>(std::lround(255.0 * c / max_count));
            row[static_cast<std::size_t>(x)] = static_cast<char>(v);
        }
        out.write(row.data(), w);
    }
}

int cmd_synth(const fs::path& spec_path, const fs::path& out_events,
              const fs::path& out_truth, StreamFormat format,
              const std::optional<std::uint64_t>& seed_override) {
    auto in = open_input(spec_path);
    SceneSpec spec = read_scene_spec(in);
    if (seed_override) {
        spec.seed = *seed_override;
    }
    const SyntheticScene scene = generate(spec);

    atomic_write(out_events, [&](std::ostream& out) {
        if (format == StreamFormat::Binary) {
            write_binary(scene.events, out);
        } else {
            write_text(scene.events, out);
        }
    });
    atomic_write(out_truth, [&](std::ostream& out) { write_trajectory(scene.truth, out); });

    std::cerr << "events: " << scene.events.events.size() << "\n"
              << "truth_points: " << scene.truth.size() << "\n";
    return 0;
}

int cmd_track(const fs::path& events_path, const fs::path& calib_path,
              const fs::path& out_traj, const FramingPolicy& policy, int c,
              const TrackerConfig& config) {
    const EventStream stream = read_events_file(events_path);
    auto calib_in = open_input(calib_path);
    const CalibrationModel calib = read_calibration(calib_in);

    TrackStats stats;
    const Trajectory trajectory = track(stream, policy, c, calib, config, &stats);
    atomic_write(out_traj, [&](std::ostream& out) { write_trajectory(trajectory, out); });

    char line[128];
    std::snprintf(line, sizeof(line), "frames: %llu\nskipped: %llu\nmean_roi_reduction: %.4f\n",
                  static_cast<unsigned long long>(stats.frames),
                  static_cast<unsigned long long>(stats.skipped), stats.mean_roi_reduction);
    std::cerr << line;
    return 0;
}

int cmd_calibrate(const fs::path& records_path, const fs::path& out_calib,
                  const SensorGeometry& geometry) {
    auto in = open_input(records_path);
    const CalibrationRecords records = read_calibration_records(in);
    const CalibrationModel model =
        fit_calibration(records.records, records.object_size_cm, geometry);
    atomic_write(out_calib, [&](std::ostream& out) { write_calibration(model, out); });
    std::cerr << "focal_px: " << model.focal_px << "\n";
    return 0;
}

int cmd_eval(const fs::path& traj_a, const fs::path& traj_b, const fs::path& out_report) {
    auto in_a = open_input(traj_a);
    auto in_b = open_input(traj_b);
    const Trajectory a = read_trajectory(in_a);
    const Trajectory b = read_trajectory(in_b);
    const EvalReport r = report(a, b);

    char lines[96];
    std::snprintf(lines, sizeof(lines), "XY %.3f\nXYZ %.3f\n", r.xy_error_cm * 10.0,
                  r.xyz_error_cm * 10.0);
    atomic_write(out_report, [&](std::ostream& out) { out << lines; });
    std::cerr << lines;
    return 0;
}

int cmd_frames(const fs::path& events_path, const fs::path& out_dir,
               const FramingPolicy& policy, int c) {
    const EventStream stream = read_events_file(events_path);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string());
    }

    std::string index;
    std::uint64_t frame_no = 0;
    integrate(stream, policy, [&](const IntensityImage& image) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%06llu.pgm",
                      static_cast<unsigned long long>(frame_no));
        atomic_write(out_dir / name, [&](std::ostream& out) { write_pgm(image, out); });

        char line[192];
        const auto roi = extract_roi(image, c);
        if (roi) {
            const RoiFeatures f = roi_features(image, *roi);
            std::snprintf(line, sizeof(line), "%llu %d %d %d %d %.1f %.1f %d %.4f\n",
                          static_cast<unsigned long long>(frame_no), roi->x_min, roi->x_max,
                          roi->y_min, roi->y_max, f.center_x, f.center_y, f.side,
                          f.active_fraction);
        } else {
            std::snprintf(line, sizeof(line), "%llu none\n",
                          static_cast<unsigned long long>(frame_no));
        }
        index += line;
        ++frame_no;
    });

    atomic_write(out_dir / "roi_index.txt", [&](std::ostream& out) { out << index; });
    std::cerr << "frames: " << frame_no << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DVS event-stream processing: intensity frames, ROI tracking, "
                 "trajectory evaluation"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic scene");
    fs::path synth_spec, synth_events, synth_truth;
    std::string synth_format = "binary";
    std::optional<std::uint64_t> synth_seed;
    synth->add_option("scene", synth_spec, "Scene config file")->required();
    synth->add_option("out_events", synth_events, "Output event log")->required();
    synth->add_option("out_truth", synth_truth, "Output ground-truth trajectory")->required();
    synth->add_option("--format", synth_format, "Event log format: binary or text")
        ->check(CLI::IsMember({"binary", "text"}));
    synth->add_option("--seed", synth_seed, "Override the seed from the scene config");

    // shared framing/ROI flags
    std::uint64_t n = 3000;
    std::uint64_t dt = 0;
    int c = 3;

    auto add_framing = [&](CLI::App* cmd) {
        auto* n_opt =
            cmd->add_option("-n,--events-per-frame", n, "Events per frame (count framing)");
        auto* dt_opt =
            cmd->add_option("--dt,--frame-interval-us", dt, "Frame interval in us (time framing)");
        n_opt->excludes(dt_opt);
        dt_opt->excludes(n_opt);
        cmd->add_option("-c,--run-length", c,
                        "Consecutive above-average sums required at an ROI boundary");
        return dt_opt;
    };

    // track
    auto* track_cmd = app.add_subcommand("track", "Estimate a 3D trajectory from events");
    fs::path track_events, track_calib, track_out;
    TrackerConfig config;
    track_cmd->add_option("events", track_events, "Input event log")->required();
    track_cmd->add_option("calibration", track_calib, "Fitted calibration model file")
        ->required();
    track_cmd->add_option("out_trajectory", track_out, "Output trajectory file")->required();
    auto* track_dt = add_framing(track_cmd);
    track_cmd->add_option("-l,--smooth-window", config.smoothing_length,
                          "Moving-average length in frames");
    track_cmd->add_option("--min-active-fraction", config.min_active_fraction,
                          "Minimum fraction of active ROI pixels for a valid frame");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "Fit the pinhole scale from records");
    fs::path calib_records, calib_out;
    SensorGeometry calib_geometry;
    calibrate->add_option("records", calib_records, "Measurement records file")->required();
    calibrate->add_option("out_calibration", calib_out, "Output model file")->required();
    calibrate->add_option("--width", calib_geometry.width, "Sensor width in pixels");
    calibrate->add_option("--height", calib_geometry.height, "Sensor height in pixels");

    // eval
    auto* eval = app.add_subcommand("eval", "Compare two trajectories with DTW");
    fs::path eval_a, eval_b, eval_out;
    eval->add_option("trajectory_a", eval_a, "First trajectory file")->required();
    eval->add_option("trajectory_b", eval_b, "Second trajectory file")->required();
    eval->add_option("out_report", eval_out, "Output report file")->required();

    // frames
    auto* frames = app.add_subcommand("frames", "Dump intensity frames and ROIs");
    fs::path frames_events, frames_dir;
    frames->add_option("events", frames_events, "Input event log")->required();
    frames->add_option("out_dir", frames_dir, "Output directory")->required();
    auto* frames_dt = add_framing(frames);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*synth) {
            return cmd_synth(synth_spec, synth_events, synth_truth,
                             synth_format == "binary" ? StreamFormat::Binary
                                                      : StreamFormat::Text,
                             synth_seed);
        }
        if (*track_cmd) {
            return cmd_track(track_events, track_calib, track_out,
                             make_policy(n, dt, track_dt->count() > 0), c, config);
        }
        if (*calibrate) {
            return cmd_calibrate(calib_records, calib_out, calib_geometry);
        }
        if (*eval) {
            return cmd_eval(eval_a, eval_b, eval_out);
        }
        if (*frames) {
            return cmd_frames(frames_events, frames_dir,
                              make_policy(n, dt, frames_dt->count() > 0), c);
        }
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
