// fbgshape command-line tool: configuration-driven shape reconstruction,
// synthetic dataset generation, calibration drivers, and a JSON-lines
// real-time stream mode.
//
// Exit codes: 0 success, 2 parse error, 3 numeric/pipeline error,
// 4 invariant/precondition violation.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "fbgshape/beam.hpp"
#include "fbgshape/calibrate.hpp"
#include "fbgshape/config.hpp"
#include "fbgshape/frame_io.hpp"
#include "fbgshape/reconstruct.hpp"
#include "fbgshape/simulate.hpp"

namespace {

using namespace fbgshape;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInvariant = 4;

std::string config_path_or_env(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("FBGSHAPE_CONFIG")) return env;
    throw ParseError("no configuration: pass --config or set FBGSHAPE_CONFIG");
}

std::vector<double> sweep_values(const std::string& text) {
    // "lo:step:hi" inclusive sweep, or a comma-separated list.
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo, step, hi;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &step, &hi) != 3 || step <= 0.0)
            throw ParseError("bad sweep '" + text + "', expected lo:step:hi");
        for (double a = lo; a <= hi + 1e-9; a += step) out.push_back(a);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw ParseError("empty value list");
    return out;
}

std::array<double, 3> triple(const std::vector<double>& v, const std::string& what) {
    if (v.size() != 3) throw ParseError(what + " expects 3 comma-separated values");
    return {v[0], v[1], v[2]};
}

simulate::ScenarioKind parse_kind(const std::string& name) {
    if (name == "jig") return simulate::ScenarioKind::Jig;
    if (name == "free-bend") return simulate::ScenarioKind::FreeBend;
    if (name == "obstacle-proximal") return simulate::ScenarioKind::ObstacleProximal;
    if (name == "obstacle-middle") return simulate::ScenarioKind::ObstacleMiddle;
    if (name == "obstacle-distal") return simulate::ScenarioKind::ObstacleDistal;
    throw ParseError("unknown scenario '" + name + "'");
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int cmd_neutral_axis(const std::string& config_path) {
    const SystemConfig cfg = load_config(config_path_or_env(config_path));
    const double zc = beam::neutral_axis_closed_form(cfg.geometry.materials,
                                                     cfg.geometry.lumen_circle_radius_mm);
    std::cout << "neutral-axis offset z_c = " << io::format_number(zc) << " mm\n";
    return kExitOk;
}

int cmd_reconstruct(const std::string& config_path, const std::string& frames_path,
                    const std::string& out_dir, const std::string& prefix, double step_mm,
                    bool tip_only) {
    const SystemConfig cfg = load_config(config_path_or_env(config_path));
    const std::vector<WavelengthFrame> frames = io::load_frames_csv(frames_path);

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream summary(fs::path(out_dir) / (prefix + "_summary.csv"));
    if (!summary) throw ParseError("cannot write summary in '" + out_dir + "'");
    summary << "frame,t,tip_x_mm,tip_y_mm,deflection\n";

    for (size_t i = 0; i < frames.size(); ++i) {
        reconstruct::ReconstructionResult res;
        try {
            res = reconstruct::reconstruct_cdm(frames[i], cfg.geometry, cfg.calibration, cfg.cdm,
                                               step_mm);
        } catch (const NumericError& e) {
            throw NumericError("frame " + std::to_string(i) + ": reconstruction failed: " +
                               e.what());
        }
        if (!tip_only) {
            char name[64];
            std::snprintf(name, sizeof name, "%s_%06zu.csv", prefix.c_str(), i);
            io::save_centerline_csv((fs::path(out_dir) / name).string(), res.polyline);
        }
        const char* defl = res.estimate.deflection == sensing::Deflection::Positive ? "positive"
                           : res.estimate.deflection == sensing::Deflection::Negative
                               ? "negative"
                               : "straight";
        summary << i << ',' << io::format_number(frames[i].timestamp_s) << ','
                << io::format_number(res.polyline.tip().x) << ','
                << io::format_number(res.polyline.tip().y) << ',' << defl << "\n";
    }
    std::cout << "reconstructed " << frames.size() << " frame(s) into " << out_dir << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& scenario, double angle_deg,
                 double cable_mm, int direction, int frame_count, double noise_nm,
                 std::uint64_t seed, const std::vector<double>& friction_pos,
                 const std::vector<double>& friction_neg, const std::vector<double>& twist_deg,
                 const std::vector<double>& delta_t, const std::string& out_prefix) {
    const SystemConfig cfg = load_config(config_path_or_env(config_path));
    simulate::ScenarioSpec spec;
    spec.kind = parse_kind(scenario);
    spec.jig_angle_deg = angle_deg;
    spec.jig_arc_length_mm = cfg.cdm.total_arc_length_mm;
    spec.cable_mm = cable_mm;
    spec.direction = direction;
    spec.frame_count = frame_count;
    spec.noise_sigma_nm = noise_nm;
    if (!friction_pos.empty()) spec.friction_pos = triple(friction_pos, "--friction-pos");
    if (!friction_neg.empty()) spec.friction_neg = triple(friction_neg, "--friction-neg");
    if (!twist_deg.empty()) {
        const auto t = triple(twist_deg, "--twist-deg");
        for (size_t j = 0; j < 3; ++j) spec.twist_rad[j] = deg_to_rad(t[j]);
    }
    if (!delta_t.empty()) spec.delta_t_kelvin = triple(delta_t, "--delta-t");

    const simulate::SynthesisResult synth =
        simulate::synthesize_frames(spec, cfg.geometry, cfg.cdm, seed);

    io::save_frames_csv(out_prefix + "_frames.csv", synth.frames);
    io::save_centerline_csv(out_prefix + "_truth_centerline.csv", synth.truth.polyline);
    std::ofstream aa(out_prefix + "_truth_aa.csv");
    aa << "aa,s_prime_mm,kappa_cm_per_mm,kappa_sensor_per_mm,sign\n";
    for (size_t j = 0; j < 3; ++j)
        aa << (j + 1) << ',' << io::format_number(synth.truth.aa[j].s_prime_mm) << ','
           << io::format_number(synth.truth.aa[j].kappa_cm_per_mm) << ','
           << io::format_number(synth.truth.aa[j].kappa_sensor_per_mm) << ','
           << synth.truth.aa[j].sign << "\n";
    std::cout << "wrote " << synth.frames.size() << " frame(s) to " << out_prefix
              << "_frames.csv (truth alongside)\n";
    return kExitOk;
}

int cmd_make_dataset(const std::string& config_path, const std::string& kind,
                     const std::string& sweep, const std::string& directions, double noise_nm,
                     std::uint64_t seed, const std::vector<double>& friction_pos,
                     const std::vector<double>& friction_neg, const std::vector<double>& twist_deg,
                     double groove_angle_deg, const std::string& out_path) {
    const SystemConfig cfg = load_config(config_path_or_env(config_path));
    if (kind == "twist") {
        // Straight + groove frame pair for the two-step twist procedure.
        std::array<double, 3> tw{0, 0, 0};
        if (!twist_deg.empty()) {
            const auto t = triple(twist_deg, "--twist-deg");
            for (size_t j = 0; j < 3; ++j) tw[j] = deg_to_rad(t[j]);
        }
        const double groove_kappa =
            simulate::jig_curvature({groove_angle_deg, cfg.cdm.total_arc_length_mm});
        const auto pair =
            simulate::twist_measurement_frames(cfg.geometry, tw, groove_kappa, noise_nm, seed);
        io::save_frames_csv(out_path + "_straight.csv", {pair.straight});
        io::save_frames_csv(out_path + "_groove.csv", {pair.groove});
        std::cout << "wrote " << out_path << "_straight.csv and " << out_path
                  << "_groove.csv (groove kappa " << io::format_number(groove_kappa) << " 1/mm)\n";
        return kExitOk;
    }
    const std::vector<double> angles = sweep_values(sweep);
    calibrate::CalibrationDataset dataset;
    if (kind == "geometry") {
        dataset = simulate::geometry_jig_dataset(cfg.geometry, angles, sweep_values(directions),
                                                 cfg.cdm.total_arc_length_mm, noise_nm, seed);
    } else if (kind == "friction") {
        std::array<double, 3> cp{1, 1, 1}, cn{1, 1, 1}, tw{0, 0, 0};
        if (!friction_pos.empty()) cp = triple(friction_pos, "--friction-pos");
        if (!friction_neg.empty()) cn = triple(friction_neg, "--friction-neg");
        if (!twist_deg.empty()) {
            const auto t = triple(twist_deg, "--twist-deg");
            for (size_t j = 0; j < 3; ++j) tw[j] = deg_to_rad(t[j]);
        }
        dataset = simulate::friction_jig_dataset(cfg.geometry, cfg.cdm, angles,
                                                 cfg.cdm.total_arc_length_mm, cp, cn, tw,
                                                 noise_nm, seed);
    } else {
        throw ParseError("dataset kind must be 'geometry', 'friction' or 'twist'");
    }
    io::save_dataset_csv(out_path, dataset);
    std::cout << "wrote " << dataset.samples.size() << " samples to " << out_path << "\n";
    return kExitOk;
}

int cmd_calibrate_geometry(const std::string& config_path, const std::string& dataset_path,
                           bool shared_theta, const std::string& out_path) {
    SystemConfig cfg = load_config(config_path_or_env(config_path));
    const calibrate::CalibrationDataset dataset = io::load_dataset_csv(dataset_path);
    calibrate::GeometryFitOptions opt;
    opt.shared_theta = shared_theta;
    cfg.geometry = calibrate::fit_node_geometry(dataset, cfg.geometry, opt);
    save_config(cfg, out_path);
    std::cout << "fitted node table (" << (shared_theta ? "shared" : "per-fiber")
              << " orientation; r mm / theta deg):\n";
    for (int k = 1; k <= 2; ++k) {
        std::cout << "  fiber " << k << ":";
        for (int j = 1; j <= 3; ++j)
            std::cout << "  " << io::format_number(cfg.geometry.node(k, j).r_mm) << " / "
                      << io::format_number(rad_to_deg(cfg.geometry.node(k, j).theta_rad));
        std::cout << "\n";
    }
    std::cout << "updated config written to " << out_path << "\n";
    return kExitOk;
}

int cmd_calibrate_friction(const std::string& config_path, const std::string& dataset_path,
                           bool require_both, const std::string& out_path) {
    SystemConfig cfg = load_config(config_path_or_env(config_path));
    const calibrate::CalibrationDataset dataset = io::load_dataset_csv(dataset_path);
    const bool has_pos = dataset.count_with_sign(+1) >= 2;
    const bool has_neg = dataset.count_with_sign(-1) >= 2;
    if (require_both || (has_pos && has_neg)) {
        const calibrate::FrictionFit fit = calibrate::fit_friction_coeffs(dataset, cfg.geometry);
        cfg.calibration.c_pos = fit.c_pos;
        cfg.calibration.c_neg = fit.c_neg;
    } else if (has_pos || has_neg) {
        // Partial update: fit only the sign that has data.
        const int sign = has_pos ? +1 : -1;
        const auto c = calibrate::fit_friction_one_sign(dataset, cfg.geometry, sign);
        (sign > 0 ? cfg.calibration.c_pos : cfg.calibration.c_neg) = c;
        std::cerr << "note: only " << (has_pos ? "positive" : "negative")
                  << "-deflection samples present; other sign left unchanged\n";
    } else {
        throw InvariantError("friction calibration: no usable samples of either sign");
    }
    cfg.calibration.validate();
    save_config(cfg, out_path);
    std::cout << "c_pos = " << io::format_number(cfg.calibration.c_pos[0]) << ", "
              << io::format_number(cfg.calibration.c_pos[1]) << ", "
              << io::format_number(cfg.calibration.c_pos[2]) << "\n";
    std::cout << "c_neg = " << io::format_number(cfg.calibration.c_neg[0]) << ", "
              << io::format_number(cfg.calibration.c_neg[1]) << ", "
              << io::format_number(cfg.calibration.c_neg[2]) << "\n";
    std::cout << "updated config written to " << out_path << "\n";
    return kExitOk;
}

int cmd_calibrate_twist(const std::string& config_path, const std::string& straight_path,
                        const std::string& groove_path, double groove_angle_deg,
                        double groove_arc_mm, const std::string& out_path) {
    SystemConfig cfg = load_config(config_path_or_env(config_path));
    const auto straight = io::load_frames_csv(straight_path);
    const auto groove = io::load_frames_csv(groove_path);
    if (straight.empty() || groove.empty())
        throw ParseError("twist calibration needs at least one frame per file");
    const double groove_kappa =
        simulate::jig_curvature({groove_angle_deg, groove_arc_mm});
    cfg.calibration.twist_rad =
        calibrate::measure_twist(straight.front(), groove.front(), groove_kappa, cfg.geometry);
    cfg.calibration.validate();
    save_config(cfg, out_path);
    std::cout << "twist offsets (deg): " << io::format_number(rad_to_deg(cfg.calibration.twist_rad[0]))
              << ", " << io::format_number(rad_to_deg(cfg.calibration.twist_rad[1])) << ", "
              << io::format_number(rad_to_deg(cfg.calibration.twist_rad[2])) << "\n";
    std::cout << "updated config written to " << out_path << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& config_path, const std::string& dataset_path) {
    const SystemConfig cfg = load_config(config_path_or_env(config_path));
    const calibrate::CalibrationDataset dataset = io::load_dataset_csv(dataset_path);
    const calibrate::ValidationReport report =
        calibrate::validate(dataset, cfg.geometry, cfg.calibration);
    std::cout << report.format();
    return kExitOk;
}

// Bounded single-producer single-consumer frame queue for stream mode.
// A full queue back-pressures the producer (which in turn blocks the pipe);
// a frame is dropped and counted only when no slot frees within the grace
// window, i.e. the worker has genuinely stalled.
class FrameQueue {
public:
    explicit FrameQueue(size_t depth) : depth_(depth) {}

    bool push(std::uint64_t id, std::optional<WavelengthFrame> frame, std::string error) {
        std::unique_lock lock(mtx_);
        if (!space_cv_.wait_for(lock, std::chrono::seconds(1),
                                [&] { return q_.size() < depth_; })) {
            ++dropped_;
            return false;
        }
        q_.push_back({id, std::move(frame), std::move(error)});
        cv_.notify_one();
        return true;
    }

    void close() {
        std::lock_guard lock(mtx_);
        closed_ = true;
        cv_.notify_one();
    }

    struct Item {
        std::uint64_t id;
        std::optional<WavelengthFrame> frame; // nullopt => parse error carried below
        std::string error;
    };

    std::optional<Item> pop() {
        std::unique_lock lock(mtx_);
        cv_.wait(lock, [&] { return closed_ || !q_.empty(); });
        if (q_.empty()) return std::nullopt;
        Item item = std::move(q_.front());
        q_.pop_front();
        space_cv_.notify_one();
        return item;
    }

    std::uint64_t dropped() const { return dropped_; }

private:
    size_t depth_;
    std::deque<Item> q_;
    std::mutex mtx_;
    std::condition_variable cv_;
    std::condition_variable space_cv_;
    bool closed_ = false;
    std::atomic<std::uint64_t> dropped_{0};
};

int cmd_stream(const std::string& config_path, bool tip_only, double step_mm, size_t queue_depth) {
    const SystemConfig cfg = load_config(config_path_or_env(config_path));

    FrameQueue queue(queue_depth);
    std::thread reader([&] {
        std::string line;
        std::uint64_t id = 0;
        while (std::getline(std::cin, line)) {
            std::optional<WavelengthFrame> frame;
            std::string error;
            try {
                frame = io::parse_stream_record(line);
                if (!frame) continue; // blank line
            } catch (const std::exception& e) {
                error = e.what();
            }
            queue.push(id++, std::move(frame), std::move(error));
        }
        queue.close();
    });

    std::uint64_t reported_drops = 0;
    while (auto item = queue.pop()) {
        if (!item->frame) {
            std::cout << io::stream_error_record(item->id, item->error) << "\n";
        } else {
            try {
                const auto res = reconstruct::reconstruct_cdm(*item->frame, cfg.geometry,
                                                              cfg.calibration, cfg.cdm, step_mm);
                std::cout << io::stream_output_record(item->id, *item->frame, res, tip_only)
                          << "\n";
            } catch (const std::exception& e) {
                std::cout << io::stream_error_record(item->id, e.what()) << "\n";
            }
        }
        if (queue.dropped() > reported_drops) {
            reported_drops = queue.dropped();
            std::cout << io::stream_drop_record(reported_drops) << "\n";
        }
        std::cout.flush();
    }
    reader.join();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FBG shape sensing: CDM centerline reconstruction toolkit"};
    app.require_subcommand(1);

    std::string config_path, frames_path, out_dir = "out", prefix = "centerline";
    std::string dataset_path, out_path, scenario = "jig", sweep = "-90:10:90", directions = "0";
    std::string straight_path, groove_path, dataset_kind = "friction";
    double step_mm = 0.1, angle_deg = 90.0, cable_mm = 5.0, noise_nm = 0.0;
    double groove_angle_deg = 45.0, groove_arc_mm = 35.0;
    int direction = +1, frame_count = 1;
    std::uint64_t seed = 1;
    std::size_t queue_depth = 64;
    bool tip_only = false, shared_theta = false, require_both = false;
    std::vector<double> friction_pos, friction_neg, twist_deg, delta_t;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file (or FBGSHAPE_CONFIG)");
    };

    CLI::App* na = app.add_subcommand("neutral-axis", "print the composite-beam neutral-axis offset");
    add_config(na);

    CLI::App* rec = app.add_subcommand("reconstruct", "batch-reconstruct centerlines from a frames CSV");
    add_config(rec);
    rec->add_option("--frames", frames_path, "input frames CSV")->required();
    rec->add_option("--out-dir", out_dir, "output directory");
    rec->add_option("--prefix", prefix, "output file prefix");
    rec->add_option("--step", step_mm, "integration step, mm");
    rec->add_flag("--tip-only", tip_only, "write only the summary (no per-frame polylines)");

    CLI::App* st = app.add_subcommand("stream", "reconstruct JSON-lines frames from stdin");
    add_config(st);
    st->add_flag("--tip-only", tip_only, "emit tip records instead of full centerlines");
    st->add_option("--step", step_mm, "integration step, mm");
    st->add_option("--queue-depth", queue_depth, "bounded input queue depth");

    CLI::App* sim = app.add_subcommand("simulate", "synthesize frames plus ground truth");
    add_config(sim);
    sim->add_option("--scenario", scenario,
                    "jig | free-bend | obstacle-proximal | obstacle-middle | obstacle-distal");
    sim->add_option("--angle", angle_deg, "jig bend angle, deg");
    sim->add_option("--cable", cable_mm, "free-bend/obstacle cable displacement, mm [0..5]");
    sim->add_option("--direction", direction, "deflection direction, +1 or -1");
    sim->add_option("--frames", frame_count, "number of frames");
    sim->add_option("--noise", noise_nm, "wavelength noise sigma, nm");
    sim->add_option("--seed", seed, "random seed");
    sim->add_option("--friction-pos", friction_pos, "injected positive-deflection coefficients a,b,c")
        ->delimiter(',');
    sim->add_option("--friction-neg", friction_neg, "injected negative-deflection coefficients a,b,c")
        ->delimiter(',');
    sim->add_option("--twist-deg", twist_deg, "injected per-area twist, deg a,b,c")->delimiter(',');
    sim->add_option("--delta-t", delta_t, "per-area temperature change, K a,b,c")->delimiter(',');
    sim->add_option("--out", out_path, "output prefix")->required();

    CLI::App* mk = app.add_subcommand("make-dataset", "synthesize a calibration dataset CSV");
    add_config(mk);
    mk->add_option("--kind", dataset_kind, "geometry | friction | twist");
    mk->add_option("--groove-angle", groove_angle_deg, "twist kind: groove bend angle, deg");
    mk->add_option("--sweep", sweep, "groove angles, lo:step:hi or list (deg)");
    mk->add_option("--directions", directions, "geometry kind: direction offsets (deg)");
    mk->add_option("--noise", noise_nm, "wavelength noise sigma, nm");
    mk->add_option("--seed", seed, "random seed");
    mk->add_option("--friction-pos", friction_pos, "injected coefficients a,b,c")->delimiter(',');
    mk->add_option("--friction-neg", friction_neg, "injected coefficients a,b,c")->delimiter(',');
    mk->add_option("--twist-deg", twist_deg, "injected twist, deg a,b,c")->delimiter(',');
    mk->add_option("--out", out_path, "output CSV")->required();

    CLI::App* cg = app.add_subcommand("calibrate-geometry", "fit node positions/orientations");
    add_config(cg);
    cg->add_option("--dataset", dataset_path, "calibration dataset CSV")->required();
    cg->add_flag("--shared-theta", shared_theta, "one orientation per active area");
    cg->add_option("--out", out_path, "updated config path")->required();

    CLI::App* cf = app.add_subcommand("calibrate-friction", "fit per-sign friction coefficients");
    add_config(cf);
    cf->add_option("--dataset", dataset_path, "calibration dataset CSV")->required();
    cf->add_flag("--require-both", require_both, "fail unless both deflection signs are present");
    cf->add_option("--out", out_path, "updated config path")->required();

    CLI::App* ct = app.add_subcommand("calibrate-twist", "measure per-area twist offsets");
    add_config(ct);
    ct->add_option("--straight", straight_path, "straight reference frames CSV")->required();
    ct->add_option("--groove", groove_path, "constant-curvature groove frames CSV")->required();
    ct->add_option("--groove-angle", groove_angle_deg, "groove bend angle, deg");
    ct->add_option("--groove-arc", groove_arc_mm, "groove arc length, mm");
    ct->add_option("--out", out_path, "updated config path")->required();

    CLI::App* va = app.add_subcommand("validate", "held-out error statistics");
    add_config(va);
    va->add_option("--dataset", dataset_path, "validation dataset CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (na->parsed()) return cmd_neutral_axis(config_path);
        if (rec->parsed())
            return cmd_reconstruct(config_path, frames_path, out_dir, prefix, step_mm, tip_only);
        if (st->parsed()) return cmd_stream(config_path, tip_only, step_mm, queue_depth);
        if (sim->parsed())
            return cmd_simulate(config_path, scenario, angle_deg, cable_mm, direction, frame_count,
                                noise_nm, seed, friction_pos, friction_neg, twist_deg, delta_t,
                                out_path);
        if (mk->parsed())
            return cmd_make_dataset(config_path, dataset_kind, sweep, directions, noise_nm, seed,
                                    friction_pos, friction_neg, twist_deg, groove_angle_deg,
                                    out_path);
        if (cg->parsed()) return cmd_calibrate_geometry(config_path, dataset_path, shared_theta, out_path);
        if (cf->parsed()) return cmd_calibrate_friction(config_path, dataset_path, require_both, out_path);
        if (ct->parsed())
            return cmd_calibrate_twist(config_path, straight_path, groove_path, groove_angle_deg,
                                       groove_arc_mm, out_path);
        if (va->parsed()) return cmd_validate(config_path, dataset_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InvariantError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
