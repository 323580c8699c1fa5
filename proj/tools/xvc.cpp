// xvc: sparse-video completion toolkit.
//
// Pipeline subcommands: synth -> sample -> complete -> evaluate, plus
// calibrate (motion window size) and bench (fraction x method PSNR sweep).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xvc/adefan.hpp"
#include "xvc/efan.hpp"
#include "xvc/io.hpp"
#include "xvc/metrics.hpp"
#include "xvc/motion.hpp"
#include "xvc/sampler.hpp"
#include "xvc/synth.hpp"

namespace {

using namespace xvc;

std::string format_db(double db) {
    if (std::isinf(db)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", db);
    return buf;
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot create");
    out << text;
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

// "a,b,c" | "lo..hi" | "lo..hi:step" (step defaults to 0.01)
std::vector<double> parse_fractions(const std::string& spec) {
    std::vector<double> out;
    const auto range_pos = spec.find("..");
    if (range_pos != std::string::npos) {
        const double lo = std::stod(spec.substr(0, range_pos));
        std::string rest = spec.substr(range_pos + 2);
        double step = 0.01;
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
            step = std::stod(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        const double hi = std::stod(rest);
        if (!(step > 0.0) || hi < lo) throw CLI::ValidationError("--fractions", "bad range");
        for (double f = lo; f <= hi + 1e-12; f += step) out.push_back(f);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("--fractions", "empty list");
    return out;
}

Velocity parse_velocity(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) {
        return Velocity{std::stoi(spec), 0};
    }
    return Velocity{std::stoi(spec.substr(0, comma)), std::stoi(spec.substr(comma + 1))};
}

int default_threads_from_env() {
    if (const char* env = std::getenv("XVC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 0;  // resolve to hardware concurrency
}

struct CompleteOverrides {
    double sigma = 0.0;
    int radius = 0;
    double sigma_t = 0.0;
    int temporal_halfwidth = -1;
    double alpha = 0.0;
    double beta = -1.0;
    int window_size = 0;
    int window_stride = 0;
    int fr_max = 0;
    double blend_sigma_ratio = 0.0;
};

AdefanParams build_params(double fraction, const CompleteOverrides& o) {
    AdefanParams p = default_adefan_params(fraction);
    if (o.sigma > 0.0) p.efan.sigma = o.sigma;
    if (o.radius > 0) p.efan.radius = o.radius;
    if (o.sigma_t > 0.0) p.efan.sigma_t = o.sigma_t;
    if (o.temporal_halfwidth >= 0) p.efan.temporal_halfwidth = o.temporal_halfwidth;
    if (o.alpha > 0.0) p.motion.alpha = o.alpha;
    if (o.beta >= 0.0) p.motion.beta = o.beta;
    if (o.window_size > 0) {
        p.motion.window_size = o.window_size;
        p.window_stride = std::max(1, o.window_size / 2);
    }
    if (o.window_stride > 0) p.window_stride = o.window_stride;
    if (o.fr_max > 0) p.motion.fr_max = o.fr_max;
    if (o.blend_sigma_ratio > 0.0) p.blend_sigma_ratio = o.blend_sigma_ratio;
    return p;
}

std::vector<DenseFrame> run_method(const std::string& method, const SparseVideo& video,
                                   const AdefanParams& params, int threads,
                                   const std::string& dump_depths) {
    if (method == "efan2d") return complete_video_2d(video, params.efan, {}, threads);
    if (method == "efan3d") return complete_video_3d(video, params.efan, {}, threads);
    if (method == "adefan") {
        if (!dump_depths.empty()) {
            write_text(dump_depths, depth_fields_csv(compute_depth_fields(video, params, threads)));
        }
        return complete_video_adefan(video, params, {}, threads);
    }
    throw std::runtime_error("unknown method '" + method + "'");
}

std::string evaluate_csv(const PsnrReport& report) {
    std::string csv = "frame_index,psnr_db\n";
    for (std::size_t i = 0; i < report.per_frame_db.size(); ++i) {
        csv += std::to_string(i) + "," + format_db(report.per_frame_db[i]) + "\n";
    }
    csv += "mean_frames," + format_db(report.mean_frames_db) + "\n";
    csv += "pooled," + format_db(report.pooled_db) + "\n";
    csv += "mse," + format_value(report.mse) + "\n";
    return csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse-video completion toolkit"};
    app.require_subcommand(1);
    int threads = default_threads_from_env();
    app.add_option("--threads", threads, "worker thread cap (0 = hardware)");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic PPM sequence");
    std::string synth_kind = "static";
    int synth_w = 320, synth_h = 240, synth_frames = 60, synth_cell = 24;
    std::string synth_velocity = "4,0";
    std::uint64_t synth_seed = 1;
    std::string synth_out;
    synth_cmd->add_option("--kind", synth_kind, "static | moving | mixed")
        ->check(CLI::IsMember({"static", "moving", "mixed"}));
    synth_cmd->add_option("--width", synth_w);
    synth_cmd->add_option("--height", synth_h);
    synth_cmd->add_option("--frames", synth_frames);
    synth_cmd->add_option("--velocity", synth_velocity, "vx,vy pixels per frame");
    synth_cmd->add_option("--cell-size", synth_cell, "texture blur scale in pixels");
    synth_cmd->add_option("--seed", synth_seed);
    synth_cmd->add_option("--out", synth_out, "output directory")->required();

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "random-sample a PPM sequence");
    std::string sample_in, sample_pattern = "*.ppm", sample_out;
    double sample_fraction = 0.01;
    std::uint64_t sample_seed = 1;
    sample_cmd->add_option("--in", sample_in, "input frame directory")->required();
    sample_cmd->add_option("--pattern", sample_pattern, "frame filename pattern");
    sample_cmd->add_option("--fraction", sample_fraction, "sampling fraction in (0, 1]")
        ->required();
    sample_cmd->add_option("--seed", sample_seed);
    sample_cmd->add_option("--out", sample_out, "output .xvc container")->required();

    // complete
    auto* complete_cmd = app.add_subcommand("complete", "reconstruct a sparse container");
    std::string complete_in, complete_method, complete_out, dump_depths;
    CompleteOverrides overrides;
    complete_cmd->add_option("--in", complete_in, "input .xvc container")->required();
    complete_cmd->add_option("--method", complete_method, "efan2d | efan3d | adefan")
        ->required()
        ->check(CLI::IsMember({"efan2d", "efan3d", "adefan"}));
    complete_cmd->add_option("--out", complete_out, "output frame directory")->required();
    complete_cmd->add_option("--sigma", overrides.sigma, "spatial Gaussian scale override");
    complete_cmd->add_option("--radius", overrides.radius, "spatial window half-extent override");
    complete_cmd->add_option("--sigma-t", overrides.sigma_t, "temporal Gaussian scale override");
    complete_cmd->add_option("--temporal-halfwidth", overrides.temporal_halfwidth,
                             "temporal half-extent override (efan3d)");
    complete_cmd->add_option("--alpha", overrides.alpha, "KL smoothing mix override");
    complete_cmd->add_option("--beta", overrides.beta, "divergence impact override");
    complete_cmd->add_option("--window-size", overrides.window_size, "motion window side override");
    complete_cmd->add_option("--window-stride", overrides.window_stride,
                             "motion window stride override");
    complete_cmd->add_option("--fr-max", overrides.fr_max, "maximum one-sided depth override");
    complete_cmd->add_option("--blend-sigma-ratio", overrides.blend_sigma_ratio,
                             "window blend sigma = window_size / ratio");
    complete_cmd->add_option("--dump-depths", dump_depths, "write the depth-field CSV here");

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "PSNR of a reconstruction");
    std::string eval_reference, eval_test, eval_out;
    std::string eval_ref_pattern = "*.ppm", eval_test_pattern = "*.ppm";
    evaluate_cmd->add_option("--reference", eval_reference, "reference frame directory")
        ->required();
    evaluate_cmd->add_option("--test", eval_test, "reconstructed frame directory")->required();
    evaluate_cmd->add_option("--reference-pattern", eval_ref_pattern);
    evaluate_cmd->add_option("--test-pattern", eval_test_pattern);
    evaluate_cmd->add_option("--out", eval_out, "output CSV (defaults to stdout)");

    // calibrate
    auto* calibrate_cmd = app.add_subcommand("calibrate", "choose the motion window size");
    std::string cal_in, cal_out;
    double cal_fraction = 0.01;
    std::uint64_t cal_seed = 1;
    std::vector<int> cal_sizes = {80, 120, 160};
    double cal_lo = 0.15, cal_hi = 0.2;
    calibrate_cmd->add_option("--in", cal_in, "dense reference frame directory")->required();
    calibrate_cmd->add_option("--fraction", cal_fraction);
    calibrate_cmd->add_option("--seed", cal_seed);
    calibrate_cmd->add_option("--sizes", cal_sizes, "candidate window sizes")->delimiter(',');
    calibrate_cmd->add_option("--mse-lo", cal_lo);
    calibrate_cmd->add_option("--mse-hi", cal_hi);
    calibrate_cmd->add_option("--out", cal_out, "output CSV (defaults to stdout)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "fraction x method PSNR sweep");
    std::string bench_in, bench_out;
    std::string bench_fractions = "0.01..0.08";
    std::vector<std::string> bench_methods = {"efan2d", "efan3d", "adefan"};
    std::uint64_t bench_seed = 1;
    bench_cmd->add_option("--in", bench_in, "dense reference frame directory")->required();
    bench_cmd->add_option("--fractions", bench_fractions, "list a,b,... or range lo..hi[:step]");
    bench_cmd->add_option("--methods", bench_methods)->delimiter(',');
    bench_cmd->add_option("--seed", bench_seed);
    bench_cmd->add_option("--out", bench_out, "output CSV (defaults to stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_cmd->parsed()) {
            const Velocity v = parse_velocity(synth_velocity);
            std::vector<DenseFrame> frames;
            if (synth_kind == "static") {
                frames = gen_static(synth_w, synth_h, synth_frames, synth_seed, synth_cell);
            } else if (synth_kind == "moving") {
                frames = gen_moving_texture(synth_w, synth_h, synth_frames, v, synth_seed,
                                            synth_cell);
            } else {
                frames = gen_mixed(synth_w, synth_h, synth_frames, v, synth_seed, synth_cell);
            }
            write_image_sequence(frames, synth_out);
        } else if (sample_cmd->parsed()) {
            const std::vector<DenseFrame> frames = read_image_sequence(sample_in, sample_pattern);
            const SparseVideo video = sample_video(frames, {sample_fraction, sample_seed});
            write_sparse(video, sample_out);
        } else if (complete_cmd->parsed()) {
            const SparseVideo video = read_sparse(complete_in);
            const AdefanParams params = build_params(video.fraction, overrides);
            write_image_sequence(run_method(complete_method, video, params, threads, dump_depths),
                                 complete_out);
        } else if (evaluate_cmd->parsed()) {
            const PsnrReport report =
                psnr_video(read_image_sequence(eval_reference, eval_ref_pattern),
                           read_image_sequence(eval_test, eval_test_pattern));
            const std::string csv = evaluate_csv(report);
            if (eval_out.empty()) {
                std::cout << csv;
            } else {
                write_text(eval_out, csv);
            }
        } else if (calibrate_cmd->parsed()) {
            const std::vector<DenseFrame> dense = read_image_sequence(cal_in);
            const SparseVideo sparse = sample_video(dense, {cal_fraction, cal_seed});
            MotionParams params;
            std::vector<CalibrationEntry> table;
            int chosen = -1;
            std::string failure;
            try {
                chosen = calibrate_window_size(dense, sparse, cal_sizes, {cal_lo, cal_hi}, params,
                                               &table);
            } catch (const CalibrationError& e) {
                failure = e.what();
                table = e.table;
            }
            std::string csv = "window_size,mse,pearson_r\n";
            for (const CalibrationEntry& e : table) {
                csv += std::to_string(e.window_size) + "," + format_value(e.mse) + "," +
                       format_value(e.pearson_r) + "\n";
            }
            if (cal_out.empty()) {
                std::cout << csv;
            } else {
                write_text(cal_out, csv);
            }
            if (!failure.empty()) throw std::runtime_error(failure);
            std::cout << "chosen_window_size=" << chosen << "\n";
        } else if (bench_cmd->parsed()) {
            const std::vector<DenseFrame> dense = read_image_sequence(bench_in);
            const std::vector<double> fractions = parse_fractions(bench_fractions);
            std::string csv = "fraction,method,pooled_psnr_db,mean_frame_psnr_db\n";
            for (double fraction : fractions) {
                const SparseVideo video = sample_video(dense, {fraction, bench_seed});
                const AdefanParams params = build_params(fraction, overrides);
                for (const std::string& method : bench_methods) {
                    const PsnrReport report =
                        psnr_video(dense, run_method(method, video, params, threads, ""));
                    csv += format_value(fraction) + "," + method + "," +
                           format_db(report.pooled_db) + "," +
                           format_db(report.mean_frames_db) + "\n";
                }
            }
            if (bench_out.empty()) {
                std::cout << csv;
            } else {
                write_text(bench_out, csv);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
