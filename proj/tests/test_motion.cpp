#include "xvc/motion.hpp"

#include <cmath>

#include "doctest.h"
#include "xvc/sampler.hpp"
#include "xvc/synth.hpp"

using namespace xvc;

namespace {

// A frame whose samples are n copies of color (r, r, r) plus m copies of
// (c2, c2, c2); positions are irrelevant for histogram content.
SparseFrame two_color_frame(int n_a, std::uint8_t a, int n_b, std::uint8_t b) {
    SparseFrame f;
    f.width = 64;
    f.height = 64;
    int i = 0;
    for (int k = 0; k < n_a; ++k, ++i) {
        f.samples.push_back(Sample{static_cast<std::uint16_t>(i % 64),
                                   static_cast<std::uint16_t>(i / 64), a, a, a});
    }
    for (int k = 0; k < n_b; ++k, ++i) {
        f.samples.push_back(Sample{static_cast<std::uint16_t>(i % 64),
                                   static_cast<std::uint16_t>(i / 64), b, b, b});
    }
    return f;
}

const Rect kFullWindow{0, 0, 64, 64};

ColorHistogram random_histogram(Xoshiro256StarStar& rng) {
    SparseFrame f;
    f.width = 64;
    f.height = 64;
    const int n = 8 + static_cast<int>(rng.uniform_below(40));
    for (int i = 0; i < n; ++i) {
        f.samples.push_back(Sample{static_cast<std::uint16_t>(i % 64),
                                   static_cast<std::uint16_t>(i / 64),
                                   static_cast<std::uint8_t>(rng.uniform_below(256)),
                                   static_cast<std::uint8_t>(rng.uniform_below(256)),
                                   static_cast<std::uint8_t>(rng.uniform_below(256))});
    }
    return histogram(f, kFullWindow);
}

}  // namespace

TEST_CASE("histogram of a single sample concentrates one bin per channel") {
    const SparseFrame f = two_color_frame(1, 5, 0, 0);
    const ColorHistogram h = histogram(f, kFullWindow);
    CHECK(h.count == 1);
    for (int ch = 0; ch < 3; ++ch) {
        CHECK(h.bins[ch][5] == 1.0);
        double sum = 0.0;
        for (double v : h.bins[ch]) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("histogram splits mass between two extreme intensities") {
    SparseFrame f;
    f.width = 64;
    f.height = 64;
    f.samples.push_back(Sample{0, 0, 0, 7, 7});
    f.samples.push_back(Sample{1, 0, 255, 7, 7});
    const ColorHistogram h = histogram(f, kFullWindow);
    CHECK(h.bins[0][0] == 0.5);
    CHECK(h.bins[0][255] == 0.5);
}

TEST_CASE("histogram of an empty window is all-zero") {
    const SparseFrame f = two_color_frame(4, 9, 0, 0);
    const ColorHistogram h = histogram(f, Rect{32, 32, 8, 8});
    CHECK(h.count == 0);
    for (int ch = 0; ch < 3; ++ch) {
        for (double v : h.bins[ch]) CHECK(v == 0.0);
    }
}

TEST_CASE("dense histogram equals sparse histogram under full sampling") {
    const DenseFrame dense = value_noise_texture(48, 40, 11, 8);
    const SparseFrame sparse = sample_frame(dense, {1.0, 11}, 0);
    const Rect window{8, 4, 24, 30};
    const ColorHistogram hd = histogram(dense, window);
    const ColorHistogram hs = histogram(sparse, window);
    CHECK(hd.count == hs.count);
    for (int ch = 0; ch < 3; ++ch) {
        for (int c = 0; c < 256; ++c) CHECK(hd.bins[ch][c] == hs.bins[ch][c]);
    }
}

TEST_CASE("smoothed_kl is zero between a histogram and itself") {
    Xoshiro256StarStar rng(3);
    for (int i = 0; i < 50; ++i) {
        const ColorHistogram h = random_histogram(rng);
        CHECK(smoothed_kl(h, h, 0.95) == 0.0);
    }
}

TEST_CASE("smoothed_kl two-point value matches the 256-term summation") {
    // p all mass at bin 0, q all mass at bin 1, alpha = 0.95; expected value
    // frozen from an independent summation script.
    const SparseFrame pf = two_color_frame(1, 0, 0, 0);
    const SparseFrame qf = two_color_frame(1, 1, 0, 0);
    const double kl =
        smoothed_kl(histogram(pf, kFullWindow), histogram(qf, kFullWindow), 0.95);
    CHECK(kl == doctest::Approx(8.065330894889099).epsilon(1e-12));
}

TEST_CASE("smoothed_kl is nonnegative and finite") {
    Xoshiro256StarStar rng(17);
    for (int i = 0; i < 2000; ++i) {
        const ColorHistogram p = random_histogram(rng);
        const ColorHistogram q = random_histogram(rng);
        const double v = smoothed_kl(p, q, 0.95);
        CHECK(v >= 0.0);
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("smoothed_kl is finite across the stated alpha range") {
    const ColorHistogram p = histogram(two_color_frame(9, 0, 0, 0), kFullWindow);
    const ColorHistogram q = histogram(two_color_frame(9, 255, 0, 0), kFullWindow);
    for (double alpha : {1e-5, 0.01, 0.5, 0.95, 1.0 - 1e-5}) {
        const double v = smoothed_kl(p, q, alpha);
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
    }
}

TEST_CASE("smoothed_kl rejects empty histograms") {
    const ColorHistogram ok = histogram(two_color_frame(9, 10, 0, 0), kFullWindow);
    ColorHistogram empty;
    CHECK_THROWS_AS(smoothed_kl(ok, empty, 0.95), std::invalid_argument);
    CHECK_THROWS_AS(smoothed_kl(empty, ok, 0.95), std::invalid_argument);
}

TEST_CASE("divergence search stops when divergence starts to fall") {
    // Frame 0: pure A. Frame 1: pure B (large divergence). Frame 2: mixture
    // closer to A (smaller divergence). The search must stop at m = 1 and
    // report the frame-0-vs-frame-1 value.
    SparseVideo video;
    video.width = 64;
    video.height = 64;
    video.fraction = 0.01;
    video.frames.push_back(two_color_frame(12, 10, 0, 0));
    video.frames.push_back(two_color_frame(12, 200, 0, 0));
    video.frames.push_back(two_color_frame(9, 10, 3, 200));

    MotionParams params;
    params.window_size = 64;
    const double expected = smoothed_kl(histogram(video.frames[0], kFullWindow),
                                        histogram(video.frames[1], kFullWindow), params.alpha);
    const double got = divergence_search(video, kFullWindow, 0, Direction::forward, params);
    CHECK(got == expected);
}

TEST_CASE("divergence search rides a monotone increase to the boundary") {
    // Divergence grows with m, so the search only stops at the video edge
    // and returns the last value.
    SparseVideo video;
    video.width = 64;
    video.height = 64;
    video.fraction = 0.01;
    video.frames.push_back(two_color_frame(12, 10, 0, 0));
    video.frames.push_back(two_color_frame(9, 10, 3, 200));
    video.frames.push_back(two_color_frame(6, 10, 6, 200));
    video.frames.push_back(two_color_frame(12, 200, 0, 0));

    MotionParams params;
    params.window_size = 64;
    const double expected = smoothed_kl(histogram(video.frames[0], kFullWindow),
                                        histogram(video.frames[3], kFullWindow), params.alpha);
    CHECK(divergence_search(video, kFullWindow, 0, Direction::forward, params) == expected);

    SUBCASE("fr_max caps the walk") {
        params.fr_max = 2;
        const double capped = smoothed_kl(histogram(video.frames[0], kFullWindow),
                                          histogram(video.frames[2], kFullWindow), params.alpha);
        CHECK(divergence_search(video, kFullWindow, 0, Direction::forward, params) == capped);
    }
    SUBCASE("backward from the far end walks the same pairs") {
        const double back = divergence_search(video, kFullWindow, 3, Direction::backward, params);
        CHECK(back == smoothed_kl(histogram(video.frames[3], kFullWindow),
                                  histogram(video.frames[0], kFullWindow), params.alpha));
    }
}

TEST_CASE("divergence search boundary and degenerate cases") {
    SparseVideo video;
    video.width = 64;
    video.height = 64;
    video.fraction = 0.01;
    video.frames.push_back(two_color_frame(12, 10, 0, 0));
    video.frames.push_back(two_color_frame(12, 60, 0, 0));

    MotionParams params;
    params.window_size = 64;
    SUBCASE("forward from the last frame sees no motion") {
        CHECK(divergence_search(video, kFullWindow, 1, Direction::forward, params) == 0.0);
    }
    SUBCASE("backward from the first frame sees no motion") {
        CHECK(divergence_search(video, kFullWindow, 0, Direction::backward, params) == 0.0);
    }
    SUBCASE("under-sampled base window yields zero") {
        SparseVideo thin = video;
        thin.frames[0].samples.resize(4);
        CHECK(divergence_search(thin, kFullWindow, 0, Direction::forward, params) == 0.0);
    }
    SUBCASE("under-sampled target frames are skipped") {
        SparseVideo mid = video;
        mid.frames.insert(mid.frames.begin() + 1, two_color_frame(3, 250, 0, 0));
        // frame 1 is skipped (3 samples); the search compares frame 0 vs 2.
        const double expected =
            smoothed_kl(histogram(mid.frames[0], kFullWindow),
                        histogram(mid.frames[2], kFullWindow), params.alpha);
        CHECK(divergence_search(mid, kFullWindow, 0, Direction::forward, params) == expected);
    }
}

TEST_CASE("depth formula reproduces hand-computed values") {
    CHECK(depth_from_divergence(0.0, 49, 14.0) == 49);
    CHECK(depth_from_divergence(1.0, 49, 14.0) == 4);  // ceil(49/15)
    CHECK(depth_from_divergence(1e3, 49, 14.0) == 1);
    CHECK(depth_from_divergence(1e12, 49, 14.0) == 1);
}

TEST_CASE("depth is monotone non-increasing in divergence") {
    int prev = 49;
    for (int i = 0; i <= 10000; ++i) {
        const double div = 1e-4 * i * i;  // dense near 0, far reach
        const int d = depth_from_divergence(div, 49, 14.0);
        CHECK(d >= 1);
        CHECK(d <= 49);
        CHECK(d <= prev);
        prev = d;
    }
}

TEST_CASE("static content yields deeper filtering than moving texture") {
    // Window smaller than the frame: a wrapped translation changes what the
    // window sees, while the full-frame histogram would be shift-invariant.
    const int w = 96, h = 96, frames = 10;
    const double f = 0.15;
    const SparseVideo stat = sample_video(gen_static(w, h, frames, 21, 32), {f, 500});
    const SparseVideo moving =
        sample_video(gen_moving_texture(w, h, frames, {32, 0}, 21, 32), {f, 500});

    MotionParams params;
    params.window_size = 48;
    const Rect window{0, 0, 48, 48};
    const double div_static = divergence_search(stat, window, 4, Direction::forward, params);
    const double div_moving = divergence_search(moving, window, 4, Direction::forward, params);
    CHECK(div_static < div_moving);
    CHECK(depth_from_divergence(div_static, params.fr_max, params.beta) >=
          depth_from_divergence(div_moving, params.fr_max, params.beta));
}

TEST_CASE("default window size tracks the sampling rate") {
    CHECK(default_window_size(0.01) == 160);
    CHECK(default_window_size(0.02) == 114);  // 160*sqrt(0.5) -> 113.14 -> even 114
    CHECK(default_window_size(0.04) == 80);
    CHECK(default_window_size(0.08) == 80);  // clamped
    CHECK(default_window_size(1.0) == 80);
    CHECK(default_window_size(0.005) == 160);  // clamped
    CHECK_THROWS_AS(default_window_size(0.0), std::invalid_argument);
}

TEST_CASE("window grid covers every pixel with clipped border windows") {
    const std::vector<Rect> grid = window_grid(100, 70, 32, 16);
    std::vector<int> cover(100 * 70, 0);
    for (const Rect& r : grid) {
        CHECK(r.x + r.w <= 100);
        CHECK(r.y + r.h <= 70);
        CHECK(r.w >= 1);
        CHECK(r.h >= 1);
        for (int y = r.y; y < r.y + r.h; ++y) {
            for (int x = r.x; x < r.x + r.w; ++x) cover[y * 100 + x]++;
        }
    }
    for (int c : cover) CHECK(c >= 1);
    // row-major grid order
    CHECK(grid.front() == Rect{0, 0, 32, 32});
    CHECK(grid[1] == Rect{16, 0, 32, 32});
}

TEST_CASE("full sampling calibrates to the smallest candidate with zero error") {
    const std::vector<DenseFrame> dense = gen_moving_texture(64, 64, 4, {3, 2}, 19, 16);
    const SparseVideo sparse = sample_video(dense, {1.0, 42});
    MotionParams params;
    std::vector<CalibrationEntry> table;
    const int chosen = calibrate_window_size(dense, sparse, {32, 16, 48}, {}, params, &table);
    CHECK(chosen == 16);
    REQUIRE(table.size() == 3);
    for (const CalibrationEntry& e : table) CHECK(e.mse == 0.0);
}

TEST_CASE("calibration failure reports the per-size MSE table") {
    // Tiny windows on a 1%-like sampling: sparse estimates are noise, the
    // dense divergences are small, so no candidate reaches the MSE band.
    const std::vector<DenseFrame> dense = gen_static(64, 64, 6, 23, 16);
    const SparseVideo sparse = sample_video(dense, {0.25, 77});
    MotionParams params;
    try {
        calibrate_window_size(dense, sparse, {8}, {}, params);
        FAIL("expected CalibrationError");
    } catch (const CalibrationError& e) {
        REQUIRE(e.table.size() == 1);
        CHECK(e.table[0].window_size == 8);
        CHECK(e.table[0].mse > 0.2);
        CHECK(std::string(e.what()).find("8:") != std::string::npos);
    }
}

TEST_CASE("sparse KL estimation error shrinks with window size at 1%") {
    const std::vector<DenseFrame> dense = gen_mixed(320, 240, 10, {6, 0}, 31, 40);
    const SparseVideo sparse = sample_video(dense, {0.01, 8});
    MotionParams params;
    const double mse80 = mean_squared_error(divergence_dataset(dense, sparse, 80, params));
    const double mse160 = mean_squared_error(divergence_dataset(dense, sparse, 160, params));
    CHECK(mse160 < mse80);
}

TEST_CASE("MotionParams validation") {
    MotionParams p;
    p.alpha = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = MotionParams{};
    p.window_size = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = MotionParams{};
    p.fr_max = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
