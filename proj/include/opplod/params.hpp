#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "opplod/error.hpp"
#include "opplod/rmo.hpp" // Point2, kPi

namespace opplod {

// Free constants of the DPC stage: excitation/inhibition spreads, kernel
// support, inhibition delay field and inhibition strength. Defaults are a
// calibration that makes the synthetic bar/disk properties hold; they are
// not measurements and every one is overridable through the config file.
struct DpcParams {
    double sigma_e = 1.0;
    double sigma_i = 2.0;
    int kernel_radius = 6; // ~3 sigma_i
    double tau_alpha = 0.0;
    double tau_beta = 0.5;
    double tau_lambda = 0.25;
    double inhibition_gain = 5.5;

    void validate() const {
        if (!(sigma_e > 0.0)) raise(ErrorCode::InvalidParam, "sigma_e must be > 0");
        if (!(sigma_i > 0.0)) raise(ErrorCode::InvalidParam, "sigma_i must be > 0");
        if (kernel_radius < 1) raise(ErrorCode::InvalidParam, "kernel_radius must be >= 1");
        if (!(tau_beta > 0.0)) raise(ErrorCode::InvalidParam, "tau_beta must be > 0");
        if (inhibition_gain < 0.0) raise(ErrorCode::InvalidParam, "inhibition_gain must be >= 0");
    }
};

// The four preferred motion directions. Fixed to the diagonals; opposing
// channels sit two places apart so (i, i+2) always forms a pair.
struct MdeParams {
    std::array<double, 4> directions{kPi / 4.0, 3.0 * kPi / 4.0, 5.0 * kPi / 4.0,
                                     7.0 * kPi / 4.0};

    static constexpr int opposing(int i) { return (i + 2) % 4; }
};

struct OmjParams {
    double screen_threshold = 0.02;
    double periphery_strength = 2.5;

    void validate() const {
        if (screen_threshold < 0.0)
            raise(ErrorCode::InvalidParam, "screen_threshold must be >= 0");
        if (periphery_strength < 0.0)
            raise(ErrorCode::InvalidParam, "periphery_strength must be >= 0");
    }
};

struct EnhanceParams {
    double c2 = 10.0;

    void validate() const {
        if (!(c2 > 0.0)) raise(ErrorCode::InvalidParam, "c2 must be > 0");
    }
};

struct UnitRect {
    int x0 = 0, y0 = 0; // inclusive
    int x1 = 0, y1 = 0; // exclusive

    int width() const { return x1 - x0; }
    int height() const { return y1 - y0; }
    bool contains(int x, int y) const { return x >= x0 && x < x1 && y >= y0 && y < y1; }
};

// Tiling of LPLC2-like units over the field of view. The default 5x5 grid of
// 25 units partitions a 200x200 frame into 40x40 receptive fields; other
// frame sizes scale proportionally. overlap > 0 grows each receptive field
// beyond its tile (clipped at the frame bounds).
struct UnitGrid {
    int rows = 0;
    int cols = 0;
    int unit_count = 0;
    int rf_width = 0;  // nominal receptive-field size
    int rf_height = 0;
    double overlap = 0.0;
    std::vector<Point2> centers;
    std::vector<UnitRect> rects;

    static UnitGrid tile(int frame_w, int frame_h, int rows = 5, int cols = 5,
                         double overlap = 0.0) {
        if (frame_w < 1 || frame_h < 1)
            raise(ErrorCode::InvalidInput, "unit grid needs a non-empty frame");
        if (rows < 1 || cols < 1)
            raise(ErrorCode::InvalidParam, "unit grid needs rows >= 1 and cols >= 1");
        if (!(overlap >= 0.0 && overlap < 1.0))
            raise(ErrorCode::InvalidParam, "unit overlap must lie in [0,1)");

        UnitGrid g;
        g.rows = rows;
        g.cols = cols;
        g.unit_count = rows * cols;
        g.overlap = overlap;
        const double tile_w = static_cast<double>(frame_w) / cols;
        const double tile_h = static_cast<double>(frame_h) / rows;
        g.rf_width = static_cast<int>(std::lround(tile_w * (1.0 + overlap)));
        g.rf_height = static_cast<int>(std::lround(tile_h * (1.0 + overlap)));
        const int pad_x = static_cast<int>(std::lround(0.5 * overlap * tile_w));
        const int pad_y = static_cast<int>(std::lround(0.5 * overlap * tile_h));
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                UnitRect rect;
                rect.x0 = std::max(0, static_cast<int>(std::lround(c * tile_w)) - pad_x);
                rect.x1 = std::min(frame_w, static_cast<int>(std::lround((c + 1) * tile_w)) + pad_x);
                rect.y0 = std::max(0, static_cast<int>(std::lround(r * tile_h)) - pad_y);
                rect.y1 = std::min(frame_h, static_cast<int>(std::lround((r + 1) * tile_h)) + pad_y);
                g.rects.push_back(rect);
                g.centers.push_back({0.5 * (rect.x0 + rect.x1 - 1), 0.5 * (rect.y0 + rect.y1 - 1)});
            }
        }
        return g;
    }
};

} // namespace opplod
