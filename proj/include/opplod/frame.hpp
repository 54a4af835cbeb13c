#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "opplod/error.hpp"

namespace opplod {

// 2-D grayscale grid, row-major, with a frame index. Intensities are
// dimensionless; loaders normalize 8-bit input to [0,1].
struct Frame {
    int width = 0;
    int height = 0;
    int t = 0;
    std::vector<double> data;

    Frame() = default;

    Frame(int w, int h, double fill = 0.0, int frame_index = 0)
        : width(w), height(h), t(frame_index) {
        if (w < 1 || h < 1)
            raise(ErrorCode::InvalidInput, "frame dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    const double* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }
    double* row(int y) { return data.data() + static_cast<std::size_t>(y) * width; }

    std::size_t size() const { return data.size(); }

    bool same_dims(const Frame& o) const { return width == o.width && height == o.height; }

    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double max_value() const { return *std::max_element(data.begin(), data.end()); }
    double min_value() const { return *std::min_element(data.begin(), data.end()); }

    double sum() const {
        double s = 0.0;
        for (double v : data) s += v;
        return s;
    }
};

using FrameSequence = std::vector<Frame>;

inline Frame relu(const Frame& f) {
    Frame out = f;
    for (double& v : out.data) v = v > 0.0 ? v : 0.0;
    return out;
}

} // namespace opplod
