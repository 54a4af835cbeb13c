#pragma once

#include <cmath>
#include <vector>

#include "opplod/error.hpp"

namespace opplod {

// Square convolution kernel over offsets u,v in [-radius, radius].
struct Kernel {
    int radius = 0;
    std::vector<double> weights; // (2*radius+1)^2, row-major in v, then u

    Kernel() = default;

    explicit Kernel(int r) : radius(r) {
        if (r < 0) raise(ErrorCode::InvalidParam, "kernel radius must be >= 0");
        const int side = 2 * r + 1;
        weights.assign(static_cast<std::size_t>(side) * side, 0.0);
    }

    int side() const { return 2 * radius + 1; }

    double& at(int u, int v) {
        return weights[static_cast<std::size_t>(v + radius) * side() + (u + radius)];
    }
    double at(int u, int v) const {
        return weights[static_cast<std::size_t>(v + radius) * side() + (u + radius)];
    }

    double sum() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

// Normalized isotropic Gaussian, w(u,v) ~ exp(-(u^2+v^2)/(2 sigma^2)).
inline Kernel gaussian_kernel(double sigma, int radius) {
    if (!(sigma > 0.0)) raise(ErrorCode::InvalidParam, "gaussian sigma must be > 0");
    if (radius < 1) raise(ErrorCode::InvalidParam, "gaussian radius must be >= 1");
    Kernel k(radius);
    const double inv = 1.0 / (2.0 * sigma * sigma);
    double total = 0.0;
    for (int v = -radius; v <= radius; ++v) {
        for (int u = -radius; u <= radius; ++u) {
            const double w = std::exp(-(static_cast<double>(u) * u + static_cast<double>(v) * v) * inv);
            k.at(u, v) = w;
            total += w;
        }
    }
    for (double& w : k.weights) w /= total;
    return k;
}

// Per-offset integer inhibition delay, in frames. Non-decreasing with the
// distance from the kernel center.
struct DelayMap {
    int radius = 0;
    std::vector<int> delays; // same layout as Kernel::weights

    DelayMap() = default;

    explicit DelayMap(int r) : radius(r) {
        if (r < 0) raise(ErrorCode::InvalidParam, "delay map radius must be >= 0");
        const int side = 2 * r + 1;
        delays.assign(static_cast<std::size_t>(side) * side, 0);
    }

    int side() const { return 2 * radius + 1; }

    int& at(int u, int v) {
        return delays[static_cast<std::size_t>(v + radius) * side() + (u + radius)];
    }
    int at(int u, int v) const {
        return delays[static_cast<std::size_t>(v + radius) * side() + (u + radius)];
    }

    int max_delay() const {
        int m = 0;
        for (int d : delays) m = d > m ? d : m;
        return m;
    }
};

// tau(u,v) = alpha + 1 / (beta + exp(-lambda^2 (u^2+v^2))), rounded to whole
// frames with round-half-to-even.
inline DelayMap delay_map(double alpha, double beta, double lambda, int radius) {
    if (!(beta > 0.0)) raise(ErrorCode::InvalidParam, "delay beta must be > 0");
    if (radius < 1) raise(ErrorCode::InvalidParam, "delay map radius must be >= 1");
    DelayMap m(radius);
    for (int v = -radius; v <= radius; ++v) {
        for (int u = -radius; u <= radius; ++u) {
            const double r2 = static_cast<double>(u) * u + static_cast<double>(v) * v;
            const double tau = alpha + 1.0 / (beta + std::exp(-lambda * lambda * r2));
            const double rounded = std::nearbyint(tau); // ties to even under default FP mode
            if (rounded < 0.0)
                raise(ErrorCode::InvalidParam, "delay map parameters yield a negative delay");
            m.at(u, v) = static_cast<int>(rounded);
        }
    }
    return m;
}

} // namespace opplod
