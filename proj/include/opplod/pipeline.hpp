#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "opplod/convolve.hpp"
#include "opplod/error.hpp"
#include "opplod/frame.hpp"
#include "opplod/kernel.hpp"
#include "opplod/params.hpp"
#include "opplod/ring.hpp"

namespace opplod {

// Angles follow the usual math convention with y pointing up; a direction
// theta maps to the pixel-space velocity (cos theta, -sin theta) since rows
// grow downward.
inline double mde_weight(double x, double y, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double xr = x * c - y * s;
    const double yr = x * s + y * c;
    return 1.0 / (1.0 + std::exp(-(xr + yr)));
}

// Anisotropic inhibition kernels, one per preferred direction: the
// normalized Gaussian W_I modulated by the rotated sigmoid. The rotation
// angle is offset so that the channel labelled theta suppresses exactly the
// motion opposite to theta (the sigmoid's rising side must face the
// anti-preferred direction for the delayed inhibition to land on it).
// Opposing channels are 180-degree rotations of each other and sum to W_I.
inline std::array<Kernel, 4> build_direction_kernels(const DpcParams& dpc,
                                                     const MdeParams& mde) {
    dpc.validate();
    const Kernel g = gaussian_kernel(dpc.sigma_i, dpc.kernel_radius);
    std::array<Kernel, 4> kernels;
    for (int i = 0; i < 4; ++i) {
        const double theta = mde.directions[i];
        const double psi = 5.0 * kPi / 4.0 - theta;
        Kernel k(dpc.kernel_radius);
        for (int v = -dpc.kernel_radius; v <= dpc.kernel_radius; ++v)
            for (int u = -dpc.kernel_radius; u <= dpc.kernel_radius; ++u)
                k.at(u, v) = g.at(u, v) * mde_weight(u, -v, psi);
        kernels[i] = std::move(k);
    }
    return kernels;
}

// Luminance change magnitude between consecutive frames.
inline Frame photoreceptor(const Frame& curr, const Frame& prev) {
    if (!curr.same_dims(prev))
        raise(ErrorCode::InvalidInput, "photoreceptor: frame dimensions mismatch");
    Frame out(curr.width, curr.height, 0.0, curr.t);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data[i] = std::abs(curr.data[i] - prev.data[i]);
    return out;
}

namespace detail {

inline Frame dpc_combine(const Frame& excitation, const Frame& inhibition, double gain) {
    Frame out(excitation.width, excitation.height, 0.0, excitation.t);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double s = excitation.data[i] - gain * inhibition.data[i];
        out.data[i] = s > 0.0 ? s : 0.0;
    }
    return out;
}

} // namespace detail

// Baseline D-LGMD S layer: isotropic excitation minus delayed isotropic
// inhibition, rectified.
inline Frame dpc_step(const FrameRing& p_ring, int t, const DpcParams& params) {
    params.validate();
    const Kernel w_e = gaussian_kernel(params.sigma_e, params.kernel_radius);
    const Kernel w_i = gaussian_kernel(params.sigma_i, params.kernel_radius);
    const DelayMap delays =
        delay_map(params.tau_alpha, params.tau_beta, params.tau_lambda, params.kernel_radius);
    const Frame excitation = convolve(p_ring.lookup(t), w_e);
    const Frame inhibition = delayed_lookup(p_ring, t, delays, w_i);
    return detail::dpc_combine(excitation, inhibition, params.inhibition_gain);
}

// One rectified S map per preferred direction, same dimensions as the input.
struct DirectionalMaps {
    std::array<Frame, 4> maps;

    Frame& operator[](int i) { return maps[static_cast<std::size_t>(i)]; }
    const Frame& operator[](int i) const { return maps[static_cast<std::size_t>(i)]; }
};

inline DirectionalMaps directional_dpc_step(const FrameRing& p_ring, int t,
                                            const DpcParams& params, const MdeParams& mde) {
    params.validate();
    const Kernel w_e = gaussian_kernel(params.sigma_e, params.kernel_radius);
    const std::array<Kernel, 4> kernels = build_direction_kernels(params, mde);
    const DelayMap delays =
        delay_map(params.tau_alpha, params.tau_beta, params.tau_lambda, params.kernel_radius);
    const Frame excitation = convolve(p_ring.lookup(t), w_e);
    DirectionalMaps out;
    for (int i = 0; i < 4; ++i) {
        const Frame inhibition = delayed_lookup(p_ring, t, delays, kernels[i]);
        out[i] = detail::dpc_combine(excitation, inhibition, params.inhibition_gain);
    }
    return out;
}

// Periphery inhibition mask over one receptive field. For channel theta the
// half of the field that theta-directed motion would enter moving toward the
// center carries negative values, ramping from 0 at the center line and
// saturating at -strength; the outward half is 0. The ramp reaches full
// depth within a small fraction of the field so that obliquely inward
// content near the center line is still suppressed. Applied as
// S <- ReLU(S + mask .* S).
inline Frame periphery_mask(int rf_width, int rf_height, double theta, double strength) {
    if (rf_width < 1 || rf_height < 1)
        raise(ErrorCode::InvalidInput, "periphery mask needs non-empty receptive field");
    Frame mask(rf_width, rf_height, 0.0);
    const double cx = 0.5 * (rf_width - 1);
    const double cy = 0.5 * (rf_height - 1);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double s_max = cx * std::abs(c) + cy * std::abs(s);
    if (s_max <= 0.0) return mask;
    const double ramp = 0.15 * s_max;
    for (int y = 0; y < rf_height; ++y) {
        for (int x = 0; x < rf_width; ++x) {
            const double along = (x - cx) * c + (cy - y) * s; // y-up
            if (along < 0.0)
                mask.at(x, y) = -strength * std::min(1.0, -along / ramp);
        }
    }
    return mask;
}

namespace detail {

inline Frame crop_zero_fill(const Frame& src, const UnitRect& rect) {
    Frame out(rect.width(), rect.height(), 0.0, src.t);
    const int x0 = std::max(0, rect.x0);
    const int x1 = std::min(src.width, rect.x1);
    const int y0 = std::max(0, rect.y0);
    const int y1 = std::min(src.height, rect.y1);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x)
            out.at(x - rect.x0, y - rect.y0) = src.at(x, y);
    return out;
}

inline Frame rotate180(const Frame& f) {
    Frame out(f.width, f.height, 0.0, f.t);
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i)
        out.data[i] = f.data[n - 1 - i];
    return out;
}

} // namespace detail

// Opposing-motion judgment for a single unit: crop each directional map to
// the receptive field, apply the periphery mask, then sum the symmetric
// double products of both diagonal opposing pairs, point-reflected about the
// unit center. Pixels at or below screen_threshold are zeroed.
inline Frame omj_unit_map(const DirectionalMaps& maps, const UnitRect& rect,
                          const OmjParams& params, const MdeParams& mde = MdeParams()) {
    params.validate();
    std::array<Frame, 4> crops;
    for (int i = 0; i < 4; ++i) {
        Frame c = detail::crop_zero_fill(maps[i], rect);
        const Frame mask =
            periphery_mask(rect.width(), rect.height(), mde.directions[i], params.periphery_strength);
        for (std::size_t p = 0; p < c.size(); ++p) {
            const double v = c.data[p] + mask.data[p] * c.data[p];
            c.data[p] = v > 0.0 ? v : 0.0;
        }
        crops[static_cast<std::size_t>(i)] = std::move(c);
    }

    Frame unit(rect.width(), rect.height(), 0.0, maps[0].t);
    for (int i = 0; i < 2; ++i) {
        const Frame& a = crops[static_cast<std::size_t>(i)];
        const Frame& b = crops[static_cast<std::size_t>(MdeParams::opposing(i))];
        const Frame rb = detail::rotate180(b);
        const Frame ra = detail::rotate180(a);
        for (std::size_t p = 0; p < unit.size(); ++p)
            unit.data[p] += a.data[p] * rb.data[p] + b.data[p] * ra.data[p];
    }
    for (double& v : unit.data)
        if (v <= params.screen_threshold) v = 0.0;
    return unit;
}

// Full-frame opponency map: per-unit judgments composited back, overlaps
// resolved by per-pixel max.
inline Frame omj_step(const DirectionalMaps& maps, const UnitGrid& grid,
                      const OmjParams& params, const MdeParams& mde = MdeParams()) {
    const Frame& ref = maps[0];
    Frame out(ref.width, ref.height, 0.0, ref.t);
    for (const UnitRect& rect : grid.rects) {
        const Frame unit = omj_unit_map(maps, rect, params, mde);
        const int x0 = std::max(0, rect.x0);
        const int x1 = std::min(ref.width, rect.x1);
        const int y0 = std::max(0, rect.y0);
        const int y1 = std::min(ref.height, rect.y1);
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) {
                const double v = unit.at(x - rect.x0, y - rect.y0);
                if (v > out.at(x, y)) out.at(x, y) = v;
            }
    }
    return out;
}

// Attention-style enhancement of the selected pixels: S_E = S_e^2 * c2.
inline Frame enhance(const Frame& opponency, const EnhanceParams& params) {
    params.validate();
    Frame out(opponency.width, opponency.height, 0.0, opponency.t);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data[i] = opponency.data[i] * opponency.data[i] * params.c2;
    return out;
}

struct Roi {
    int x = 0, y = 0, w = 0, h = 0;
};

struct ResponseRecord {
    int t = 0;
    double response = 0.0;
    std::optional<Roi> roi;
    bool warm_up = false;
};

namespace detail {

inline std::optional<Roi> bounding_box_above(const Frame& f, double threshold) {
    int min_x = f.width, min_y = f.height, max_x = -1, max_y = -1;
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            if (f.at(x, y) > threshold) {
                min_x = std::min(min_x, x);
                min_y = std::min(min_y, y);
                max_x = std::max(max_x, x);
                max_y = std::max(max_y, y);
            }
    if (max_x < 0) return std::nullopt;
    return Roi{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
}

// Shared driver for both models. The only pipeline state is the ring of P
// frames (max_delay + 1 of them) plus the current stage maps, so memory
// stays bounded regardless of sequence length.
template <typename StepFn>
std::vector<ResponseRecord> run_sequence(const FrameSequence& seq, const DpcParams& dpc,
                                         StepFn&& step) {
    dpc.validate();
    if (seq.size() < 2)
        raise(ErrorCode::InvalidInput, "pipeline needs at least 2 frames");
    const int width = seq.front().width;
    const int height = seq.front().height;
    for (const Frame& f : seq)
        if (f.width != width || f.height != height)
            raise(ErrorCode::InvalidInput, "pipeline: mixed frame dimensions");

    const DelayMap delays =
        delay_map(dpc.tau_alpha, dpc.tau_beta, dpc.tau_lambda, dpc.kernel_radius);
    const int max_delay = delays.max_delay();
    FrameRing ring(max_delay + 1, width, height);

    std::vector<ResponseRecord> records;
    records.reserve(seq.size());
    for (int t = 0; t < static_cast<int>(seq.size()); ++t) {
        Frame p = t == 0 ? Frame(width, height, 0.0, 0)
                         : photoreceptor(seq[static_cast<std::size_t>(t)],
                                         seq[static_cast<std::size_t>(t) - 1]);
        p.t = t;
        ring.push(p);
        ResponseRecord rec = step(ring, t);
        rec.t = t;
        // P(t=0) is defined zero and lookups reach it until t = max_delay,
        // so the first max_delay + 1 frames are cold-start output.
        rec.warm_up = t <= max_delay;
        records.push_back(rec);
    }
    return records;
}

} // namespace detail

// Full OppLoD chain: photoreceptor -> directional DPC -> periphery-masked
// zoned opposing-motion judgment -> enhancement. Response is the mean of the
// enhanced map; the ROI boxes every pixel that survived screening.
inline std::vector<ResponseRecord> run_opplod(const FrameSequence& seq, const DpcParams& dpc,
                                              const MdeParams& mde, const OmjParams& omj,
                                              const EnhanceParams& enh, const UnitGrid& grid) {
    omj.validate();
    enh.validate();
    const double inv_area =
        seq.empty() ? 0.0 : 1.0 / (static_cast<double>(seq.front().width) * seq.front().height);
    return detail::run_sequence(seq, dpc, [&](const FrameRing& ring, int t) {
        const DirectionalMaps maps = directional_dpc_step(ring, t, dpc, mde);
        const Frame opponency = omj_step(maps, grid, omj, mde);
        const Frame enhanced = enhance(opponency, enh);
        ResponseRecord rec;
        rec.response = enhanced.sum() * inv_area;
        rec.roi = detail::bounding_box_above(opponency, omj.screen_threshold);
        return rec;
    });
}

// D-LGMD baseline: photoreceptor -> isotropic DPC -> ReLU. Response is the
// mean of the rectified S map; no ROI.
inline std::vector<ResponseRecord> run_dlgmd(const FrameSequence& seq, const DpcParams& dpc) {
    const double inv_area =
        seq.empty() ? 0.0 : 1.0 / (static_cast<double>(seq.front().width) * seq.front().height);
    return detail::run_sequence(seq, dpc, [&](const FrameRing& ring, int t) {
        const Frame s = dpc_step(ring, t, dpc);
        ResponseRecord rec;
        rec.response = s.sum() * inv_area;
        return rec;
    });
}

} // namespace opplod
