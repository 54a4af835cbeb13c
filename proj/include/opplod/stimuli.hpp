#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "opplod/error.hpp"
#include "opplod/frame.hpp"
#include "opplod/rmo.hpp" // Point2, kPi

namespace opplod {

enum class StimulusKind {
    ExpandingBar,
    ExpandingDisk,
    ContractingDisk,
    TranslatingBlock,
};

inline const char* stimulus_kind_name(StimulusKind k) {
    switch (k) {
        case StimulusKind::ExpandingBar:     return "expanding_bar";
        case StimulusKind::ExpandingDisk:    return "expanding_disk";
        case StimulusKind::ContractingDisk:  return "contracting_disk";
        case StimulusKind::TranslatingBlock: return "translating_block";
    }
    return "unknown";
}

inline StimulusKind stimulus_kind_from_name(const std::string& name) {
    if (name == "expanding_bar") return StimulusKind::ExpandingBar;
    if (name == "expanding_disk") return StimulusKind::ExpandingDisk;
    if (name == "contracting_disk") return StimulusKind::ContractingDisk;
    if (name == "translating_block") return StimulusKind::TranslatingBlock;
    raise(ErrorCode::ConfigError, "unknown stimulus kind '" + name + "'");
}

// Deterministic synthetic scene description. Sizes are in pixels, rates in
// pixels per frame, intensities in [0,1]. bar_angle is the expansion axis
// for bars and the motion direction for translating blocks (math
// convention, y up). bar_extent_deg maps the angular-width analogue to a
// fixed perpendicular extent of height * deg / 180.
struct StimulusSpec {
    StimulusKind kind = StimulusKind::ExpandingDisk;
    int width = 200;
    int height = 200;
    int frames = 50;
    Point2 center{100.0, 100.0};
    double rate = 2.8;
    double initial_size = 2.0;
    double foreground = 0.0; // looming black shape ...
    double background = 1.0; // ... on a white background
    double bar_angle = 0.0;
    double bar_extent_deg = 10.0;

    void validate() const {
        if (width < 1 || height < 1) raise(ErrorCode::InvalidInput, "stimulus frame is empty");
        if (frames < 2) raise(ErrorCode::InvalidParam, "stimulus needs >= 2 frames");
        if (rate < 0.0) raise(ErrorCode::InvalidParam, "stimulus rate must be >= 0");
        if (initial_size < 0.0) raise(ErrorCode::InvalidParam, "initial_size must be >= 0");
        if (foreground < 0.0 || foreground > 1.0 || background < 0.0 || background > 1.0)
            raise(ErrorCode::InvalidParam, "intensities must lie in [0,1]");
        if (bar_extent_deg <= 0.0 || bar_extent_deg >= 180.0)
            raise(ErrorCode::InvalidParam, "bar_extent_deg must lie in (0,180)");
    }
};

namespace detail {

// Inside-test in math coordinates (y up) relative to the stimulus center.
struct ShapeAt {
    const StimulusSpec& spec;
    int t;

    bool inside(double px, double py) const {
        const double x = px - spec.center.x;
        const double y = spec.center.y - py; // flip rows to y-up
        switch (spec.kind) {
            case StimulusKind::ExpandingDisk: {
                const double r = spec.initial_size + spec.rate * t;
                return x * x + y * y <= r * r;
            }
            case StimulusKind::ContractingDisk: {
                const int rev = spec.frames - 1 - t;
                const double r = spec.initial_size + spec.rate * rev;
                return x * x + y * y <= r * r;
            }
            case StimulusKind::ExpandingBar: {
                const double half_len = spec.initial_size + spec.rate * t;
                const double half_thick = 0.5 * spec.height * spec.bar_extent_deg / 180.0;
                const double c = std::cos(spec.bar_angle);
                const double s = std::sin(spec.bar_angle);
                const double along = x * c + y * s;
                const double across = -x * s + y * c;
                return std::abs(along) <= half_len && std::abs(across) <= half_thick;
            }
            case StimulusKind::TranslatingBlock: {
                const double cx = spec.rate * t * std::cos(spec.bar_angle);
                const double cy = spec.rate * t * std::sin(spec.bar_angle);
                return std::abs(x - cx) <= spec.initial_size &&
                       std::abs(y - cy) <= spec.initial_size;
            }
        }
        return false;
    }
};

} // namespace detail

// Renders the sequence with 2x2 supersampled coverage anti-aliasing.
// Identical specs produce bit-identical frames; the contracting disk is the
// exact frame-order reversal of its matched expanding disk.
inline FrameSequence render(const StimulusSpec& spec) {
    spec.validate();
    FrameSequence seq;
    seq.reserve(static_cast<std::size_t>(spec.frames));
    for (int t = 0; t < spec.frames; ++t) {
        const detail::ShapeAt shape{spec, t};
        Frame f(spec.width, spec.height, 0.0, t);
        for (int y = 0; y < spec.height; ++y) {
            for (int x = 0; x < spec.width; ++x) {
                int hits = 0;
                for (double dy : {0.25, 0.75})
                    for (double dx : {0.25, 0.75})
                        if (shape.inside(x + dx, y + dy)) ++hits;
                const double coverage = hits * 0.25;
                f.at(x, y) = spec.background + (spec.foreground - spec.background) * coverage;
            }
        }
        seq.push_back(std::move(f));
    }
    return seq;
}

// One rendered sequence per expansion-axis angle, otherwise identical specs.
inline std::vector<FrameSequence> tuning_sweep(const StimulusSpec& base,
                                               const std::vector<double>& angles) {
    if (angles.empty()) raise(ErrorCode::InvalidParam, "tuning sweep needs at least one angle");
    std::vector<FrameSequence> out;
    out.reserve(angles.size());
    for (double a : angles) {
        StimulusSpec spec = base;
        spec.bar_angle = a;
        out.push_back(render(spec));
    }
    return out;
}

} // namespace opplod
