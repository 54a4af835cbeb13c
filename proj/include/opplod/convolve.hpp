#pragma once

#include <algorithm>

#include "opplod/error.hpp"
#include "opplod/frame.hpp"
#include "opplod/kernel.hpp"
#include "opplod/ring.hpp"

namespace opplod {

enum class BoundaryPolicy { ZeroPad };

namespace detail {

// Adds w * src(x-u, y-v) into dst for every in-range pixel. Out-of-range
// reads are zero-padded, i.e. skipped. Tap accumulation order is row-major
// in (v,u) for both convolve and delayed_lookup so that a zero delay map
// reproduces convolve bit for bit.
inline void accumulate_tap(Frame& dst, const Frame& src, int u, int v, double w) {
    const int x0 = std::max(0, u);
    const int x1 = std::min(dst.width, dst.width + u);
    const int y0 = std::max(0, v);
    const int y1 = std::min(dst.height, dst.height + v);
    for (int y = y0; y < y1; ++y) {
        double* out = dst.row(y);
        const double* in = src.row(y - v);
        for (int x = x0; x < x1; ++x)
            out[x] += w * in[x - u];
    }
}

} // namespace detail

// out(x,y) = sum_{u,v} in(x-u, y-v) w(u,v), zero-padded at the borders.
inline Frame convolve(const Frame& frame, const Kernel& kernel,
                      BoundaryPolicy boundary = BoundaryPolicy::ZeroPad) {
    (void)boundary; // only zero padding is defined
    if (frame.width < 1 || frame.height < 1)
        raise(ErrorCode::InvalidInput, "convolve: empty frame");
    Frame out(frame.width, frame.height, 0.0, frame.t);
    const int r = kernel.radius;
    for (int v = -r; v <= r; ++v)
        for (int u = -r; u <= r; ++u)
            detail::accumulate_tap(out, frame, u, v, kernel.at(u, v));
    return out;
}

// Spatio-temporal lookup: out(x,y) = sum_{u,v} P(x-u, y-v, t - d(u,v)) w(u,v).
// History before t = 0 reads as zero frames.
inline Frame delayed_lookup(const FrameRing& ring, int t, const DelayMap& delays,
                            const Kernel& kernel) {
    if (kernel.radius != delays.radius)
        raise(ErrorCode::InvalidInput, "delayed_lookup: kernel and delay map radius mismatch");
    const int max_d = delays.max_delay();
    if (ring.capacity() < max_d + 1)
        raise(ErrorCode::InsufficientHistory,
              "ring capacity smaller than max delay + 1");
    const Frame& current = ring.lookup(t);
    Frame out(current.width, current.height, 0.0, t);
    const int r = kernel.radius;
    for (int v = -r; v <= r; ++v)
        for (int u = -r; u <= r; ++u)
            detail::accumulate_tap(out, ring.lookup(t - delays.at(u, v)), u, v, kernel.at(u, v));
    return out;
}

} // namespace opplod
