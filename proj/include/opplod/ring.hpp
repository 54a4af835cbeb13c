#pragma once

#include <string>
#include <vector>

#include "opplod/error.hpp"
#include "opplod/frame.hpp"

namespace opplod {

// Fixed-capacity history of frames indexed by t. Frames before t = 0 read as
// all-zero (cold start); indices older than the window are an error.
class FrameRing {
public:
    FrameRing(int capacity, int width, int height)
        : capacity_(capacity), zero_(width, height, 0.0) {
        if (capacity < 1) raise(ErrorCode::InvalidParam, "ring capacity must be >= 1");
        slots_.assign(static_cast<std::size_t>(capacity), Frame());
    }

    int capacity() const { return capacity_; }
    int latest() const { return latest_; }
    bool empty() const { return latest_ < 0; }

    // Frames must arrive in consecutive t order starting at 0.
    void push(const Frame& f) {
        if (!f.same_dims(zero_))
            raise(ErrorCode::InvalidInput, "ring frame dimensions mismatch");
        const int expected = latest_ + 1;
        if (f.t != expected)
            raise(ErrorCode::InvalidInput, "ring frames must be pushed in order, expected t=" +
                                               std::to_string(expected));
        slots_[static_cast<std::size_t>(f.t % capacity_)] = f;
        latest_ = f.t;
    }

    const Frame& lookup(int t) const {
        if (t < 0) return zero_;
        if (t > latest_ || t <= latest_ - capacity_)
            raise(ErrorCode::InsufficientHistory,
                  "frame t=" + std::to_string(t) + " outside ring window ending at t=" +
                      std::to_string(latest_));
        return slots_[static_cast<std::size_t>(t % capacity_)];
    }

private:
    int capacity_ = 0;
    int latest_ = -1;
    Frame zero_;
    std::vector<Frame> slots_;
};

} // namespace opplod
