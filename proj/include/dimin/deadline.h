#pragma once

#include "dimin/error.h"

#include <chrono>
#include <optional>
#include <string>

namespace dimin {

// Wall-clock budget shared by long-running operations. A default-constructed
// deadline never expires.
class Deadline {
public:
    using clock = std::chrono::steady_clock;

    Deadline() = default;
    static Deadline after(std::chrono::duration<double> budget) {
        Deadline d;
        d.at_ = clock::now() + std::chrono::duration_cast<clock::duration>(budget);
        return d;
    }

    bool expired() const { return at_ && clock::now() >= *at_; }
    void check(const std::string& what) const {
        if (expired()) throw TimeoutError(what + ": time budget exhausted");
    }

private:
    std::optional<clock::time_point> at_;
};

} // namespace dimin
