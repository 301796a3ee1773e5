#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace acsf {

enum class ErrorKind {
    invalid_input,
    lost_convexity,
    convergence,
    conditioning,
    range,
    resolution,
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised when a discrete radius of curvature h + h'' drops to <= 0.
// `sample_index` is the offending grid index; `stage` is the RK stage
// (1-4) when raised from inside a time step, -1 otherwise.
class LostConvexityError : public Error {
public:
    LostConvexityError(std::string msg, int sample_index, int stage = -1)
        : Error(ErrorKind::lost_convexity, std::move(msg)),
          sample_index_(sample_index), stage_(stage) {}

    int sample_index() const noexcept { return sample_index_; }
    int stage() const noexcept { return stage_; }

private:
    int sample_index_;
    int stage_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
    throw Error(ErrorKind::invalid_input, msg);
}

[[noreturn]] inline void throw_io(const std::string& msg) {
    throw Error(ErrorKind::io, msg);
}

} // namespace acsf
