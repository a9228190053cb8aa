#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftl {

// Invalid run parameters: bad weights, step-size bound violations, CFL
// violations, malformed config files. Maps to exit code 2 in the CLI.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A vehicle gap dropped below the vehicle length. Carries the offending
// index and the time at which it was detected. Maps to exit code 3.
struct collision_error : std::runtime_error {
    collision_error(const std::string& what, std::size_t idx, double when)
        : std::runtime_error(what), index(idx), time(when) {}
    std::size_t index;
    double time;
};

// Initial profile touches (or is certified below) vacuum.
struct vacuum_error : std::runtime_error {
    explicit vacuum_error(const std::string& what) : std::runtime_error(what) {}
};

// Operation asked for a closed form that only exists for some models.
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ftl
