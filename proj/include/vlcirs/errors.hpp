#pragma once

#include <stdexcept>
#include <string>

namespace vlcirs {

// Invalid configuration or violated data invariant (CLI exit code 1).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate or out-of-domain geometric construction (CLI exit code 2).
struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& what) : std::runtime_error(what) {}
};

// File read/write failure (CLI exit code 3).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vlcirs
