#pragma once

#include <stdexcept>
#include <string>

namespace lipint {

// Bad argument values, dimension mismatches, malformed files.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Query against an empty sample set.
struct empty_data_error : std::logic_error {
    using std::logic_error::logic_error;
};

// A required model/config field is missing or inconsistent.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation not supported for this model kind.
struct capability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data that cannot be fed to a numeric routine (e.g. log of nonpositive error).
struct degenerate_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lipint
