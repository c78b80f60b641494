#pragma once

#include <stdexcept>
#include <string>

namespace chirptrap {

// Thrown when an adaptive numerical routine cannot reach the requested
// tolerance; carries the best error estimate it achieved.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}

    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

// Invalid run configuration (command-line flags or config file).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace chirptrap
