// Error taxonomy: every failure mode maps onto one of these so the CLI can
// translate exceptions into its exit-code contract (validation / numerical / io).
#pragma once

#include <stdexcept>
#include <string>

namespace selberg {

// Bad arguments, violated preconditions, malformed input files.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature failure, unstabilized spectra, budget overruns, failed searches.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem trouble distinct from parse errors.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace selberg
