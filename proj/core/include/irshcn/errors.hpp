#pragma once

#include <stdexcept>
#include <string>

namespace irshcn {

// Bad input: malformed config, unknown key, invalid parameter combination.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric machinery failed to deliver the requested accuracy (series budget
// exhausted, quadrature not converged, inversion residual too large, ...).
// The message carries the offending inputs so failures can be reproduced.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace irshcn
