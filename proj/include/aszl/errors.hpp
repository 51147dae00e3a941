#pragma once

#include <stdexcept>
#include <string>

namespace aszl {

// enumeration or family sweep would exceed the configured cap; counts are
// never truncated silently
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// a numeric certificate (RH residual, root-finder backward error, tolerance)
// failed
struct NumericCertificationError : std::runtime_error {
    explicit NumericCertificationError(const std::string& what) : std::runtime_error(what) {}
};

// malformed or inconsistent experiment configuration
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aszl
