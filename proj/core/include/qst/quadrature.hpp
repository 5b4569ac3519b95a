#pragma once

#include <stdexcept>
#include <string>

namespace qst {

struct QuadratureResult {
    double value;
    double error;
};

// Raised when an adaptive rule cannot reach its tolerance; carries the last error estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate)
        : std::runtime_error(what + " (error estimate " + std::to_string(estimate) + ")"), estimate_(estimate)
    {
    }
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

}  // namespace qst
