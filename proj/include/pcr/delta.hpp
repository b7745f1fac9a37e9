#pragma once

#include <stdexcept>
#include <string>

namespace pcr {

// Abscissa-shift parameter, valid in the open interval (0, delta_max).
// The weight exponent used throughout is s = 1/2 + delta.
class Delta {
public:
    static constexpr double kDefaultMax = 0.5;

    explicit Delta(double value, double delta_max = kDefaultMax) : value_(value) {
        if (!(delta_max > 0.0 && delta_max < 1.0))
            throw std::invalid_argument("Delta: delta_max must lie in (0, 1)");
        if (!(value > 0.0 && value < delta_max))
            throw std::domain_error("Delta: value " + std::to_string(value) +
                                    " outside (0, " + std::to_string(delta_max) + ")");
    }

    double value() const { return value_; }
    double s() const { return 0.5 + value_; }

private:
    double value_;
};

} // namespace pcr
