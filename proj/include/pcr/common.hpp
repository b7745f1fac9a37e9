#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcr {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Configuration / usage problems. The CLI maps these to exit code 2;
// std::domain_error and std::out_of_range map to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string to_string(u128 v);
std::string to_string(i128 v);

// floor(sqrt(n)), exact for all u64
u64 isqrt_u64(u64 n);

// compensated (Kahan) accumulator
struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace pcr
