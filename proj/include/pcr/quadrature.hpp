#pragma once

#include <functional>
#include <span>

namespace pcr {

struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_intervals = 40000;
};

struct QuadratureResult {
    double value;
    double abs_error;
    int intervals;
    bool converged;
};

// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

// Same, but the initial partition is split at the given breakpoints
// (sorted or not; values outside (a, b) are ignored). Used when the
// integrand has kinks or jumps at known abscissae, e.g. at primes.
QuadratureResult integrate_with_breakpoints(const std::function<double(double)>& f, double a,
                                            double b, std::span<const double> breakpoints,
                                            const QuadratureOptions& opts = {});

} // namespace pcr
