#pragma once

#include "pcr/remainder_integrals.hpp"

#include <functional>
#include <span>
#include <vector>

namespace pcr {

enum class NVariant { eq12, eq55 };

struct NFlags {
    bool multiple_roots = false;
    bool cap_hit = false;
};

struct NEstimate {
    double delta;
    NVariant variant;
    double target;
    double n_value;
    double achieved;
    double bracket_lo;
    double bracket_hi;
    NFlags flags;
};

struct ContinuityPoint {
    double delta;
    double n_value;
    bool jump;
    NFlags flags;
};

struct SignChangeBracket {
    double lo, hi;
};

struct ScanResult {
    std::vector<SignChangeBracket> brackets;
    double max_p; // sup of the scanned values (attained just after a prime)
    double min_p;
    u64 gaps_checked;
};

// Operational construction of N(delta): the smallest root of
// I(lower, Y) = target, with lower = 2 (eq12) or e^3 (eq55), found by
// monotone bracketing, bisection to width 0.5, then secant refinement.
class NSolver {
public:
    static constexpr double kDefaultRelTol = 1e-3;

    NSolver(const RemainderIntegrals& integrals, double y_cap = 1e8,
            double rel_tol = kDefaultRelTol);

    static double amplitude(); // a = e^{9/2}

    // -a/delta (eq12) or -e^{9/2+3 delta}/delta (eq55)
    static double target_value(const Delta& delta, NVariant variant);
    static double lower_limit(NVariant variant);

    NEstimate solve(const Delta& delta, NVariant variant) const;

    // Root-finding core on an arbitrary non-increasing cumulative function;
    // exposed so tests can drive it with synthetic integrals.
    static NEstimate solve_root(const std::function<double(double)>& cumulative, double lower,
                                double target, double y_cap, double rel_tol);

    // grid must be sorted in descending delta order
    std::vector<ContinuityPoint> continuity_scan(std::span<const Delta> grid,
                                                 NVariant variant) const;

    // jump detector over precomputed (delta, n) pairs; pure, used by the
    // scan and directly testable with synthetic data
    static std::vector<ContinuityPoint> flag_jumps(std::vector<ContinuityPoint> points,
                                                   double threshold = 10.0);

    // mean value of P over [x_lo, x_hi]
    double mean_value_check(double x_lo, double x_hi) const;

    // Exact sign-change scan of P over [x_lo, x_hi]: P decreases strictly
    // between consecutive primes and jumps by +1 at each prime, so the two
    // values per gap (just after p, just before the next prime) decide the
    // sign everywhere in between.
    ScanResult littlewood_scan(double x_lo, double x_hi) const;

    // same scan with an injectable li (synthetic-fixture testing)
    ScanResult littlewood_scan_with(double x_lo, double x_hi,
                                    const std::function<double(double)>& li_fn) const;

private:
    const RemainderIntegrals* integrals_;
    double y_cap_;
    double rel_tol_;
};

} // namespace pcr
