#include "pcr/n_of_delta.hpp"

#include "pcr/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcr {

namespace {

constexpr double kE3 = 20.085536923187668; // e^3

bool negative(double v) { return v < 0.0; }

} // namespace

NSolver::NSolver(const RemainderIntegrals& integrals, double y_cap, double rel_tol)
    : integrals_(&integrals), y_cap_(y_cap), rel_tol_(rel_tol) {
    if (!(y_cap > 2.0)) throw ConfigError("NSolver: y_cap must exceed 2");
    if (!(rel_tol > 0.0)) throw ConfigError("NSolver: rel_tol must be positive");
}

double NSolver::amplitude() { return std::exp(4.5); }

double NSolver::target_value(const Delta& delta, NVariant variant) {
    double d = delta.value();
    switch (variant) {
    case NVariant::eq12: return -std::exp(4.5) / d;
    case NVariant::eq55: return -std::exp(4.5 + 3.0 * d) / d;
    }
    throw std::domain_error("target_value: unknown variant");
}

double NSolver::lower_limit(NVariant variant) {
    return variant == NVariant::eq12 ? 2.0 : kE3;
}

NEstimate NSolver::solve_root(const std::function<double(double)>& cumulative, double lower,
                              double target, double y_cap, double rel_tol) {
    if (!(target < 0.0)) throw std::domain_error("solve_root: target must be negative");

    NEstimate est{};
    est.target = target;

    // geometric bracket scan; I(lower)=0 > target and I decreases
    double prev_y = lower;
    double prev_f = 0.0;
    double lo = lower, hi = lower;
    double f_lo = 0.0, f_hi = 0.0;
    bool bracketed = false;
    for (double y = std::max(2.0 * lower, lower + 2.0);; y *= 2.0) {
        bool at_cap = false;
        if (y >= y_cap) {
            y = y_cap;
            at_cap = true;
        }
        double f = cumulative(y);
        if (f > prev_f + 1e-9 * (std::fabs(prev_f) + 1.0)) est.flags.multiple_roots = true;
        if (f <= target) {
            lo = prev_y;
            f_lo = prev_f;
            hi = y;
            f_hi = f;
            bracketed = true;
            break;
        }
        prev_y = y;
        prev_f = f;
        if (at_cap) break;
    }

    if (!bracketed) {
        est.flags.cap_hit = true;
        est.n_value = y_cap;
        est.achieved = prev_f;
        est.bracket_lo = prev_y;
        est.bracket_hi = y_cap;
        return est;
    }

    // bisection to width < 0.5 (f_lo > target >= f_hi throughout)
    while (hi - lo >= 0.5) {
        double mid = 0.5 * (lo + hi);
        double fm = cumulative(mid);
        if (fm > target) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }

    // secant refinement inside the final bracket
    double n = hi, achieved = f_hi;
    for (int iter = 0; iter < 40; ++iter) {
        double denom = f_lo - f_hi;
        double t = denom > 0.0 ? (f_lo - target) / denom : 0.5;
        t = std::clamp(t, 1e-3, 1.0 - 1e-3);
        n = lo + t * (hi - lo);
        achieved = cumulative(n);
        if (std::fabs(achieved - target) < rel_tol * std::fabs(target)) break;
        if (achieved > target) {
            lo = n;
            f_lo = achieved;
        } else {
            hi = n;
            f_hi = achieved;
        }
        if (hi - lo < 1e-9 * std::max(1.0, hi)) break;
    }

    est.n_value = n;
    est.achieved = achieved;
    est.bracket_lo = lo;
    est.bracket_hi = hi;
    return est;
}

NEstimate NSolver::solve(const Delta& delta, NVariant variant) const {
    double lower = lower_limit(variant);
    double target = target_value(delta, variant);
    NEstimate est = solve_root(
        [&](double y) { return integrals_->exact_integral_P(lower, y).value; }, lower, target,
        y_cap_, rel_tol_);
    est.delta = delta.value();
    est.variant = variant;
    return est;
}

std::vector<ContinuityPoint> NSolver::flag_jumps(std::vector<ContinuityPoint> points,
                                                 double threshold) {
    const std::size_t n = points.size();
    if (n < 3) return points;
    std::vector<double> incr(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        incr[i] = std::fabs(points[i + 1].n_value - points[i].n_value);
    std::vector<double> sorted = incr;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (incr[i] > threshold * median && incr[i] > 0.0) points[i + 1].jump = true;
    }
    return points;
}

std::vector<ContinuityPoint> NSolver::continuity_scan(std::span<const Delta> grid,
                                                      NVariant variant) const {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (grid[i].value() < grid[i + 1].value())
            throw std::domain_error("continuity_scan: grid must be sorted descending");

    std::vector<ContinuityPoint> points;
    points.reserve(grid.size());
    for (const Delta& d : grid) {
        NEstimate est = solve(d, variant);
        points.push_back({d.value(), est.n_value, false, est.flags});
    }
    return flag_jumps(std::move(points));
}

double NSolver::mean_value_check(double x_lo, double x_hi) const {
    if (!(x_lo >= 2.0) || !(x_lo < x_hi))
        throw std::domain_error("mean_value_check: requires 2 <= x_lo < x_hi");
    return integrals_->exact_integral_P(x_lo, x_hi).value / (x_hi - x_lo);
}

ScanResult NSolver::littlewood_scan(double x_lo, double x_hi) const {
    return littlewood_scan_with(x_lo, x_hi, [](double x) { return li(x).value; });
}

ScanResult NSolver::littlewood_scan_with(double x_lo, double x_hi,
                                         const std::function<double(double)>& li_fn) const {
    x_lo = std::max(x_lo, 2.0);
    if (!(x_lo < x_hi)) throw std::domain_error("littlewood_scan: requires x_lo < x_hi");

    const PrimeEngine& eng = integrals_->engine();
    ScanResult res;
    res.max_p = -std::numeric_limits<double>::infinity();
    res.min_p = std::numeric_limits<double>::infinity();
    res.gaps_checked = 0;

    double count = static_cast<double>(eng.pi_of(x_lo));
    double cur_x = x_lo;
    double cur_v = count - li_fn(x_lo);
    res.max_p = std::max(res.max_p, cur_v);
    res.min_p = std::min(res.min_p, cur_v);

    u64 from = static_cast<u64>(std::floor(x_lo)) + 1;
    u64 to = static_cast<u64>(std::floor(x_hi)) + 1;
    eng.for_each_prime(from, to, [&](u64 prime) {
        double p = static_cast<double>(prime);
        if (p > x_hi) return;
        // left limit just before the prime
        double before = count - li_fn(p);
        res.min_p = std::min(res.min_p, before);
        if (negative(cur_v) != negative(before)) res.brackets.push_back({cur_x, p});
        // value at the prime (right-continuous: pi jumps by one)
        count += 1.0;
        double at = count - li_fn(p);
        res.max_p = std::max(res.max_p, at);
        if (negative(before) != negative(at)) res.brackets.push_back({p, p});
        cur_x = p;
        cur_v = at;
        ++res.gaps_checked;
    });

    double end_v = count - li_fn(x_hi);
    res.min_p = std::min(res.min_p, end_v);
    if (negative(cur_v) != negative(end_v)) res.brackets.push_back({cur_x, x_hi});
    ++res.gaps_checked;
    return res;
}

} // namespace pcr
