#include "pcr/special_functions.hpp"

#include "pcr/common.hpp"

#include <cmath>
#include <limits>

namespace pcr {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Switchover between the convergent series and the asymptotic expansion.
// ln(1e12) ~ 27.6, so the entire accuracy-critical range [2, 1e12] stays
// on the series branch; the asymptotic branch covers li(x^2) for large x.
constexpr double kAsymptoticCut = 40.0;

// Ei(y) = gamma + ln|y| + sum_{k>=1} y^k / (k k!), convergent everywhere.
// For y > 0 the terms are all positive (no cancellation); on the negative
// axis this is only used for small |y| where the alternation is harmless.
LiValue ei_series(double y) {
    Kahan acc;
    double term = 1.0; // y^k / k!
    double abs_sum = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= y / k;
        double add = term / k;
        acc.add(add);
        abs_sum += std::fabs(add);
        if (std::fabs(add) < 1e-18 * (std::fabs(acc.value()) + 1.0) && k > 4) break;
    }
    double base = kEulerGamma + std::log(std::fabs(y));
    double value = base + acc.value();
    double err = 4.0 * kEps * (std::fabs(base) + abs_sum);
    return {value, err};
}

// Ei(y) ~ e^y/y * sum_k k!/y^k for |y| >= 40, truncated at the smallest term.
LiValue ei_asymptotic(double y) {
    double sum = 1.0;
    double term = 1.0;
    double min_term = 1.0;
    for (int k = 1; k < 100; ++k) {
        term *= k / y;
        if (std::fabs(term) >= min_term) break; // divergent tail reached
        min_term = std::fabs(term);
        sum += term;
        if (min_term < 1e-18) break;
    }
    double pre = std::exp(y) / y;
    return {pre * sum, std::fabs(pre) * (min_term + 8.0 * kEps * std::fabs(sum))};
}

// E1(z) for z >= 3 via the continued fraction
//   E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...))))
// evaluated with the modified Lentz algorithm.
double e1_continued_fraction(double z) {
    const double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 200; ++k) {
        double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = c * d;
        h *= delta;
        if (std::fabs(delta - 1.0) < 2.0 * kEps) break;
    }
    return std::exp(-z) * h;
}

} // namespace

LiValue exponential_integral(double y) {
    if (y == 0.0)
        throw std::domain_error("exponential_integral: Ei diverges at y = 0");
    if (y >= kAsymptoticCut) return ei_asymptotic(y);
    if (y > -3.0) return ei_series(y);
    // y <= -3: Ei(y) = -E1(-y)
    double v = e1_continued_fraction(-y);
    return {-v, 8.0 * kEps * std::fabs(v)};
}

LiValue li(double x) {
    if (!(x > 0.0)) throw std::domain_error("li: domain is x > 0");
    if (x == 1.0) throw std::domain_error("li: singular at x = 1");
    return exponential_integral(std::log(x));
}

double li_value(double x) { return li(x).value; }

double li_antiderivative(double x) {
    if (!(x >= 2.0)) throw std::domain_error("li_antiderivative: requires x >= 2");
    return x * li(x).value - li(x * x).value;
}

double weight_antiderivative(double x, const Delta& delta) {
    if (!(x >= 2.0)) throw std::domain_error("weight_antiderivative: requires x >= 2");
    double s = delta.s();
    double inv_s = 1.0 / s;
    double lx = std::log(x);
    return -std::exp(-s * lx) * ((lx - 2.0) * inv_s + inv_s * inv_s);
}

} // namespace pcr
