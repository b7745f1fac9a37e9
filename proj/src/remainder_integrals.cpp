#include "pcr/remainder_integrals.hpp"

#include "pcr/special_functions.hpp"

#include <cmath>
#include <limits>

namespace pcr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_integral(double x) {
    return x == std::floor(x) && std::fabs(x) < 9.007199254740992e15; // 2^53
}

} // namespace

RemainderIntegrals::RemainderIntegrals(const PrimeEngine& engine, QuadratureOptions quad)
    : engine_(&engine), quad_(quad) {}

double RemainderIntegrals::p_of(double x) const {
    if (!(x >= 2.0)) throw std::domain_error("p_of: requires x >= 2");
    return static_cast<double>(engine_->pi_of(x)) - li(x).value;
}

IntegralValue RemainderIntegrals::exact_integral_P(double a, double b) const {
    if (!(a >= 2.0)) throw std::domain_error("exact_integral_P: requires a >= 2");
    if (!(b >= a)) throw std::domain_error("exact_integral_P: requires b >= a");
    if (a == b) return {0.0, 0.0, IntegralMethod::semi_analytic};

    PrimeCheckpoint ca = engine_->checkpoint(a);
    PrimeCheckpoint cb = engine_->checkpoint(b);

    // int_a^b pi dx = sum_{p<=b} (b - max(p,a))
    //              = b (pi(b)-pi(a)) - (S(b)-S(a)) + (b-a) pi(a)
    const u64 dpi = cb.pi - ca.pi;
    const i128 dsum = static_cast<i128>(cb.prime_sum - ca.prime_sum);
    double pi_part;
    if (is_integral(a) && is_integral(b)) {
        i128 exact = static_cast<i128>(b) * dpi - dsum +
                     static_cast<i128>(b - a) * ca.pi;
        pi_part = static_cast<double>(exact);
    } else {
        pi_part = b * static_cast<double>(dpi) - static_cast<double>(dsum) +
                  (b - a) * static_cast<double>(ca.pi);
    }

    double La = li_antiderivative(a);
    double Lb = li_antiderivative(b);
    double li_part = Lb - La;
    double value = pi_part - li_part;

    // dominated by the special-function tolerance, plus fp rounding of the
    // large cancelled magnitudes
    double err = 1e-12 * (std::fabs(La) + std::fabs(Lb)) +
                 4.0 * kEps * (std::fabs(pi_part) + std::fabs(li_part));
    return {value, err, IntegralMethod::semi_analytic};
}

IntegralValue RemainderIntegrals::weighted_integral(const Delta& delta, double a,
                                                    double b) const {
    std::vector<Delta> one{delta};
    return weighted_integral_multi(one, a, b)[0];
}

std::vector<IntegralValue> RemainderIntegrals::weighted_integral_multi(
    const std::vector<Delta>& deltas, double a, double b) const {
    if (!(a >= 2.0)) throw std::domain_error("weighted_integral: requires a >= 2");
    if (!(b >= a)) throw std::domain_error("weighted_integral: requires b >= a");
    std::vector<IntegralValue> out;
    out.reserve(deltas.size());
    if (a == b) {
        for (std::size_t i = 0; i < deltas.size(); ++i)
            out.push_back({0.0, 0.0, IntegralMethod::semi_analytic});
        return out;
    }

    const std::size_t k = deltas.size();
    const u64 pia = engine_->pi_of(a);
    const u64 pib = engine_->pi_of(b);

    // sum_{a<p<=b} W_delta(p), all deltas in one sieve pass
    std::vector<double> s(k), inv_s(k);
    for (std::size_t i = 0; i < k; ++i) {
        s[i] = deltas[i].s();
        inv_s[i] = 1.0 / s[i];
    }
    std::vector<double> sumW = engine_->sum_over_primes_multi(
        static_cast<u64>(std::floor(a)), static_cast<u64>(std::floor(b)), k,
        [&](u64 p, double* vals) {
            double lp = std::log(static_cast<double>(p));
            for (std::size_t i = 0; i < k; ++i)
                vals[i] = -std::exp(-s[i] * lp) * ((lp - 2.0) * inv_s[i] + inv_s[i] * inv_s[i]);
        });

    const double ua = std::log(a), ub = std::log(b);
    for (std::size_t i = 0; i < k; ++i) {
        double Wa = weight_antiderivative(a, deltas[i]);
        double Wb = weight_antiderivative(b, deltas[i]);
        // sum_{p<=b} [W(b) - W(max(p,a))] = pi(b) W(b) - pi(a) W(a) - sum_{a<p<=b} W(p)
        double pi_part = static_cast<double>(pib) * Wb - static_cast<double>(pia) * Wa - sumW[i];

        // li part in u = ln x coordinates: (u-2) e^{-s u} li(e^u) = (u-2) e^{-s u} Ei(u)
        double si = s[i];
        QuadratureResult q = integrate(
            [si](double u) {
                return (u - 2.0) * std::exp(-si * u) * exponential_integral(u).value;
            },
            ua, ub, quad_);

        double value = pi_part - q.value;
        double err = q.abs_error +
                     4.0 * kEps *
                         (static_cast<double>(pib) * std::fabs(Wb) +
                          static_cast<double>(pia) * std::fabs(Wa) +
                          static_cast<double>(pib - pia) * std::fabs(Wa) + std::fabs(sumW[i]));
        out.push_back({value, err, IntegralMethod::semi_analytic});
    }
    return out;
}

TailBound RemainderIntegrals::tail_bound(double y, const Delta& delta, double a_const) {
    if (!(y >= 2.0)) throw std::domain_error("tail_bound: requires y >= 2");
    if (!(a_const > 0.0)) throw std::domain_error("tail_bound: requires a_const > 0");
    double d = delta.value();
    double bound = (a_const / d) * std::exp(-0.5 * d * std::log(y));
    return {y, d, a_const, bound};
}

TCutoff RemainderIntegrals::t_of_delta(const Delta& delta, double a_const, double cap) {
    if (!(a_const > 0.0)) throw std::domain_error("t_of_delta: requires a_const > 0");
    double d = delta.value();
    double log_t = (2.0 / d) * std::log(a_const / d);
    TCutoff t;
    t.value = std::exp(log_t); // saturates to +inf past the double range
    t.exceeds_cap = cap > 0.0 && log_t > std::log(cap);
    return t;
}

double RemainderIntegrals::calibrate_a(const Delta& delta, double y, double von_koch_c) {
    if (!(y >= 2.0)) throw std::domain_error("calibrate_a: requires y >= 2");
    if (!(von_koch_c > 0.0)) throw std::domain_error("calibrate_a: requires c > 0");
    double d = delta.value();
    double L = std::log(y);
    // int_y^inf (ln x - 2) x^{-3/2-d} * c sqrt(x) ln x dx
    //   = c int_L^inf (u^2 - 2u) e^{-d u} du
    //   = c e^{-dL} [ (L^2 - 2L)/d + (2L - 2)/d^2 + 2/d^3 ]
    double tail = von_koch_c * std::exp(-d * L) *
                  ((L * L - 2.0 * L) / d + (2.0 * L - 2.0) / (d * d) + 2.0 / (d * d * d));
    // solve (A/d) y^{-d/2} = tail
    return d * std::exp(0.5 * d * L) * tail;
}

} // namespace pcr
