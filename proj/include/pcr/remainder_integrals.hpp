#pragma once

#include "pcr/delta.hpp"
#include "pcr/prime_engine.hpp"
#include "pcr/quadrature.hpp"

#include <vector>

namespace pcr {

enum class IntegralMethod { semi_analytic, quadrature };

struct IntegralValue {
    double value;
    double abs_error;
    IntegralMethod method;
};

struct TailBound {
    double y;
    double delta;
    double a_const;
    double bound; // (a_const/delta) * y^{-delta/2}
};

struct TCutoff {
    double value;      // (a_const/delta)^{2/delta}, +inf when the double range is exceeded
    bool exceeds_cap;  // value lies above the supplied range cap
};

// Semi-analytic evaluation of P(x) = pi(x) - li(x), its plain integral
// I(a,b) = int_a^b P dx and the weighted integral
// J(delta;a,b) = int_a^b (ln x - 2) x^{-3/2-delta} P(x) dx.
// The pi-parts are exact step-function sums over primes; the li-parts use
// closed-form antiderivatives (I) or adaptive quadrature (J).
class RemainderIntegrals {
public:
    explicit RemainderIntegrals(const PrimeEngine& engine, QuadratureOptions quad = {});

    const PrimeEngine& engine() const { return *engine_; }

    double p_of(double x) const;

    IntegralValue exact_integral_P(double a, double b) const;

    IntegralValue weighted_integral(const Delta& delta, double a, double b) const;

    // One prime-stream pass shared across all deltas.
    std::vector<IntegralValue> weighted_integral_multi(const std::vector<Delta>& deltas,
                                                       double a, double b) const;

    static TailBound tail_bound(double y, const Delta& delta, double a_const);

    // T(delta) = (a_const/delta)^{2/delta}, computed in logs; flags values
    // above cap instead of failing.
    static TCutoff t_of_delta(const Delta& delta, double a_const, double cap);

    // The constant A implied by the envelope |P(x)| <= c sqrt(x) ln x:
    // integrates the weight against the envelope from y to infinity in
    // closed form and solves (A/delta) y^{-delta/2} = that tail.
    static double calibrate_a(const Delta& delta, double y, double von_koch_c);

private:
    const PrimeEngine* engine_;
    QuadratureOptions quad_;
};

} // namespace pcr
