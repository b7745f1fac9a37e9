#pragma once

#include "pcr/delta.hpp"

namespace pcr {

struct LiValue {
    double value;
    double abs_error;
};

// Principal-value logarithmic integral li(x) = Ei(ln x), x > 0, x != 1.
// Throws std::domain_error at x <= 0 and at the x = 1 singularity.
LiValue li(double x);
double li_value(double x);

// Exponential integral Ei(y), y != 0. Series below |y| = 40, asymptotic
// expansion above, continued fraction for E1 on the negative axis.
LiValue exponential_integral(double y);

// L(x) = x li(x) - li(x^2), the antiderivative of li:  L'(x) = li(x).
// Defined for x >= 2.
double li_antiderivative(double x);

// W(x) = -x^{-s} [ (ln x - 2)/s + 1/s^2 ] with s = 1/2 + delta, so that
// W'(x) = (ln x - 2) x^{-1-s}. Defined for x >= 2.
double weight_antiderivative(double x, const Delta& delta);

} // namespace pcr
