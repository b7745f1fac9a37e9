#include "pcr/quadrature.hpp"

#include "pcr/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace pcr {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Interval {
    double a, b;
    double value;
    double error;
};

struct ErrOrder {
    bool operator()(const Interval& x, const Interval& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a; // deterministic tie-break
    }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fc = f(center);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    double resabs = std::fabs(result_kronrod);

    double fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        double dx = half * kXgk[j];
        double f1 = f(center - dx);
        double f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        result_kronrod += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }

    double mean = 0.5 * result_kronrod;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));

    double value = result_kronrod * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((result_kronrod - result_gauss) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    return {a, b, value, err};
}

QuadratureResult run_adaptive(const std::function<double(double)>& f,
                              std::vector<Interval> initial, const QuadratureOptions& opts) {
    std::priority_queue<Interval, std::vector<Interval>, ErrOrder> heap;
    double total_value = 0.0, total_error = 0.0;
    for (const auto& iv : initial) {
        total_value += iv.value;
        total_error += iv.error;
        heap.push(iv);
    }

    int n = static_cast<int>(initial.size());
    bool converged = true;
    while (total_error > std::max(opts.abs_tol, opts.rel_tol * std::fabs(total_value))) {
        if (n >= opts.max_intervals) {
            converged = false;
            break;
        }
        Interval worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution, cannot split further
            heap.push({worst.a, worst.b, worst.value, 0.0});
            total_error -= worst.error;
            continue;
        }
        Interval left = gk15(f, worst.a, mid);
        Interval right = gk15(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++n;
    }

    // deterministic, left-to-right compensated resum
    std::vector<Interval> finals;
    finals.reserve(heap.size());
    while (!heap.empty()) {
        finals.push_back(heap.top());
        heap.pop();
    }
    std::sort(finals.begin(), finals.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    Kahan val, err;
    for (const auto& iv : finals) {
        val.add(iv.value);
        err.add(iv.error);
    }
    return {val.value(), err.value(), n, converged};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
    if (a == b) return {0.0, 0.0, 0, true};
    if (a > b) {
        QuadratureResult r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }
    return run_adaptive(f, {gk15(f, a, b)}, opts);
}

QuadratureResult integrate_with_breakpoints(const std::function<double(double)>& f, double a,
                                            double b, std::span<const double> breakpoints,
                                            const QuadratureOptions& opts) {
    if (a == b) return {0.0, 0.0, 0, true};
    if (a > b) {
        QuadratureResult r = integrate_with_breakpoints(f, b, a, breakpoints, opts);
        r.value = -r.value;
        return r;
    }
    std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                              [&](double x) { return !(x > a && x < b); }),
               cuts.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Interval> initial;
    initial.reserve(cuts.size() + 1);
    double lo = a;
    for (double c : cuts) {
        initial.push_back(gk15(f, lo, c));
        lo = c;
    }
    initial.push_back(gk15(f, lo, b));

    QuadratureOptions o = opts;
    o.max_intervals = std::max(opts.max_intervals,
                               static_cast<int>(initial.size()) + opts.max_intervals);
    return run_adaptive(f, std::move(initial), o);
}

} // namespace pcr
