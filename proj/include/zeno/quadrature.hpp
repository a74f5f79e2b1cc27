// quadrature.hpp: adaptive Gauss–Kronrod helpers shared by the numeric modules

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace zeno::quad {

struct Result {
    double value{0.0};
    double error{0.0};
    double l1{0.0};
};

// Adaptive 21-point Gauss–Kronrod on [a, b]; b may be +∞.
template <class F>
Result gauss_kronrod(F&& f, double a, double b, double rel_tol, unsigned max_depth = 20) {
    Result r;
    if (!(b > a)) return r;
    r.value = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
        f, a, b, max_depth, rel_tol, &r.error, &r.l1);
    return r;
}

// Splits [a, b] at the interior breakpoints and sums the pieces; b may be +∞.
// Breakpoints within a rounding distance of a piece end are dropped: slivers of a few
// ulps defeat the error estimate and drive the recursion to full depth.
template <class F>
Result piecewise(F&& f, double a, double b, std::vector<double> breakpoints, double rel_tol) {
    std::sort(breakpoints.begin(), breakpoints.end());
    Result total;
    double lo = a;
    auto sliver = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); };
    auto add = [&](double x0, double x1) {
        const Result part = gauss_kronrod(f, x0, x1, rel_tol);
        total.value += part.value;
        total.error += part.error;
        total.l1 += part.l1;
    };
    for (double p : breakpoints) {
        if (p <= lo || p >= b || sliver(p, lo) || sliver(p, b)) continue;
        add(lo, p);
        lo = p;
    }
    add(lo, b);
    return total;
}

} // namespace zeno::quad
