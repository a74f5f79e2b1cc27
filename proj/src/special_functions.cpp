// special_functions.cpp

#include "zeno/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zeno/error.hpp"

namespace zeno {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double z) {
    if (z < 0.5) {
        // reflection
        return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczos_gamma(1.0 - z));
    }
    z -= 1.0;
    double sum = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

bool is_pole(double alpha) {
    return alpha <= 0.0 && alpha == std::floor(alpha);
}

// x^α e^{-x}
double prefactor(double alpha, double x) {
    return std::exp(alpha * std::log(x) - x);
}

} // namespace

double complete_gamma(double alpha) {
    if (!(alpha > 0.0)) fail(ErrorCode::DomainError, "complete_gamma: alpha must be > 0");
    return lanczos_gamma(alpha);
}

namespace detail {

double upper_gamma_series(double alpha, double x) {
    double ap = alpha;
    double term = 1.0 / alpha;
    double sum = term;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return lanczos_gamma(alpha) - sum * prefactor(alpha, x);
        }
    }
    fail(ErrorCode::NonConverged, "upper_incomplete_gamma: series did not converge");
}

double upper_gamma_continued_fraction(double alpha, double x) {
    // modified Lentz
    double b = x + 1.0 - alpha;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - alpha);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return prefactor(alpha, x) * h;
    }
    fail(ErrorCode::NonConverged, "upper_incomplete_gamma: continued fraction did not converge");
}

} // namespace detail

double upper_incomplete_gamma(double alpha, double x) {
    if (!std::isfinite(alpha) || !std::isfinite(x) || x < 0.0) {
        fail(ErrorCode::DomainError, "upper_incomplete_gamma: requires finite alpha and x >= 0");
    }
    if (is_pole(alpha)) {
        fail(ErrorCode::PoleOrder, "upper_incomplete_gamma: alpha = " + std::to_string(alpha) + " is a pole");
    }
    if (alpha < 0.0) {
        if (x == 0.0) fail(ErrorCode::DomainError, "upper_incomplete_gamma: integral diverges for alpha < 0, x = 0");
        // recur up to a positive order, then back down
        const int steps = static_cast<int>(std::ceil(-alpha));
        double value = upper_incomplete_gamma(alpha + steps, x);
        for (int k = steps - 1; k >= 0; --k) {
            const double a = alpha + k;
            value = (value - prefactor(a, x)) / a;
        }
        return value;
    }
    if (x == 0.0) return lanczos_gamma(alpha);
    if (x < alpha + 1.0) return detail::upper_gamma_series(alpha, x);
    return detail::upper_gamma_continued_fraction(alpha, x);
}

} // namespace zeno
