#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "zeno/error.hpp"
#include "zeno/filter_quadrature.hpp"
#include "zeno/lorentzian_exact.hpp"

using namespace zeno;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(Roots, ResonantExample) {
    const auto r = roots(Lorentzian{0.01, 10.0, 1.0}, 10.0);
    EXPECT_EQ(r.omega_big, 0.0);
    const double disc = std::sqrt(1.0 - 0.04 * kPi);
    EXPECT_NEAR(r.a_plus.real(), 0.0, 1e-15);
    EXPECT_NEAR(r.a_plus.imag(), 0.5 * (-1.0 + disc), 1e-15);
    // commonly quoted digits, rounded from √(1 − 0.04π) ≈ 0.935061
    EXPECT_NEAR(r.a_plus.imag(), -0.0324693, 2e-6);
    EXPECT_NEAR(r.a_minus.imag(), -0.9675307, 2e-6);
    EXPECT_NEAR(std::abs(r.a_plus * r.a_minus + 0.01 * kPi), 0.0, 1e-15);
}

TEST(Roots, VietaOnRandomDraws) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const Lorentzian l{1e-4 + 0.5 * uni(rng), 0.5 + 20.0 * uni(rng), 0.05 + 5.0 * uni(rng)};
        const double delta = 0.1 + 20.0 * uni(rng);
        const auto r = roots(l, delta);
        const cplx sum{l.omega0 - delta, -l.lam};
        const cplx product{-kPi * l.d0 * l.lam, 0.0};
        EXPECT_LT(std::abs(r.a_plus + r.a_minus - sum), 1e-12 * (std::abs(r.a_plus) + std::abs(r.a_minus)));
        EXPECT_LT(rel(r.a_plus * r.a_minus, product), 1e-12);
    }
}

TEST(Roots, WeakCouplingLimit) {
    // principal root: for Ω > 0 the + branch carries Ω − iΛ and the − branch goes to 0
    const auto r = roots(Lorentzian{1e-12, 10.0, 1.0}, 8.0);
    EXPECT_LT(std::abs(r.a_minus), 1e-10);
    EXPECT_LT(std::abs(r.a_plus - cplx{2.0, -1.0}), 1e-10);
    EXPECT_GT(std::abs(r.a_minus), 0.0);
}

TEST(Roots, ExceptionalPointRaises) {
    // (Ω − iΛ)² + 4πD₀Λ = 0 at Ω = 0, Λ = 4πD₀
    const double d0 = 0.25;
    const Lorentzian l{d0, 10.0, 4.0 * kPi * d0};
    try {
        roots(l, 10.0);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateRoots);
    }
}

TEST(Amplitude, StartsAtOneAndDecays) {
    const auto r = roots(Lorentzian{0.01, 10.0, 1.0}, 10.0);
    EXPECT_EQ(amplitude(r, 0.0), cplx(1.0, 0.0));
    EXPECT_LT(std::abs(amplitude(r, 2000.0)), 1e-20);
    double prev = 1.0;
    for (double t = 0.1; t < 50.0; t += 0.1) {
        const double m = std::abs(amplitude(r, t));
        EXPECT_LE(m, 1.0);
        EXPECT_LE(m, prev + 1e-15);
        prev = m;
    }
}

TEST(Amplitude, SymmetricInRootLabels) {
    auto r = roots(Lorentzian{0.03, 10.0, 0.7}, 8.2);
    LorentzianRoots swapped = r;
    std::swap(swapped.a_plus, swapped.a_minus);
    for (double t : {0.3, 2.0, 17.0}) EXPECT_LT(std::abs(amplitude(r, t) - amplitude(swapped, t)), 1e-14);
}

TEST(Amplitude, ShortTimeSeries) {
    // α(t) = 1 − πD₀Λ t²/2 + O(t³)
    const Lorentzian l{0.01, 10.0, 1.0};
    const auto r = roots(l, 10.0);
    const double t = 1e-3;
    EXPECT_NEAR(std::abs(amplitude(r, t) - (1.0 - kPi * l.d0 * l.lam * t * t / 2.0)), 0.0, 1e-10);
}

TEST(GammaExact, ShortTimeLaw) {
    const Lorentzian l{0.01, 10.0, 1.0};
    const double tz = extended_zeno_time(l);
    EXPECT_NEAR(tz, 1.0 / std::sqrt(0.01 * kPi), 1e-15);
    const double tau = 1e-3;
    const auto e = gamma_exact(l, 10.0, tau);
    EXPECT_NEAR(e.gamma_eff * tz * tz / tau, 1.0, 1e-3);
    EXPECT_EQ(e.method, Method::ExactLorentzian);
}

TEST(GammaExact, ResonantAndDetunedShapes) {
    const Lorentzian l{0.01, 10.0, 1.0};
    double max_detuned = 0.0;
    for (double x = 2.0 * kPi; x <= 60.0; x += 0.25) {
        EXPECT_LT(*gamma_exact(l, 10.0, x / 10.0).ratio, 1.0);
        max_detuned = std::max(max_detuned, *gamma_exact(l, 8.0, x / 8.0).ratio);
    }
    EXPECT_GT(max_detuned, 1.0);
}

TEST(GammaExact, Underflow) {
    try {
        gamma_exact(Lorentzian{1.0, 10.0, 1.0}, 10.0, 1e5);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AmplitudeUnderflow);
    }
}

TEST(ClosedForm, ResonantExample) {
    const auto e = closed_form_lorentzian(Lorentzian{0.01, 10.0, 1.0}, 10.0, 5.0);
    EXPECT_NEAR(*e.ratio, 1.0 - (1.0 - std::exp(-5.0)) / 5.0, 1e-15);
    EXPECT_NEAR(*e.ratio, 0.80135, 1e-5);
}

TEST(ClosedForm, LongTauLimit) {
    EXPECT_NEAR(*closed_form_lorentzian(Lorentzian{0.01, 10.0, 1.0}, 8.0, 1e7).ratio, 1.0, 1e-6);
}

TEST(ClosedForm, DetunedPeakAboveOne) {
    const Lorentzian l{0.01, 10.0, 1.0};
    double peak = 0.0;
    double peak_at = 0.0;
    for (double lt = 0.1; lt < 40.0; lt += 0.05) {
        const double r = *closed_form_lorentzian(l, 8.0, lt).ratio;
        if (r > peak) { peak = r; peak_at = lt; }
    }
    EXPECT_GT(peak, 1.0);
    EXPECT_GT(peak_at, 0.5);
    EXPECT_LT(peak_at, 20.0);
}

TEST(ClosedForm, ThetaQuadrants) {
    // Ω < 0 puts θ in the third or fourth quadrant; the UT integral is the oracle
    const Lorentzian l{0.01, 20.0, 1.0};
    for (double delta : {21.5, 20.3, 18.0}) {
        for (double tau : {0.7, 3.0}) {
            const double ut = gamma_ut(SystemConfig{delta, l}, tau).gamma_eff;
            EXPECT_NEAR(closed_form_lorentzian(l, delta, tau).gamma_eff / ut, 1.0, 2e-3) << delta << " " << tau;
        }
    }
}

TEST(CrossMethod, ExactAndClosedFormCloseAtWeakCoupling) {
    // deviation grows like γ₀τ; keep to the first half of the figure window here
    const Lorentzian l{0.01, 10.0, 1.0};
    for (double x = 2.0 * kPi; x <= 30.0; x += 1.0) {
        for (double delta : {10.0, 8.0}) {
            const double tau = x / delta;
            EXPECT_NEAR(closed_form_lorentzian(l, delta, tau).gamma_eff / gamma_exact(l, delta, tau).gamma_eff, 1.0, 0.02);
        }
    }
}
