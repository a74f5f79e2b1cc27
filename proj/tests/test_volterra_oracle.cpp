#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "zeno/error.hpp"
#include "zeno/filter_quadrature.hpp"
#include "zeno/lorentzian_exact.hpp"
#include "zeno/volterra_oracle.hpp"

using namespace zeno;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
const Lorentzian kNarrow{0.01, 10.0, 1.0};

SpectrumModel zero_spectrum() { return Tabulated::from_points({{0, 0}, {1, 0}, {2, 0}, {3, 0}}); }

double max_deviation_from_residue(double dt, double t_max) {
    VolterraSettings s;
    s.dt = dt;
    s.t_max = t_max;
    s.richardson_check = false;
    const auto series = evolve_amplitude(SystemConfig{10.0, kNarrow}, s);
    const auto r = roots(kNarrow, 10.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < series.alpha.size(); ++i) {
        worst = std::max(worst, std::abs(series.alpha[i] - amplitude(r, static_cast<double>(i) * dt)));
    }
    return worst;
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no zeno::Error thrown";
    return ErrorCode::InvalidConfig;
}

} // namespace

TEST(Kernel, AnalyticLorentzian) {
    const KernelSpec k{kNarrow, KernelMode::AnalyticLorentzian};
    EXPECT_EQ(kernel(k, 0.0), cplx(kPi * 0.01, 0.0));
    double prev = INFINITY;
    for (double t = 0.0; t < 10.0; t += 0.37) {
        const double m = std::abs(kernel(k, t));
        EXPECT_NEAR(m, kPi * 0.01 * std::exp(-t), 1e-16);
        EXPECT_LT(m, prev);
        prev = m;
    }
}

TEST(Kernel, AtZeroIsInverseZenoTimeSquared) {
    for (const SpectrumModel& m : std::vector<SpectrumModel>{Hydrogenlike{1e-3, 4.0}, Hydrogenlike{2e-2, 0.7},
                                                             PowerLaw{0.01, 0.5, 10.0}, PowerLaw{0.01, 2.5, 3.0}}) {
        const cplx k0 = kernel(KernelSpec{m, KernelMode::NumericFourier}, 0.0);
        const double tz = zeno_time(m);
        EXPECT_NEAR(k0.real() * tz * tz, 1.0, 1e-8) << model_name(m);
        EXPECT_EQ(k0.imag(), 0.0);
    }
}

TEST(Kernel, NumericFullLineMatchesAnalytic) {
    for (const Lorentzian& l : {kNarrow, Lorentzian{0.02, 25.0, 2.0}}) {
        const KernelSpec analytic{l, KernelMode::AnalyticLorentzian};
        const KernelSpec numeric{l, KernelMode::NumericFourier, true};
        const double scale = std::abs(kernel(analytic, 0.0));
        for (double t : {0.0, 1e-3, 0.05, 0.5, 1.0, 3.0, 7.5, 20.0}) {
            EXPECT_LT(std::abs(kernel(numeric, t) - kernel(analytic, t)), 1e-6 * scale) << t;
        }
    }
}

TEST(Kernel, HalfLineShowsThresholdEffect) {
    // dropping ω < 0 removes d0Λ(π/2 − atan(ω0/Λ)) of weight
    const KernelSpec half{kNarrow, KernelMode::NumericFourier, false};
    const KernelSpec analytic{kNarrow, KernelMode::AnalyticLorentzian};
    const double missing = 0.01 * (kPi / 2.0 - std::atan(10.0));
    EXPECT_NEAR(kernel(analytic, 0.0).real() - kernel(half, 0.0).real(), missing, 1e-12);
}

TEST(Kernel, NumericAgainstDirectTransform) {
    // Φ(t) for G = ηω/(1+ω²)⁴ at large t by brute force on a fine grid
    const Hydrogenlike h{1e-3, 1.0};
    const double t = 3.0;
    const int n = 2'000'000;
    const double w_max = 200.0, dw = w_max / n;
    cplx sum = 0.0;
    for (int i = 1; i < n; ++i) {
        const double w = i * dw;
        sum += evaluate(h, w) * std::exp(cplx{0.0, -w * t});
    }
    sum *= dw;
    EXPECT_LT(std::abs(kernel(KernelSpec{h}, t) - sum), 1e-10);
}

TEST(Kernel, ModeValidation) {
    EXPECT_EQ(code_of([] { kernel(KernelSpec{Hydrogenlike{}, KernelMode::AnalyticLorentzian}, 1.0); }), ErrorCode::ModelMismatch);
    EXPECT_EQ(code_of([] { kernel(KernelSpec{PowerLaw{}, KernelMode::NumericFourier, true}, 1.0); }), ErrorCode::ModelMismatch);
    EXPECT_EQ(code_of([] { kernel(KernelSpec{Lorentzian{}}, -1.0); }), ErrorCode::DomainError);
    EXPECT_EQ(default_kernel_mode(Lorentzian{}), KernelMode::AnalyticLorentzian);
    EXPECT_EQ(default_kernel_mode(PowerLaw{}), KernelMode::NumericFourier);
}

TEST(Evolve, ZeroSpectrumStaysExcited) {
    VolterraSettings s;
    s.dt = 0.01;
    s.t_max = 5.0;
    const auto series = evolve_amplitude(SystemConfig{1.0, zero_spectrum()}, s);
    for (const cplx a : series.alpha) EXPECT_EQ(a, cplx(1.0, 0.0));
    EXPECT_EQ(gamma_from_survival(SystemConfig{1.0, zero_spectrum()}, 3.0, s).gamma_eff, 0.0);
}

TEST(Evolve, MatchesResidueSolution) {
    EXPECT_LT(max_deviation_from_residue(2e-3, 20.0), 1e-4);
}

TEST(Evolve, SecondOrderConvergence) {
    const double e1 = max_deviation_from_residue(0.04, 20.0);
    const double e2 = max_deviation_from_residue(0.02, 20.0);
    const double e3 = max_deviation_from_residue(0.01, 20.0);
    EXPECT_NEAR(e1 / e2, 4.0, 0.3);
    EXPECT_NEAR(e2 / e3, 4.0, 0.3);
}

TEST(Evolve, RichardsonCheck) {
    VolterraSettings s;
    s.dt = 0.01;
    s.t_max = 10.0;
    const auto fine = evolve_amplitude(SystemConfig{10.0, kNarrow}, s);
    EXPECT_EQ(fine.alpha_fine.size(), fine.alpha.size());
    EXPECT_GT(fine.richardson_diff, 0.0);
    EXPECT_LT(fine.richardson_diff, 1e-4);

    s.dt = 2.0; // far coarser than 1/Δ
    s.t_max = 40.0;
    EXPECT_EQ(code_of([&] { evolve_amplitude(SystemConfig{10.0, Lorentzian{0.3, 10.0, 1.0}}, s); }), ErrorCode::StepTooCoarse);
}

TEST(Evolve, SettingsValidation) {
    VolterraSettings s;
    s.dt = 0.1;
    s.t_max = 0.01;
    EXPECT_EQ(code_of([&] { evolve_amplitude(SystemConfig{10.0, kNarrow}, s); }), ErrorCode::InvalidConfig);
    s.dt = -1.0;
    EXPECT_EQ(code_of([&] { evolve_amplitude(SystemConfig{10.0, kNarrow}, s); }), ErrorCode::InvalidConfig);
}

TEST(Survival, MatchesExactLorentzian) {
    const double tau = 4.0 * kPi / 10.0;
    const auto v = gamma_from_survival(SystemConfig{10.0, kNarrow}, tau, VolterraSettings{});
    EXPECT_EQ(v.method, Method::VolterraOracle);
    EXPECT_NEAR(v.gamma_eff / gamma_exact(kNarrow, 10.0, tau).gamma_eff, 1.0, 1e-3);
    EXPECT_LT(v.err_estimate, 1e-3);
}

TEST(Survival, HydrogenlikeMatchesUt) {
    const SystemConfig c{1.0, Hydrogenlike{1e-3, 4.0}};
    for (double tau : {2.0 * kPi, 4.0 * kPi}) {
        EXPECT_NEAR(gamma_from_survival(c, tau, VolterraSettings{}).gamma_eff / gamma_ut(c, tau).gamma_eff, 1.0, 0.03);
    }
}

TEST(Survival, IndependentOfHorizon) {
    VolterraSettings a, b;
    a.dt = b.dt = 0.004;
    a.t_max = 1.0;
    b.t_max = 50.0;
    const SystemConfig c{8.0, kNarrow};
    EXPECT_EQ(gamma_from_survival(c, 0.9, a).gamma_eff, gamma_from_survival(c, 0.9, b).gamma_eff);
}

TEST(Survival, ShortTimeLaw) {
    // p(τ) = 1 − τ²/τ_Z², so γ/τ → 1/τ_Z²
    const SystemConfig c{1.0, Hydrogenlike{1e-3, 4.0}};
    const double tau = 1e-3;
    VolterraSettings s;
    s.dt = tau / 4.0;
    const double tz = zeno_time(c.spectrum);
    EXPECT_NEAR(gamma_from_survival(c, tau, s).gamma_eff * tz * tz / tau, 1.0, 1e-2);
}

TEST(Survival, UnderflowRaises) {
    // strong coupling to a broad band: |α| ~ e^{−20t}
    VolterraSettings s;
    s.dt = 0.002;
    s.richardson_check = false;
    EXPECT_EQ(code_of([&] { gamma_from_survival(SystemConfig{10.0, Lorentzian{5.0, 10.0, 100.0}}, 50.0, s); }),
              ErrorCode::AmplitudeUnderflow);
}
