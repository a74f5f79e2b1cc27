// volterra_oracle.cpp

#include "zeno/volterra_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zeno/error.hpp"
#include "zeno/quadrature.hpp"

namespace zeno {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKernelRelTol = 1e-12;
constexpr double kPieceRelTol = 1e-11;
constexpr double kMaxPeriods = 2e6;
constexpr double kRichardsonLimit = 1e-3;

// A real profile on [lower, upper] to be Fourier transformed.
struct Profile {
    std::function<double(double)> g;
    std::function<double(double)> g1;
    std::function<double(double)> g2;
    std::vector<double> breakpoints;
    double lower{0.0};
    double upper{kInf};
};

Profile positive_part(const SpectrumModel& s) {
    Profile p;
    p.g = [&s](double w) { return evaluate(s, w); };
    p.g1 = [&s](double w) { return first_derivative(s, w); };
    p.g2 = [&s](double w) { return second_derivative(s, w); };
    const SupportHint hint = support_hint(s);
    p.breakpoints = hint.breakpoints;
    std::sort(p.breakpoints.begin(), p.breakpoints.end());
    p.upper = hint.upper;
    if (const auto* t = std::get_if<Tabulated>(&s)) p.lower = t->front();
    return p;
}

// ω ↦ L(−ω) for ω ≥ 0: the part of the extended Lorentzian below zero, reflected.
Profile reflected_lorentzian(const Lorentzian& l) {
    Profile p;
    const double c = l.d0 * l.lam * l.lam;
    const double lam2 = l.lam * l.lam;
    p.g = [=](double u) {
        const double x = u + l.omega0;
        return c / (x * x + lam2);
    };
    p.g1 = [=](double u) {
        const double x = u + l.omega0;
        const double q = x * x + lam2;
        return -2.0 * c * x / (q * q);
    };
    p.g2 = [=](double u) {
        const double x = u + l.omega0;
        const double q = x * x + lam2;
        return 2.0 * c * (3.0 * x * x - lam2) / (q * q * q);
    };
    for (double k : {1.0, 3.0, 10.0, 40.0}) p.breakpoints.push_back(k * l.lam);
    return p;
}

template <class F>
cplx integrate_complex(F&& f, double a, double b) {
    if (!(b > a)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 12, kPieceRelTol);
}

// ∫_lower^upper g(ω) e^{−iωt} dω; scale sets the absolute size of the neglected tail.
cplx fourier(const Profile& p, double t, double scale) {
    if (t == 0.0) {
        std::vector<double> inner;
        for (double b : p.breakpoints) if (b > p.lower && b < p.upper) inner.push_back(b);
        return quad::piecewise(p.g, p.lower, p.upper, inner, kPieceRelTol).value;
    }

    // W: end of explicit integration; the rest is the asymptotic tail
    double w_end = p.upper;
    bool with_tail = false;
    if (!std::isfinite(p.upper)) {
        with_tail = true;
        w_end = std::max(p.lower, p.breakpoints.empty() ? 1.0 : p.breakpoints.back());
        if (w_end <= 0.0) w_end = 1.0;
        const double t3 = t * t * t;
        int doublings = 0;
        while (std::abs(p.g2(w_end)) / t3 > kKernelRelTol * scale) {
            w_end *= 2.0;
            if (++doublings > 200) fail(ErrorCode::NonConverged, "kernel: asymptotic tail did not settle");
        }
    }

    const double period = kTwoPi / t;
    if ((w_end - p.lower) / period > kMaxPeriods) {
        fail(ErrorCode::NonConverged, "kernel: too many oscillation periods at t = " + std::to_string(t));
    }

    std::vector<double> cuts;
    for (double b : p.breakpoints) if (b > p.lower && b < w_end) cuts.push_back(b);
    const double first = std::ceil(p.lower / period) * period;
    for (double x = first; x < w_end; x += period) if (x > p.lower) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(w_end);

    auto f = [&](double w) { return p.g(w) * cplx{std::cos(w * t), -std::sin(w * t)}; };
    cplx sum = 0.0;
    double lo = p.lower;
    for (double hi : cuts) {
        if (hi > lo) sum += integrate_complex(f, lo, hi);
        lo = hi;
    }
    if (with_tail) {
        const cplx phase{std::cos(w_end * t), -std::sin(w_end * t)};
        sum += phase * cplx{-p.g1(w_end) / (t * t), -p.g(w_end) / t};
    }
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) fail(ErrorCode::NonConverged, "kernel: non-finite value");
    return sum;
}

double kernel_scale(const KernelSpec& spec) {
    if (spec.full_line) {
        const auto& l = std::get<Lorentzian>(spec.spectrum);
        return kPi * l.d0 * l.lam;
    }
    // a table has bounded support and no asymptotic tail to scale
    if (std::holds_alternative<Tabulated>(spec.spectrum)) return 1.0;
    return spectral_weight(spec.spectrum);
}

cplx kernel_unchecked(const KernelSpec& spec, double t, double scale) {
    if (spec.mode == KernelMode::AnalyticLorentzian) {
        const auto& l = std::get<Lorentzian>(spec.spectrum);
        return kPi * l.d0 * l.lam * std::exp(cplx{-l.lam * t, -l.omega0 * t});
    }
    cplx value = fourier(positive_part(spec.spectrum), t, scale);
    if (spec.full_line) value += std::conj(fourier(reflected_lorentzian(std::get<Lorentzian>(spec.spectrum)), t, scale));
    return value;
}

KernelSpec kernel_spec_for(const SystemConfig& config, const VolterraSettings& settings) {
    KernelSpec spec{config.spectrum, settings.kernel_mode.value_or(default_kernel_mode(config.spectrum)), settings.full_line};
    validate(spec);
    return spec;
}

// e^{iΔmh} Φ(mh) for m = 0..n
std::vector<cplx> kernel_table(const KernelSpec& spec, double delta, double h, std::size_t n) {
    const double scale = kernel_scale(spec);
    std::vector<cplx> k(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        const double t = static_cast<double>(m) * h;
        k[m] = std::exp(cplx{0.0, delta * t}) * kernel_unchecked(spec, t, scale);
    }
    return k;
}

// Trapezoid in both the convolution and the time step; f_n = α̇(t_n).
std::vector<cplx> step(const std::vector<cplx>& k, std::size_t stride, double h, std::size_t n) {
    std::vector<cplx> alpha(n + 1);
    alpha[0] = 1.0;
    cplx f_prev = 0.0;
    const cplx k0 = k[0];
    const cplx denom = 1.0 + 0.25 * h * h * k0;
    for (std::size_t i = 1; i <= n; ++i) {
        cplx conv = 0.5 * k[i * stride] * alpha[0];
        for (std::size_t j = 1; j < i; ++j) conv += k[(i - j) * stride] * alpha[j];
        const cplx f_explicit = -h * conv;
        alpha[i] = (alpha[i - 1] + 0.5 * h * (f_prev + f_explicit)) / denom;
        f_prev = f_explicit - 0.5 * h * k0 * alpha[i];
    }
    return alpha;
}

} // namespace

std::string_view to_string(KernelMode mode) noexcept {
    switch (mode) {
        case KernelMode::AnalyticLorentzian: return "analytic_lorentzian";
        case KernelMode::NumericFourier: return "numeric_fourier";
    }
    return "unknown";
}

std::optional<KernelMode> kernel_mode_from_string(std::string_view name) noexcept {
    for (KernelMode m : {KernelMode::AnalyticLorentzian, KernelMode::NumericFourier}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

KernelMode default_kernel_mode(const SpectrumModel& spectrum) noexcept {
    return std::holds_alternative<Lorentzian>(spectrum) ? KernelMode::AnalyticLorentzian : KernelMode::NumericFourier;
}

void validate(const KernelSpec& spec) {
    validate(spec.spectrum);
    const bool lorentzian = std::holds_alternative<Lorentzian>(spec.spectrum);
    if (spec.mode == KernelMode::AnalyticLorentzian && !lorentzian) {
        fail(ErrorCode::ModelMismatch, std::string("analytic kernel needs a lorentzian spectrum, got ") + model_name(spec.spectrum));
    }
    if (spec.full_line && !lorentzian) {
        fail(ErrorCode::ModelMismatch, std::string("full-line kernel needs a lorentzian spectrum, got ") + model_name(spec.spectrum));
    }
}

cplx kernel(const KernelSpec& spec, double t) {
    validate(spec);
    if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorCode::DomainError, "kernel: t must be finite and >= 0");
    return kernel_unchecked(spec, t, kernel_scale(spec));
}

double default_time_step(const SystemConfig& config) {
    validate(config);
    const double width = std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Lorentzian>) return m.lam;
            else if constexpr (std::is_same_v<T, Tabulated>) return m.back() - m.front();
            else return m.omega_c;
        },
        config.spectrum);
    return std::min(1.0 / config.delta, 1.0 / width) / 20.0;
}

void validate(const VolterraSettings& settings) {
    if (!(settings.dt >= 0.0) || !std::isfinite(settings.dt)) fail(ErrorCode::InvalidConfig, "volterra dt must be finite and >= 0");
    if (!(settings.t_max >= 0.0) || !std::isfinite(settings.t_max)) fail(ErrorCode::InvalidConfig, "volterra t_max must be finite and >= 0");
    if (settings.dt > 0.0 && settings.t_max > 0.0 && settings.t_max < settings.dt) fail(ErrorCode::InvalidConfig, "volterra t_max must be >= dt");
}

AmplitudeSeries evolve_amplitude(const SystemConfig& config, const VolterraSettings& settings) {
    validate(config);
    validate(settings);
    const KernelSpec spec = kernel_spec_for(config, settings);
    const double dt = settings.dt > 0.0 ? settings.dt : default_time_step(config);
    const auto n = static_cast<std::size_t>(std::ceil(settings.t_max / dt - 1e-9));

    AmplitudeSeries out;
    out.dt = dt;
    if (settings.richardson_check) {
        const std::vector<cplx> k = kernel_table(spec, config.delta, 0.5 * dt, 2 * n);
        out.alpha = step(k, 2, dt, n);
        const std::vector<cplx> fine = step(k, 1, 0.5 * dt, 2 * n);
        out.alpha_fine.resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            out.alpha_fine[i] = fine[2 * i];
            out.richardson_diff = std::max(out.richardson_diff, std::abs(out.alpha[i] - out.alpha_fine[i]));
        }
        if (out.richardson_diff > kRichardsonLimit) {
            fail(ErrorCode::StepTooCoarse, "evolve_amplitude: dt and dt/2 differ by " + std::to_string(out.richardson_diff) +
                                               " (limit 1e-3); reduce dt");
        }
    } else {
        out.alpha = step(kernel_table(spec, config.delta, dt, n), 1, dt, n);
    }
    return out;
}

DecayEstimate gamma_from_survival(const SystemConfig& config, double tau, const VolterraSettings& settings) {
    if (!(tau > 0.0) || !std::isfinite(tau)) fail(ErrorCode::DomainError, "gamma_from_survival: tau must be finite and > 0");
    validate(config);
    validate(settings);
    VolterraSettings local = settings;
    const double dt_req = settings.dt > 0.0 ? settings.dt : default_time_step(config);
    const double steps = std::max(1.0, std::ceil(tau / dt_req - 1e-9));

    local.dt = tau / steps;
    local.t_max = tau;
    const AmplitudeSeries series = evolve_amplitude(config, local);

    auto rate = [&](cplx a) {
        const double p = std::norm(a);
        if (!(std::abs(a) >= 1e-300)) fail(ErrorCode::AmplitudeUnderflow, "gamma_from_survival: |alpha(tau)| underflows");
        return -std::log(p) / tau + 0.0; // no negative zero for p = 1
    };
    const double gamma = rate(series.alpha.back());
    double err = 0.0;
    if (!series.alpha_fine.empty()) {
        const double fine = rate(series.alpha_fine.back());
        err = fine != 0.0 ? std::abs(gamma - fine) / std::abs(fine) : std::abs(gamma - fine);
    }
    return make_estimate(Method::VolterraOracle, tau, gamma, free_decay_rate(config), err);
}

} // namespace zeno
