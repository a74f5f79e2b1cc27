// filter_quadrature.cpp

#include "zeno/filter_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zeno/criterion.hpp"
#include "zeno/error.hpp"
#include "zeno/quadrature.hpp"
#include "zeno/special_functions.hpp"

namespace zeno {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSmallLobesToStop = 3;

// sinc²(z), Taylor series near the removable singularity
double sinc_squared(double z) noexcept {
    if (std::abs(2.0 * z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 3.0 + 2.0 * z2 * z2 / 45.0;
    }
    const double s = std::sin(z) / z;
    return s * s;
}

void require_tau(double tau, const char* op) {
    if (!(tau > 0.0) || !std::isfinite(tau)) fail(ErrorCode::DomainError, std::string(op) + ": tau must be finite and > 0");
}

// Lower end of the region where G can be nonzero.
double support_lower(const SpectrumModel& spectrum) {
    if (const auto* t = std::get_if<Tabulated>(&spectrum)) return t->front();
    return 0.0;
}

// Integrates f over [a, b], splitting at any breakpoints inside.
template <class F>
quad::Result integrate_segment(F&& f, double a, double b, const std::vector<double>& breakpoints, double rel_tol) {
    std::vector<double> inner;
    const auto first = std::upper_bound(breakpoints.begin(), breakpoints.end(), a);
    for (auto it = first; it != breakpoints.end() && *it < b; ++it) inner.push_back(*it);
    return quad::piecewise(f, a, b, std::move(inner), rel_tol);
}

// (2/τ) ∫_a^b G(ω)/(ω − Δ)² dω, the mean-value replacement sin² → 1/2 of 2π G F.
quad::Result mean_value_integral(const SystemConfig& config, double tau, double a, double b,
                                 const std::vector<double>& breakpoints, double rel_tol) {
    if (!(b > a)) return {};
    const double d = config.delta;
    auto f = [&](double w) {
        const double x = w - d;
        return 2.0 / tau * evaluate(config.spectrum, w) / (x * x);
    };
    return integrate_segment(f, a, b, breakpoints, rel_tol);
}

} // namespace

void validate(const QuadratureSettings& settings) {
    if (!(settings.rel_tol > 0.0)) fail(ErrorCode::InvalidConfig, "quadrature rel_tol must be > 0");
    if (!(settings.abs_tol >= 0.0)) fail(ErrorCode::InvalidConfig, "quadrature abs_tol must be >= 0");
    if (settings.max_lobes < 1) fail(ErrorCode::InvalidConfig, "quadrature max_lobes must be >= 1");
}

double filter_value(double delta, double tau, double omega) noexcept {
    return tau / kTwoPi * sinc_squared(0.5 * (omega - delta) * tau);
}

bool practical_regime(double delta, double tau) noexcept {
    return tau >= kTwoPi / delta;
}

DecayEstimate gamma_ut(const SystemConfig& config, double tau, const QuadratureSettings& settings) {
    require_tau(tau, "gamma_ut");
    validate(config);
    validate(settings);

    const SpectrumModel& spectrum = config.spectrum;
    const double d = config.delta;
    const double width = kTwoPi / tau;
    const double gamma0 = free_decay_rate(config);
    const double lobe_tol = 0.1 * settings.rel_tol;

    const SupportHint hint = support_hint(spectrum);
    std::vector<double> breakpoints = hint.breakpoints;
    std::sort(breakpoints.begin(), breakpoints.end());
    const double lo_support = support_lower(spectrum);
    const bool bounded = std::isfinite(hint.upper);
    // lobes are summed at least this far out before the stopping rule may fire
    const double min_extent = bounded ? hint.upper : (breakpoints.empty() ? d : std::max(d, breakpoints.back()));

    // 2π G F
    auto integrand = [&](double w) { return tau * evaluate(spectrum, w) * sinc_squared(0.5 * (w - d) * tau); };

    double sum = 0.0;
    double err = 0.0;

    // below Δ: finitely many lobes down to ω = 0
    {
        double b = d;
        while (b > lo_support) {
            double a = std::max(lo_support, b - width);
            if (a - lo_support <= 1e-9 * width) a = lo_support;
            const quad::Result r = integrate_segment(integrand, a, b, breakpoints, lobe_tol);
            sum += r.value;
            err += r.error;
            b = a;
            if (a == lo_support) break;
        }
    }

    // above Δ: lobe by lobe until three consecutive lobes are negligible
    int small_run = 0;
    bool converged = false;
    double b = d;
    double last_lobe = 0.0;
    for (int k = 0; k < settings.max_lobes; ++k) {
        const double a = d + k * width;
        b = a + width;
        if (bounded && a >= hint.upper) {
            converged = true;
            b = a;
            break;
        }
        const quad::Result r = integrate_segment(integrand, a, b, breakpoints, lobe_tol);
        sum += r.value;
        err += r.error;
        last_lobe = r.value;

        const double x = b - d;
        const double envelope = evaluate(spectrum, b) / (x * x);
        const bool small = std::abs(r.value) <= settings.rel_tol * std::abs(sum) ||
                           envelope <= settings.abs_tol * gamma0;
        small_run = small ? small_run + 1 : 0;
        if (small_run >= kSmallLobesToStop && b >= min_extent) {
            converged = true;
            break;
        }
    }

    double tail = 0.0;
    double tail_err = 0.0;
    const double tail_end = bounded ? hint.upper : kInf;
    if (b < tail_end) {
        if (settings.tail_policy == TailPolicy::MeanValue) {
            const quad::Result r = mean_value_integral(config, tau, b, tail_end, breakpoints, lobe_tol);
            tail = r.value;
            // the sin² → 1/2 replacement is accurate to roughly one lobe width over the distance
            tail_err = r.error + std::abs(tail) * width / (b - d);
        } else if (!converged) {
            fail(ErrorCode::NonConverged, "gamma_ut: lobe sum did not converge within max_lobes = " +
                                              std::to_string(settings.max_lobes));
        } else {
            tail_err = kSmallLobesToStop * std::abs(last_lobe);
        }
    }

    const double gamma_eff = sum + tail;
    if (!std::isfinite(gamma_eff)) fail(ErrorCode::NonConverged, "gamma_ut: non-finite result");
    const double rel_err = gamma_eff > 0.0 ? (err + tail_err) / gamma_eff : 0.0;

    DecayEstimate e = make_estimate(Method::UtQuadrature, tau, gamma_eff, gamma0, rel_err);
    if (!practical_regime(d, tau)) e.warnings.push_back(EstimateWarning::PracticalRegime);
    return e;
}

double gamma1_main_lobe(const SystemConfig& config, double tau) {
    require_tau(tau, "gamma1_main_lobe");
    return 4.0 * kPi / (tau * tau) * second_derivative(config.spectrum, config.delta);
}

MinorLobes gamma1_minor_lobes(const SystemConfig& config, double tau, const QuadratureSettings& settings) {
    require_tau(tau, "gamma1_minor_lobes");
    validate(config);
    validate(settings);

    const double d = config.delta;
    const double width = kTwoPi / tau;
    const double g_delta = evaluate(config.spectrum, d);
    const SupportHint hint = support_hint(config.spectrum);
    std::vector<double> breakpoints = hint.breakpoints;
    std::sort(breakpoints.begin(), breakpoints.end());
    const double tol = 0.1 * settings.rel_tol;

    MinorLobes out;

    // (2/τ) ∫_{Δ+w}^∞ [G − G(Δ)]/(ω−Δ)² = (2/τ) ∫ G/(ω−Δ)² − G(Δ)/π
    const double upper_start = std::max(d + width, support_lower(config.spectrum));
    const quad::Result up = mean_value_integral(config, tau, upper_start, hint.upper, breakpoints, tol);
    if (!std::isfinite(up.value)) fail(ErrorCode::NonConverged, "gamma1_minor_lobes: upper tail diverged");
    out.upper = up.value - g_delta / kPi;

    const double lower_end = d - width;
    if (lower_end > 0.0) {
        // (2/τ) ∫_0^{Δ−w} [G − G(Δ)]/(ω−Δ)², the constant part done analytically
        const double lower_start = std::min(support_lower(config.spectrum), lower_end);
        const quad::Result dn = mean_value_integral(config, tau, lower_start, lower_end, breakpoints, tol);
        out.lower = dn.value - g_delta * (1.0 / kPi - 2.0 / (d * tau));
    } else {
        out.warnings.push_back(EstimateWarning::PracticalRegime);
    }
    return out;
}

DecayEstimate gamma_minor_lobe_corrected(const SystemConfig& config, double tau,
                                         const QuadratureSettings& settings, MinorLobeMode mode) {
    require_tau(tau, "gamma_minor_lobe_corrected");
    validate(config);

    const auto* power_law = std::get_if<PowerLaw>(&config.spectrum);
    const bool closed_form_applies = power_law != nullptr && power_law->s > 1.0;
    if (mode == MinorLobeMode::ClosedForm && !closed_form_applies) {
        fail(ErrorCode::ModelMismatch, "gamma_minor_lobe_corrected: closed form needs a power law with s > 1, got " +
                                           std::string(model_name(config.spectrum)));
    }

    const double gamma0 = free_decay_rate(config);
    DecayEstimate e;
    if (closed_form_applies && mode != MinorLobeMode::Numeric) {
        const double x = kTwoPi / (power_law->omega_c * tau);
        const double gamma_eff = gamma0 + 2.0 * power_law->a / tau * upper_incomplete_gamma(power_law->s - 1.0, x);
        e = make_estimate(Method::MinorLobeCorrected, tau, gamma_eff, gamma0);
    } else {
        const MinorLobes minor = gamma1_minor_lobes(config, tau, settings);
        const double gamma_eff = gamma0 + gamma1_main_lobe(config, tau) + minor.upper + minor.lower;
        e = make_estimate(Method::MinorLobeCorrected, tau, gamma_eff, gamma0);
        e.warnings.insert(e.warnings.end(), minor.warnings.begin(), minor.warnings.end());
    }

    if (classify(config).verdict == Verdict::Indeterminate) e.warnings.push_back(EstimateWarning::IndeterminateRegime);
    if (!practical_regime(config.delta, tau) &&
        std::find(e.warnings.begin(), e.warnings.end(), EstimateWarning::PracticalRegime) == e.warnings.end()) {
        e.warnings.push_back(EstimateWarning::PracticalRegime);
    }
    return e;
}

double main_lobe_fraction(double tau) {
    require_tau(tau, "main_lobe_fraction");
    const double half = kTwoPi / tau;
    // the filter is normalized to unit weight over the whole axis
    auto f = [&](double w) { return filter_value(0.0, tau, w); };
    return quad::piecewise(f, -half, half, {0.0}, 1e-14).value;
}

} // namespace zeno
