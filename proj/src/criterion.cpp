// criterion.cpp

#include "zeno/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zeno/error.hpp"
#include "zeno/filter_quadrature.hpp"

namespace zeno {

namespace {

constexpr int kMaxBisections = 400;

[[noreturn]] void parameter_mismatch(SweptParameter parameter, const SpectrumModel& s) {
    fail(ErrorCode::ModelMismatch, std::string("parameter '") + std::string(to_string(parameter)) +
                                       "' does not exist on a " + model_name(s) + " spectrum");
}

} // namespace

std::string_view to_string(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::QZE: return "QZE";
        case Verdict::QAZE: return "QAZE";
        case Verdict::Indeterminate: return "INDETERMINATE";
    }
    return "UNKNOWN";
}

std::string_view to_string(ValidityWarning warning) noexcept {
    switch (warning) {
        case ValidityWarning::DeltaFarBelowCutoff: return "DELTA_FAR_BELOW_CUTOFF";
        case ValidityWarning::DeltaFarBelowCentroid: return "DELTA_FAR_BELOW_CENTROID";
        case ValidityWarning::G2NearZero: return "G2_NEAR_ZERO";
        case ValidityWarning::StrongCouplingSuspect: return "STRONG_COUPLING_SUSPECT";
    }
    return "UNKNOWN";
}

std::string_view to_string(Monotonicity m) noexcept {
    switch (m) {
        case Monotonicity::IncreasingToGamma0: return "INCREASING_TO_GAMMA0";
        case Monotonicity::DecreasingToGamma0: return "DECREASING_TO_GAMMA0";
        case Monotonicity::Flat: return "FLAT";
    }
    return "UNKNOWN";
}

bool ValidityReport::has(ValidityWarning w) const noexcept {
    return std::find(warnings.begin(), warnings.end(), w) != warnings.end();
}

double default_g2_tolerance(const SystemConfig& config) {
    const double d = config.delta;
    double eps = 1e-6 * evaluate(config.spectrum, d) / (d * d);
    if (const auto* p = std::get_if<PowerLaw>(&config.spectrum)) {
        eps += std::abs(second_derivative(config.spectrum, d) - power_law_second_derivative_large_cutoff(*p, d));
    }
    return eps;
}

ValidityReport validity_check(const SystemConfig& config, const ValidityThresholds& thresholds) {
    validate(config);
    ValidityReport report;
    const double d = config.delta;

    if (const auto wc = cutoff_frequency(config.spectrum)) {
        report.delta_over_cutoff = d / *wc;
        if (*report.delta_over_cutoff < thresholds.min_delta_over_cutoff) {
            report.warnings.push_back(ValidityWarning::DeltaFarBelowCutoff);
        }
    }

    // no centroid for a spectrum without weight
    if (spectral_weight(config.spectrum) > 0.0) {
        report.delta_over_centroid = d / centroid(config.spectrum);
        if (*report.delta_over_centroid < thresholds.min_delta_over_centroid) {
            report.warnings.push_back(ValidityWarning::DeltaFarBelowCentroid);
        }
    }

    if (std::abs(second_derivative(config.spectrum, d)) <= default_g2_tolerance(config)) {
        report.warnings.push_back(ValidityWarning::G2NearZero);
    }

    if (free_decay_rate(config) > thresholds.max_gamma0_over_delta * d) {
        report.warnings.push_back(ValidityWarning::StrongCouplingSuspect);
    }
    return report;
}

ZenoClassification classify(const SystemConfig& config, std::optional<double> g2_eps, const ValidityThresholds& thresholds) {
    validate(config);
    ZenoClassification c;
    c.g2 = second_derivative(config.spectrum, config.delta);
    c.g2_eps = g2_eps.value_or(default_g2_tolerance(config));
    c.gamma0 = free_decay_rate(config);
    if (c.g2 < -c.g2_eps) {
        c.verdict = Verdict::QZE;
    } else if (c.g2 > c.g2_eps) {
        c.verdict = Verdict::QAZE;
    } else {
        c.verdict = Verdict::Indeterminate;
    }
    c.validity = validity_check(config, thresholds);
    // keep the warning consistent with the tolerance actually applied
    std::erase(c.validity.warnings, ValidityWarning::G2NearZero);
    if (c.verdict == Verdict::Indeterminate) c.validity.warnings.push_back(ValidityWarning::G2NearZero);
    return c;
}

DecayEstimate gamma_approx(const SystemConfig& config, double tau) {
    validate(config);
    const double gamma0 = free_decay_rate(config);
    DecayEstimate e = make_estimate(Method::SecondDerivApprox, tau, gamma0 + gamma1_main_lobe(config, tau), gamma0);
    if (!practical_regime(config.delta, tau)) e.warnings.push_back(EstimateWarning::PracticalRegime);
    return e;
}

Monotonicity monotonicity_sign(const SystemConfig& config) {
    const double g2 = second_derivative(config.spectrum, config.delta);
    if (g2 < 0.0) return Monotonicity::IncreasingToGamma0;
    if (g2 > 0.0) return Monotonicity::DecreasingToGamma0;
    return Monotonicity::Flat;
}

// ---------------------------------------------------------------------------

std::string_view to_string(SweptParameter p) noexcept {
    switch (p) {
        case SweptParameter::Delta: return "delta";
        case SweptParameter::Omega0: return "omega0";
        case SweptParameter::Lam: return "lam";
        case SweptParameter::OmegaC: return "omega_c";
        case SweptParameter::S: return "s";
    }
    return "unknown";
}

std::optional<SweptParameter> swept_parameter_from_string(std::string_view name) noexcept {
    for (SweptParameter p : {SweptParameter::Delta, SweptParameter::Omega0, SweptParameter::Lam,
                             SweptParameter::OmegaC, SweptParameter::S}) {
        if (to_string(p) == name) return p;
    }
    return std::nullopt;
}

SpectrumFamily make_family(const SystemConfig& base, SweptParameter parameter) {
    const SpectrumModel& s = base.spectrum;
    auto mismatch = [&]() { parameter_mismatch(parameter, s); };
    switch (parameter) {
        case SweptParameter::Delta:
            return [base](double v) { SystemConfig c = base; c.delta = v; return c; };
        case SweptParameter::Omega0:
            if (!std::holds_alternative<Lorentzian>(s)) mismatch();
            return [base](double v) { SystemConfig c = base; std::get<Lorentzian>(c.spectrum).omega0 = v; return c; };
        case SweptParameter::Lam:
            if (!std::holds_alternative<Lorentzian>(s)) mismatch();
            return [base](double v) { SystemConfig c = base; std::get<Lorentzian>(c.spectrum).lam = v; return c; };
        case SweptParameter::OmegaC:
            if (std::holds_alternative<Hydrogenlike>(s)) {
                return [base](double v) { SystemConfig c = base; std::get<Hydrogenlike>(c.spectrum).omega_c = v; return c; };
            }
            if (std::holds_alternative<PowerLaw>(s)) {
                return [base](double v) { SystemConfig c = base; std::get<PowerLaw>(c.spectrum).omega_c = v; return c; };
            }
            parameter_mismatch(parameter, s);
        case SweptParameter::S:
            if (!std::holds_alternative<PowerLaw>(s)) mismatch();
            return [base](double v) { SystemConfig c = base; std::get<PowerLaw>(c.spectrum).s = v; return c; };
    }
    parameter_mismatch(parameter, s);
}

BoundaryResult boundary_find(const SpectrumFamily& family, Interval range, double rel_tol) {
    if (!(range.lo < range.hi)) fail(ErrorCode::InvalidConfig, "boundary_find: range must satisfy lo < hi");
    auto g2_at = [&](double v) {
        const SystemConfig c = family(v);
        validate(c);
        return second_derivative(c.spectrum, c.delta);
    };

    BoundaryResult r;
    r.g2_lo = g2_at(range.lo);
    r.g2_hi = g2_at(range.hi);
    if (r.g2_lo == 0.0) { r.parameter = range.lo; return r; }
    if (r.g2_hi == 0.0) { r.parameter = range.hi; return r; }
    if (std::signbit(r.g2_lo) == std::signbit(r.g2_hi)) {
        fail(ErrorCode::NoSignChange, "boundary_find: G''(delta) has the same sign at both ends of [" +
                                          std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]");
    }

    double lo = range.lo;
    double hi = range.hi;
    const bool lo_negative = std::signbit(r.g2_lo);
    double mid = 0.5 * (lo + hi);
    double g_mid = g2_at(mid);
    while (r.iterations < kMaxBisections) {
        ++r.iterations;
        if (g_mid == 0.0) break;
        if (std::signbit(g_mid) == lo_negative) lo = mid; else hi = mid;
        const double next = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi)) || next == lo || next == hi) {
            mid = next;
            g_mid = g2_at(mid);
            break;
        }
        mid = next;
        g_mid = g2_at(mid);
    }
    r.parameter = mid;
    r.g2 = g_mid;
    return r;
}

} // namespace zeno
