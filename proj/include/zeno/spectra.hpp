// spectra.hpp: spectral density models G(ω) and the scalar quantities derived from them
//
// All frequencies share one dimensionless reference unit (ħ = 1); rates carry the
// same unit and times its inverse.

#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace zeno {

struct Lorentzian {
    double d0{0.01};      // spectral height
    double omega0{10.0};  // spectral center
    double lam{1.0};      // halfwidth
};

struct Hydrogenlike {
    double eta{1e-3};     // dimensionless coupling
    double omega_c{4.0};  // cutoff
};

struct PowerLaw {
    double a{0.01};       // dimensionless coupling
    double s{1.0};        // bath exponent: <1 sub-Ohmic, =1 Ohmic, >1 super-Ohmic
    double omega_c{10.0}; // cutoff
};

// Natural cubic spline through strictly increasing (ω, g) samples; G = 0 outside the grid.
class Tabulated {
public:
    static Tabulated from_points(std::vector<std::pair<double, double>> points);

    const std::vector<double>& omega() const noexcept { return omega_; }
    const std::vector<double>& g() const noexcept { return g_; }

    double value(double w) const noexcept;
    double first_derivative(double w) const noexcept;
    double second_derivative(double w) const noexcept;

    double front() const noexcept { return omega_.front(); }
    double back() const noexcept { return omega_.back(); }

    friend bool operator==(const Tabulated& a, const Tabulated& b) {
        return a.omega_ == b.omega_ && a.g_ == b.g_;
    }

private:
    std::size_t interval(double w) const noexcept;

    std::vector<double> omega_;
    std::vector<double> g_;
    std::vector<double> m_; // spline second derivatives at the knots
};

inline bool operator==(const Lorentzian& a, const Lorentzian& b) {
    return a.d0 == b.d0 && a.omega0 == b.omega0 && a.lam == b.lam;
}
inline bool operator==(const Hydrogenlike& a, const Hydrogenlike& b) {
    return a.eta == b.eta && a.omega_c == b.omega_c;
}
inline bool operator==(const PowerLaw& a, const PowerLaw& b) {
    return a.a == b.a && a.s == b.s && a.omega_c == b.omega_c;
}

using SpectrumModel = std::variant<Lorentzian, Hydrogenlike, PowerLaw, Tabulated>;

struct SystemConfig {
    double delta{1.0}; // transition frequency Δ
    SpectrumModel spectrum{Lorentzian{}};
};

// Throws Error(InvalidConfig) when a model parameter violates its invariant.
void validate(const SpectrumModel& spectrum);
void validate(const SystemConfig& config);

const char* model_name(const SpectrumModel& spectrum) noexcept;

// G(ω) for ω ≥ 0; throws Error(DomainError) for ω < 0.
double evaluate(const SpectrumModel& spectrum, double omega);

// Analytic G'(ω) and G''(ω) for ω > 0 (spline derivatives for Tabulated).
double first_derivative(const SpectrumModel& spectrum, double omega);
double second_derivative(const SpectrumModel& spectrum, double omega);

// Large-cutoff form s(s-1) A ωc^{1-s} ω^{s-2}, kept as a diagnostic next to the exact G''.
double power_law_second_derivative_large_cutoff(const PowerLaw& p, double omega);

// Lorentzian formula continued to ω < 0 (the (-∞, ∞) support used by the residue solution).
double lorentzian_extended(const Lorentzian& l, double omega) noexcept;

std::optional<double> cutoff_frequency(const SpectrumModel& spectrum) noexcept;

// Multiplies G by c > 0 through the model's coupling parameter.
SpectrumModel scale_coupling(const SpectrumModel& spectrum, double c);

// γ₀ = 2π G(Δ).
double free_decay_rate(const SystemConfig& config);

// ∫₀^∞ G(ω) dω. Throws Error(Divergence) for a table that does not decay to zero.
double spectral_weight(const SpectrumModel& spectrum);

// τ_Z = (∫₀^∞ G dω)^{-1/2}.
double zeno_time(const SpectrumModel& spectrum);

// τ / τ_Z², the short-interval linear reference rate.
double linear_decay_rate(const SpectrumModel& spectrum, double tau);

// Δ₁ = Δ + ∫₀^∞ G(ω)/(ω+Δ) dω, the level spacing including the counter-rotating shift.
double lamb_shift(const SystemConfig& config);

// Center of gravity ∫ωG/∫G. The Lorentzian's first moment diverges on [0, ∞), so its
// centroid is taken as ω₀, the center of the symmetric extended profile.
double centroid(const SpectrumModel& spectrum);

// Frequencies where G has structure worth splitting quadrature at, plus the end of
// the support (+∞ for the closed-form models).
struct SupportHint {
    std::vector<double> breakpoints;
    double upper;
};
SupportHint support_hint(const SpectrumModel& spectrum);

} // namespace zeno
