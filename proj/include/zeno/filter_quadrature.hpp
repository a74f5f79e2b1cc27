// filter_quadrature.hpp: measurement filter function and the lobe-aware decay-rate integral
//
// Repeated projective measurements at interval τ broaden the transition into the filter
//
//     F(ω, τ) = (τ / 2π) sinc²[(ω − Δ) τ / 2],
//
// and the measurement-modified rate is the overlap γ_eff(τ) = 2π ∫₀^∞ G(ω) F(ω, τ) dω.
// The integral is split at the zeros Δ ± 2πk/τ of F so that each lobe is a single smooth
// hump for the adaptive rule; far lobes are replaced by the mean value sin² → 1/2.

#pragma once

#include <vector>

#include "zeno/decay_estimate.hpp"
#include "zeno/spectra.hpp"

namespace zeno {

enum class TailPolicy { MeanValue, Truncate };

struct QuadratureSettings {
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    int max_lobes{10'000};
    TailPolicy tail_policy{TailPolicy::MeanValue};

    friend bool operator==(const QuadratureSettings&, const QuadratureSettings&) = default;
};

void validate(const QuadratureSettings& settings);

double filter_value(double delta, double tau, double omega) noexcept;

// τ ≥ 2π/Δ, the interval range where the main lobe stays inside ω > 0.
bool practical_regime(double delta, double tau) noexcept;

// γ_eff = 2π ∫₀^∞ G F dω. Throws Error(NonConverged) when the lobe sum does not settle
// within max_lobes under the Truncate policy, or an individual lobe fails to converge.
DecayEstimate gamma_ut(const SystemConfig& config, double tau, const QuadratureSettings& settings = {});

// Main-lobe Taylor term (4π/τ²) G''(Δ).
double gamma1_main_lobe(const SystemConfig& config, double tau);

struct MinorLobes {
    double upper{0.0}; // γ₁⁺, ω > Δ + 2π/τ
    double lower{0.0}; // γ₁⁻, 0 < ω < Δ − 2π/τ
    std::vector<EstimateWarning> warnings;
};

// Mean-value estimates of the minor-lobe parts of γ₁ = γ_eff − γ₀.
MinorLobes gamma1_minor_lobes(const SystemConfig& config, double tau, const QuadratureSettings& settings = {});

enum class MinorLobeMode {
    Auto,       // closed form for super-Ohmic power laws, numeric composition otherwise
    ClosedForm, // PowerLaw with s > 1 only
    Numeric,    // γ₀ + γ̃₁ + γ₁⁺ + γ₁⁻
};

// For a super-Ohmic power law the dominant minor-lobe tail has the closed form
// γ_eff ≈ γ₀ + (2A/τ) Γ(s − 1, 2π/(ω_c τ)), whose large-τ limit is
// γ_eff/γ₀ ≈ 1 + A Γ(s − 1)/(π G(Δ) τ).
// Throws Error(ModelMismatch) for ClosedForm on any other spectrum.
DecayEstimate gamma_minor_lobe_corrected(const SystemConfig& config, double tau,
                                         const QuadratureSettings& settings = {},
                                         MinorLobeMode mode = MinorLobeMode::Auto);

// Share of the filter's unit weight inside the main lobe [Δ − 2π/τ, Δ + 2π/τ] (≈ 0.9028).
double main_lobe_fraction(double tau);

} // namespace zeno
