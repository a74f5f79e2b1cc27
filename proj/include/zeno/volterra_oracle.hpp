// volterra_oracle.hpp: direct time-stepping of the exact amplitude equation
//
//     α̇(t) = −∫₀ᵗ e^{iΔ(t−t')} Φ(t−t') α(t') dt',   Φ(t) = ∫ G(ω) e^{−iωt} dω
//
// solved by the composite trapezoid rule with the diagonal term taken implicitly.

#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "zeno/decay_estimate.hpp"
#include "zeno/spectra.hpp"

namespace zeno {

enum class KernelMode { AnalyticLorentzian, NumericFourier };

std::string_view to_string(KernelMode mode) noexcept;
std::optional<KernelMode> kernel_mode_from_string(std::string_view name) noexcept;

struct KernelSpec {
    SpectrumModel spectrum;
    KernelMode mode{KernelMode::NumericFourier};
    // NumericFourier over the whole real axis instead of ω ≥ 0. Lorentzian only; this
    // is the profile the analytic kernel transforms.
    bool full_line{false};
};

// AnalyticLorentzian for Lorentzian spectra, NumericFourier otherwise.
KernelMode default_kernel_mode(const SpectrumModel& spectrum) noexcept;

// Throws Error(ModelMismatch) for an analytic or full-line kernel on a non-Lorentzian.
void validate(const KernelSpec& spec);

// Φ(t) for t ≥ 0. NumericFourier splits the integral into periods of e^{−iωt} and closes
// it with a two-term asymptotic tail. Throws Error(NonConverged) if that fails.
std::complex<double> kernel(const KernelSpec& spec, double t);

struct VolterraSettings {
    double dt{0.0};    // 0 picks default_time_step
    double t_max{0.0};
    bool richardson_check{true};
    std::optional<KernelMode> kernel_mode; // empty: default_kernel_mode
    bool full_line{false};

    friend bool operator==(const VolterraSettings&, const VolterraSettings&) = default;
};

// min(1/Δ, 1/ω_char)/20 with ω_char the spectral width (Λ, ω_c, or the table span).
double default_time_step(const SystemConfig& config);

void validate(const VolterraSettings& settings);

struct AmplitudeSeries {
    double dt{0.0};
    std::vector<std::complex<double>> alpha;       // α(n·dt), n = 0..N
    std::vector<std::complex<double>> alpha_fine;  // the dt/2 run at the same times, if checked
    double richardson_diff{0.0};                   // max |alpha − alpha_fine|
};

// Steps to the first grid point at or beyond t_max. With richardson_check, throws
// Error(StepTooCoarse) when the dt and dt/2 solutions differ by more than 1e-3.
AmplitudeSeries evolve_amplitude(const SystemConfig& config, const VolterraSettings& settings);

// γ(τ) = −(1/τ) ln|α(τ)|², with the step shrunk so τ falls on the grid and the
// evolution stopped at τ (t_max is ignored). err_estimate is the relative change of γ
// between dt and dt/2 when the check runs. Throws Error(AmplitudeUnderflow).
DecayEstimate gamma_from_survival(const SystemConfig& config, double tau, const VolterraSettings& settings);

} // namespace zeno
