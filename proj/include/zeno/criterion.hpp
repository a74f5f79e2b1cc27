// criterion.hpp: Zeno / anti-Zeno classification from the curvature of G at Δ
//
// Keeping only the main lobe of the filter and expanding G about Δ gives
// γ_eff(τ) ≈ 2πG(Δ) + (4π/τ²) G''(Δ): a concave spectrum (G'' < 0) suppresses decay
// under frequent measurement (QZE), a convex one (G'' > 0) accelerates it (QAZE).

#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "zeno/decay_estimate.hpp"
#include "zeno/spectra.hpp"

namespace zeno {

enum class Verdict { QZE, QAZE, Indeterminate };

enum class ValidityWarning {
    DeltaFarBelowCutoff,
    DeltaFarBelowCentroid,
    G2NearZero,
    StrongCouplingSuspect,
};

std::string_view to_string(Verdict verdict) noexcept;
std::string_view to_string(ValidityWarning warning) noexcept;

struct ValidityThresholds {
    double min_delta_over_cutoff{1.0 / 12.0};
    double min_delta_over_centroid{0.1};
    double max_gamma0_over_delta{0.1};
};

struct ValidityReport {
    std::optional<double> delta_over_cutoff;
    std::optional<double> delta_over_centroid;
    std::vector<ValidityWarning> warnings;

    bool has(ValidityWarning w) const noexcept;
};

struct ZenoClassification {
    Verdict verdict{Verdict::Indeterminate};
    double g2{0.0};     // G''(Δ)
    double g2_eps{0.0}; // degeneracy tolerance that was applied
    double gamma0{0.0};
    ValidityReport validity;
};

// |G''(Δ)| below this is treated as degenerate: 1e-6 G(Δ)/Δ², widened for power laws
// by the cutoff-induced part of G'' (the gap between the exact curvature and its
// large-cutoff form s(s−1)Aω_c^{1−s}Δ^{s−2}).
double default_g2_tolerance(const SystemConfig& config);

ValidityReport validity_check(const SystemConfig& config, const ValidityThresholds& thresholds = {});

// Never throws on a degenerate G''; uses default_g2_tolerance when g2_eps is empty.
ZenoClassification classify(const SystemConfig& config, std::optional<double> g2_eps = std::nullopt,
                            const ValidityThresholds& thresholds = {});

// γ̃_eff = 2πG(Δ) + (4π/τ²)G''(Δ). Asymptotic in 1/τ, so it may go negative for small τ.
DecayEstimate gamma_approx(const SystemConfig& config, double tau);

enum class Monotonicity { IncreasingToGamma0, DecreasingToGamma0, Flat };

std::string_view to_string(Monotonicity m) noexcept;

// Direction of approach to γ₀ as τ → ∞, read off dγ̃_eff/dτ = −8πG''(Δ)/τ³.
Monotonicity monotonicity_sign(const SystemConfig& config);

// ---------------------------------------------------------------------------
// QZE/QAZE boundary search

enum class SweptParameter { Delta, Omega0, Lam, OmegaC, S };

std::string_view to_string(SweptParameter p) noexcept;
std::optional<SweptParameter> swept_parameter_from_string(std::string_view name) noexcept;

using SpectrumFamily = std::function<SystemConfig(double)>;

// Family that overwrites one parameter of base; throws Error(ModelMismatch) when the
// parameter does not exist on the base spectrum.
SpectrumFamily make_family(const SystemConfig& base, SweptParameter parameter);

struct Interval {
    double lo{0.0};
    double hi{0.0};
};

struct BoundaryResult {
    double parameter{0.0};
    double g2{0.0};    // G''(Δ) at the returned parameter
    double g2_lo{0.0}; // at the range endpoints
    double g2_hi{0.0};
    int iterations{0};
};

// Bisection on G''(Δ) over the swept parameter. Throws Error(NoSignChange) when both
// endpoints have the same sign. Several roots in range are not detected.
BoundaryResult boundary_find(const SpectrumFamily& family, Interval range, double rel_tol = 1e-10);

} // namespace zeno
