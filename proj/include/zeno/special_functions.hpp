// special_functions.hpp: complete and upper incomplete gamma functions
//
// Built on elementary functions only so that golden values are reproducible across
// platform math libraries.

#pragma once

namespace zeno {

// Γ(α) for α > 0 (Lanczos, g = 7, nine terms). Throws Error(DomainError) for α ≤ 0.
double complete_gamma(double alpha);

// Γ(α, x) = ∫ₓ^∞ t^{α-1} e^{-t} dt for x ≥ 0.
// Series below the crossover x = α + 1, continued fraction above it. Negative
// non-integer orders are reached by the recurrence Γ(α,x) = (Γ(α+1,x) − x^α e^{-x})/α.
// Throws Error(PoleOrder) for α ∈ {0, -1, -2, ...}.
double upper_incomplete_gamma(double alpha, double x);

namespace detail {
// Both branches exposed so the crossover agreement can be tested; α > 0, x > 0.
double upper_gamma_series(double alpha, double x);
double upper_gamma_continued_fraction(double alpha, double x);
} // namespace detail

} // namespace zeno
