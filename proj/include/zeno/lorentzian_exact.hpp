// lorentzian_exact.hpp: residue solution of the Lorentzian model
//
// With G extended to the whole real axis the memory kernel is a single exponential and
// the amplitude equation closes on two poles a±, roots of a² − (Ω − iΛ)a − πD₀Λ = 0
// with Ω = ω₀ − Δ.

#pragma once

#include <complex>

#include "zeno/decay_estimate.hpp"
#include "zeno/spectra.hpp"

namespace zeno {

struct LorentzianRoots {
    std::complex<double> a_plus;
    std::complex<double> a_minus;
    double omega_big{0.0}; // Ω = ω₀ − Δ
};

// Principal square root of the discriminant. Throws Error(DegenerateRoots) at the
// exceptional point |a₊ − a₋| < 1e-12 (|a₊| + |a₋|).
LorentzianRoots roots(const Lorentzian& spec, double delta);

// α(t) = (a₊ e^{−ia₋t} − a₋ e^{−ia₊t}) / (a₊ − a₋)
std::complex<double> amplitude(const LorentzianRoots& r, double t);

// γ(τ) = −(2/τ) ln|α(τ)|. Throws Error(AmplitudeUnderflow) if |α(τ)| < 1e-300.
DecayEstimate gamma_exact(const Lorentzian& spec, double delta, double tau);

// γ₀[1 + (sinθ − sin(θ + Ωτ) e^{−Λτ}) / (Λτ)],
// sinθ = (Ω² − Λ²)/(Ω² + Λ²), cosθ = 2ΩΛ/(Ω² + Λ²).
DecayEstimate closed_form_lorentzian(const Lorentzian& spec, double delta, double tau);

// (πD₀Λ)^{-1/2}: the Zeno time of the extended profile, the one the residue
// solution obeys at short times. zeno_time() integrates over ω ≥ 0 only.
double extended_zeno_time(const Lorentzian& spec);

} // namespace zeno
