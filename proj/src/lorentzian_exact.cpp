// lorentzian_exact.cpp

#include "zeno/lorentzian_exact.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "zeno/error.hpp"

namespace zeno {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require_tau(double tau, const char* op) {
    if (!(tau > 0.0) || !std::isfinite(tau)) fail(ErrorCode::DomainError, std::string(op) + ": tau must be finite and > 0");
}

} // namespace

LorentzianRoots roots(const Lorentzian& spec, double delta) {
    validate(SpectrumModel{spec});
    const double om = spec.omega0 - delta;
    const cplx b{om, -spec.lam};
    cplx disc = b * b + 4.0 * kPi * spec.d0 * spec.lam;
    // at Ω = 0 the product leaves −0 in the imaginary part, which would put the
    // principal root on the wrong side of the branch cut
    disc.imag(disc.imag() + 0.0);
    const cplx root = std::sqrt(disc);

    LorentzianRoots r;
    r.omega_big = om;
    r.a_plus = 0.5 * (b + root);
    r.a_minus = 0.5 * (b - root);
    // the smaller root loses digits to cancellation; Vieta's product recovers it
    if (std::abs(r.a_plus) >= std::abs(r.a_minus)) {
        if (r.a_plus != 0.0) r.a_minus = -kPi * spec.d0 * spec.lam / r.a_plus;
    } else {
        r.a_plus = -kPi * spec.d0 * spec.lam / r.a_minus;
    }
    if (std::abs(r.a_plus - r.a_minus) < 1e-12 * (std::abs(r.a_plus) + std::abs(r.a_minus))) {
        fail(ErrorCode::DegenerateRoots, "roots: a+ and a- coincide (exceptional point)");
    }
    return r;
}

cplx amplitude(const LorentzianRoots& r, double t) {
    const cplx diff = r.a_plus - r.a_minus;
    if (std::abs(diff) < 1e-12 * (std::abs(r.a_plus) + std::abs(r.a_minus))) {
        fail(ErrorCode::DegenerateRoots, "amplitude: a+ and a- coincide (exceptional point)");
    }
    if (t == 0.0) return 1.0;
    const cplx i{0.0, 1.0};
    return (r.a_plus * std::exp(-i * r.a_minus * t) - r.a_minus * std::exp(-i * r.a_plus * t)) / diff;
}

DecayEstimate gamma_exact(const Lorentzian& spec, double delta, double tau) {
    require_tau(tau, "gamma_exact");
    const SystemConfig config{delta, spec};
    validate(config);
    const double mod = std::abs(amplitude(roots(spec, delta), tau));
    if (mod < 1e-300) fail(ErrorCode::AmplitudeUnderflow, "gamma_exact: |alpha(tau)| underflows");
    return make_estimate(Method::ExactLorentzian, tau, -2.0 / tau * std::log(mod), free_decay_rate(config));
}

DecayEstimate closed_form_lorentzian(const Lorentzian& spec, double delta, double tau) {
    require_tau(tau, "closed_form_lorentzian");
    const SystemConfig config{delta, spec};
    validate(config);
    const double om = spec.omega0 - delta;
    const double lam = spec.lam;
    const double norm = om * om + lam * lam;
    const double theta = std::atan2((om * om - lam * lam) / norm, 2.0 * om * lam / norm);
    const double lt = lam * tau;
    const double gamma0 = free_decay_rate(config);
    const double gamma_eff = gamma0 * (1.0 + (std::sin(theta) - std::sin(theta + om * tau) * std::exp(-lt)) / lt);
    return make_estimate(Method::ClosedFormLorentzian, tau, gamma_eff, gamma0);
}

double extended_zeno_time(const Lorentzian& spec) {
    validate(SpectrumModel{spec});
    return 1.0 / std::sqrt(kPi * spec.d0 * spec.lam);
}

} // namespace zeno
