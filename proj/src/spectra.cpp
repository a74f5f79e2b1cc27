// spectra.cpp

#include "zeno/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zeno/error.hpp"
#include "zeno/quadrature.hpp"
#include "zeno/special_functions.hpp"

namespace zeno {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntegralRelTol = 1e-10;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        fail(ErrorCode::InvalidConfig, std::string(what) + " must be finite and > 0");
    }
}

// Integral of f over the spectrum's support with the model's breakpoints.
template <class F>
double integrate_over_support(const SpectrumModel& spectrum, F&& f) {
    const SupportHint hint = support_hint(spectrum);
    const double lo = std::holds_alternative<Tabulated>(spectrum) ? std::get<Tabulated>(spectrum).front() : 0.0;
    const quad::Result r = quad::piecewise(f, lo, hint.upper, hint.breakpoints, kIntegralRelTol);
    if (!std::isfinite(r.value)) fail(ErrorCode::Divergence, "integral over the spectral support diverged");
    return r.value;
}

void require_decaying_table(const SpectrumModel& spectrum, const char* op) {
    if (const auto* t = std::get_if<Tabulated>(&spectrum); t && t->g().back() > 0.0) {
        fail(ErrorCode::Divergence,
             std::string(op) + ": tabulated spectrum does not decay to zero at its last point");
    }
}

} // namespace

// --------------------------- Tabulated ---------------------------------------

Tabulated Tabulated::from_points(std::vector<std::pair<double, double>> points) {
    if (points.size() < 4) fail(ErrorCode::InvalidConfig, "tabulated spectrum needs at least 4 points");
    Tabulated t;
    t.omega_.reserve(points.size());
    t.g_.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [w, g] = points[i];
        if (!std::isfinite(w) || !std::isfinite(g)) fail(ErrorCode::InvalidConfig, "tabulated spectrum has non-finite entries");
        if (w < 0.0) fail(ErrorCode::InvalidConfig, "tabulated omega must be >= 0");
        if (g < 0.0) fail(ErrorCode::InvalidConfig, "tabulated g must be >= 0");
        if (i > 0 && !(w > points[i - 1].first)) fail(ErrorCode::InvalidConfig, "tabulated omega must be strictly increasing");
        t.omega_.push_back(w);
        t.g_.push_back(g);
    }

    // natural spline: m_0 = m_{n-1} = 0, tridiagonal solve for the interior
    const std::size_t n = t.omega_.size();
    t.m_.assign(n, 0.0);
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t.omega_[i] - t.omega_[i - 1];
        const double h1 = t.omega_[i + 1] - t.omega_[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((t.g_[i + 1] - t.g_[i]) / h1 - (t.g_[i] - t.g_[i - 1]) / h0);
        if (i > 1) {
            const double lower = h0;
            const double factor = lower / diag[i - 1];
            diag[i] -= factor * upper[i - 1];
            rhs[i] -= factor * rhs[i - 1];
        }
    }
    for (std::size_t i = n - 2; i > 0; --i) {
        t.m_[i] = (rhs[i] - upper[i] * t.m_[i + 1]) / diag[i];
    }
    return t;
}

std::size_t Tabulated::interval(double w) const noexcept {
    const auto it = std::upper_bound(omega_.begin(), omega_.end(), w);
    const auto idx = static_cast<std::size_t>(std::distance(omega_.begin(), it));
    return std::clamp<std::size_t>(idx, 1, omega_.size() - 1) - 1;
}

double Tabulated::value(double w) const noexcept {
    if (w < omega_.front() || w > omega_.back()) return 0.0;
    const std::size_t i = interval(w);
    const double h = omega_[i + 1] - omega_[i];
    const double a = (omega_[i + 1] - w) / h;
    const double b = (w - omega_[i]) / h;
    const double y = a * g_[i] + b * g_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    return std::max(0.0, y);
}

double Tabulated::first_derivative(double w) const noexcept {
    if (w < omega_.front() || w > omega_.back()) return 0.0;
    const std::size_t i = interval(w);
    const double h = omega_[i + 1] - omega_[i];
    const double a = (omega_[i + 1] - w) / h;
    const double b = (w - omega_[i]) / h;
    return (g_[i + 1] - g_[i]) / h - (3.0 * a * a - 1.0) * h * m_[i] / 6.0 + (3.0 * b * b - 1.0) * h * m_[i + 1] / 6.0;
}

double Tabulated::second_derivative(double w) const noexcept {
    if (w < omega_.front() || w > omega_.back()) return 0.0;
    const std::size_t i = interval(w);
    const double h = omega_[i + 1] - omega_[i];
    const double a = (omega_[i + 1] - w) / h;
    return a * m_[i] + (1.0 - a) * m_[i + 1];
}

// --------------------------- validation --------------------------------------

void validate(const SpectrumModel& spectrum) {
    std::visit(overloaded{
                   [](const Lorentzian& l) {
                       require_positive(l.d0, "lorentzian.d0");
                       require_positive(l.omega0, "lorentzian.omega0");
                       require_positive(l.lam, "lorentzian.lam");
                   },
                   [](const Hydrogenlike& h) {
                       require_positive(h.eta, "hydrogenlike.eta");
                       require_positive(h.omega_c, "hydrogenlike.omega_c");
                   },
                   [](const PowerLaw& p) {
                       require_positive(p.a, "power_law.a");
                       require_positive(p.s, "power_law.s");
                       require_positive(p.omega_c, "power_law.omega_c");
                   },
                   [](const Tabulated&) {}, // checked on construction
               },
               spectrum);
}

void validate(const SystemConfig& config) {
    require_positive(config.delta, "delta");
    validate(config.spectrum);
}

const char* model_name(const SpectrumModel& spectrum) noexcept {
    return std::visit(overloaded{
                          [](const Lorentzian&) { return "lorentzian"; },
                          [](const Hydrogenlike&) { return "hydrogenlike"; },
                          [](const PowerLaw&) { return "power_law"; },
                          [](const Tabulated&) { return "tabulated"; },
                      },
                      spectrum);
}

// --------------------------- pointwise ---------------------------------------

double lorentzian_extended(const Lorentzian& l, double omega) noexcept {
    const double x = omega - l.omega0;
    return l.d0 * l.lam * l.lam / (x * x + l.lam * l.lam);
}

double evaluate(const SpectrumModel& spectrum, double omega) {
    if (!(omega >= 0.0)) fail(ErrorCode::DomainError, "evaluate: omega must be >= 0");
    return std::visit(overloaded{
                          [&](const Lorentzian& l) { return lorentzian_extended(l, omega); },
                          [&](const Hydrogenlike& h) {
                              const double u = omega / h.omega_c;
                              const double q = 1.0 + u * u;
                              return h.eta * omega / (q * q * q * q);
                          },
                          [&](const PowerLaw& p) {
                              const double u = omega / p.omega_c;
                              return p.a * p.omega_c * std::pow(u, p.s) * std::exp(-u);
                          },
                          [&](const Tabulated& t) { return t.value(omega); },
                      },
                      spectrum);
}

double first_derivative(const SpectrumModel& spectrum, double omega) {
    if (!(omega > 0.0)) fail(ErrorCode::DomainError, "first_derivative: omega must be > 0");
    return std::visit(overloaded{
                          [&](const Lorentzian& l) {
                              const double x = omega - l.omega0;
                              const double q = x * x + l.lam * l.lam;
                              return -2.0 * l.d0 * l.lam * l.lam * x / (q * q);
                          },
                          [&](const Hydrogenlike& h) {
                              const double u = omega / h.omega_c;
                              const double q = 1.0 + u * u;
                              return h.eta * (1.0 - 7.0 * u * u) / std::pow(q, 5);
                          },
                          [&](const PowerLaw& p) {
                              const double u = omega / p.omega_c;
                              const double g = p.a * p.omega_c * std::pow(u, p.s) * std::exp(-u);
                              return g * (p.s / omega - 1.0 / p.omega_c);
                          },
                          [&](const Tabulated& t) { return t.first_derivative(omega); },
                      },
                      spectrum);
}

double second_derivative(const SpectrumModel& spectrum, double omega) {
    if (!(omega > 0.0)) fail(ErrorCode::DomainError, "second_derivative: omega must be > 0");
    return std::visit(overloaded{
                          [&](const Lorentzian& l) {
                              const double x = omega - l.omega0;
                              const double l2 = l.lam * l.lam;
                              const double q = x * x + l2;
                              return 2.0 * l.d0 * l2 * (3.0 * x * x - l2) / (q * q * q);
                          },
                          [&](const Hydrogenlike& h) {
                              const double u = omega / h.omega_c;
                              const double q = 1.0 + u * u;
                              return 8.0 * h.eta * u * (7.0 * u * u - 3.0) / (h.omega_c * std::pow(q, 6));
                          },
                          [&](const PowerLaw& p) {
                              const double u = omega / p.omega_c;
                              const double envelope = p.a * p.omega_c * std::pow(u, p.s) * std::exp(-u) / (omega * omega);
                              return envelope * (p.s * (p.s - 1.0) - 2.0 * p.s * u + u * u);
                          },
                          [&](const Tabulated& t) { return t.second_derivative(omega); },
                      },
                      spectrum);
}

double power_law_second_derivative_large_cutoff(const PowerLaw& p, double omega) {
    if (!(omega > 0.0)) fail(ErrorCode::DomainError, "second_derivative: omega must be > 0");
    return p.s * (p.s - 1.0) * p.a * std::pow(p.omega_c, 1.0 - p.s) * std::pow(omega, p.s - 2.0);
}

std::optional<double> cutoff_frequency(const SpectrumModel& spectrum) noexcept {
    if (const auto* h = std::get_if<Hydrogenlike>(&spectrum)) return h->omega_c;
    if (const auto* p = std::get_if<PowerLaw>(&spectrum)) return p->omega_c;
    return std::nullopt;
}

SpectrumModel scale_coupling(const SpectrumModel& spectrum, double c) {
    require_positive(c, "coupling scale");
    return std::visit(overloaded{
                          [&](Lorentzian l) -> SpectrumModel { l.d0 *= c; return l; },
                          [&](Hydrogenlike h) -> SpectrumModel { h.eta *= c; return h; },
                          [&](PowerLaw p) -> SpectrumModel { p.a *= c; return p; },
                          [&](const Tabulated& t) -> SpectrumModel {
                              std::vector<std::pair<double, double>> pts;
                              for (std::size_t i = 0; i < t.omega().size(); ++i) pts.emplace_back(t.omega()[i], c * t.g()[i]);
                              return Tabulated::from_points(std::move(pts));
                          },
                      },
                      spectrum);
}

// --------------------------- derived scalars ---------------------------------

double free_decay_rate(const SystemConfig& config) {
    return 2.0 * kPi * evaluate(config.spectrum, config.delta);
}

SupportHint support_hint(const SpectrumModel& spectrum) {
    return std::visit(overloaded{
                          [](const Lorentzian& l) {
                              SupportHint h{{}, kInf};
                              for (double k : {-40.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 40.0}) {
                                  const double w = l.omega0 + k * l.lam;
                                  if (w > 0.0) h.breakpoints.push_back(w);
                              }
                              return h;
                          },
                          [](const Hydrogenlike& hl) {
                              SupportHint h{{}, kInf};
                              for (double k : {0.25, 0.5, 1.0, 2.0, 4.0, 10.0}) h.breakpoints.push_back(k * hl.omega_c);
                              return h;
                          },
                          [](const PowerLaw& p) {
                              SupportHint h{{}, kInf};
                              for (double k : {1e-3, 0.1, 1.0, p.s, p.s + 10.0, p.s + 40.0}) h.breakpoints.push_back(k * p.omega_c);
                              return h;
                          },
                          [](const Tabulated& t) { return SupportHint{t.omega(), t.back()}; },
                      },
                      spectrum);
}

double spectral_weight(const SpectrumModel& spectrum) {
    require_decaying_table(spectrum, "spectral_weight");
    return std::visit(overloaded{
                          [](const Lorentzian& l) {
                              return l.d0 * l.lam * (0.5 * kPi + std::atan(l.omega0 / l.lam));
                          },
                          [](const Hydrogenlike& h) { return h.eta * h.omega_c * h.omega_c / 6.0; },
                          [](const PowerLaw& p) { return p.a * p.omega_c * p.omega_c * complete_gamma(p.s + 1.0); },
                          [&](const Tabulated&) {
                              return integrate_over_support(spectrum, [&](double w) { return evaluate(spectrum, w); });
                          },
                      },
                      spectrum);
}

double zeno_time(const SpectrumModel& spectrum) {
    const double weight = spectral_weight(spectrum);
    if (weight <= 0.0) return kInf;
    return 1.0 / std::sqrt(weight);
}

double linear_decay_rate(const SpectrumModel& spectrum, double tau) {
    if (!(tau > 0.0)) fail(ErrorCode::DomainError, "linear_decay_rate: tau must be > 0");
    const double tz = zeno_time(spectrum);
    return tau / (tz * tz);
}

double lamb_shift(const SystemConfig& config) {
    require_decaying_table(config.spectrum, "lamb_shift");
    const double d = config.delta;
    const double shift = integrate_over_support(config.spectrum, [&](double w) { return evaluate(config.spectrum, w) / (w + d); });
    return d + shift;
}

double centroid(const SpectrumModel& spectrum) {
    if (const auto* l = std::get_if<Lorentzian>(&spectrum)) return l->omega0;
    const double mass = integrate_over_support(spectrum, [&](double w) { return evaluate(spectrum, w); });
    if (!(mass > 0.0)) fail(ErrorCode::DomainError, "centroid: spectrum has zero weight");
    const double moment = integrate_over_support(spectrum, [&](double w) { return w * evaluate(spectrum, w); });
    return moment / mass;
}

} // namespace zeno
