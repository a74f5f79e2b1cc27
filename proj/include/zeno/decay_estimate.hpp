// decay_estimate.hpp: one effective-rate result, shared by every estimation route

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace zeno {

// Declaration order is the column order of sweep output.
enum class Method {
    UtQuadrature,
    SecondDerivApprox,
    ExactLorentzian,
    ClosedFormLorentzian,
    LinearZeno,
    MinorLobeCorrected,
    VolterraOracle,
};

inline constexpr std::array<Method, 7> kAllMethods = {
    Method::UtQuadrature,       Method::SecondDerivApprox, Method::ExactLorentzian,
    Method::ClosedFormLorentzian, Method::LinearZeno,      Method::MinorLobeCorrected,
    Method::VolterraOracle,
};

enum class EstimateWarning {
    PracticalRegime,     // τ < 2π/Δ
    Gamma0Zero,          // ratio undefined
    IndeterminateRegime, // criterion degenerate, asymptotic correction unreliable
};

// "ut_quadrature", "second_deriv_approx", ...
std::string_view to_string(Method method) noexcept;
std::optional<Method> method_from_string(std::string_view name) noexcept;
std::string_view to_string(EstimateWarning warning) noexcept;

struct DecayEstimate {
    double tau{0.0};
    double gamma_eff{0.0};
    double gamma0{0.0};
    std::optional<double> ratio; // γ_eff/γ₀, empty when γ₀ = 0
    Method method{Method::UtQuadrature};
    double err_estimate{0.0};    // relative
    std::vector<EstimateWarning> warnings;
};

// Fills ratio (or the Gamma0Zero warning) from gamma_eff and gamma0.
DecayEstimate make_estimate(Method method, double tau, double gamma_eff, double gamma0, double err_estimate = 0.0);

} // namespace zeno
