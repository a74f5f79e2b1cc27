// decay_estimate.cpp

#include "zeno/decay_estimate.hpp"

namespace zeno {

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::UtQuadrature: return "ut_quadrature";
        case Method::SecondDerivApprox: return "second_deriv_approx";
        case Method::ExactLorentzian: return "exact_lorentzian";
        case Method::ClosedFormLorentzian: return "closed_form_lorentzian";
        case Method::LinearZeno: return "linear_zeno";
        case Method::MinorLobeCorrected: return "minor_lobe_corrected";
        case Method::VolterraOracle: return "volterra_oracle";
    }
    return "unknown";
}

std::optional<Method> method_from_string(std::string_view name) noexcept {
    for (Method m : kAllMethods) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

std::string_view to_string(EstimateWarning warning) noexcept {
    switch (warning) {
        case EstimateWarning::PracticalRegime: return "PRACTICAL_REGIME";
        case EstimateWarning::Gamma0Zero: return "GAMMA0_ZERO";
        case EstimateWarning::IndeterminateRegime: return "INDETERMINATE_REGIME";
    }
    return "UNKNOWN";
}

DecayEstimate make_estimate(Method method, double tau, double gamma_eff, double gamma0, double err_estimate) {
    DecayEstimate e;
    e.tau = tau;
    e.gamma_eff = gamma_eff;
    e.gamma0 = gamma0;
    e.method = method;
    e.err_estimate = err_estimate;
    if (gamma0 > 0.0) {
        e.ratio = gamma_eff / gamma0;
    } else {
        e.warnings.push_back(EstimateWarning::Gamma0Zero);
    }
    return e;
}

} // namespace zeno
