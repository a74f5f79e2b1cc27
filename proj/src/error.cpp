// error.cpp

#include "zeno/error.hpp"

namespace zeno {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DomainError: return "DOMAIN_ERROR";
        case ErrorCode::InvalidConfig: return "INVALID_CONFIG";
        case ErrorCode::Divergence: return "DIVERGENCE";
        case ErrorCode::NonConverged: return "NON_CONVERGED";
        case ErrorCode::ModelMismatch: return "MODEL_MISMATCH";
        case ErrorCode::DegenerateRoots: return "DEGENERATE_ROOTS";
        case ErrorCode::AmplitudeUnderflow: return "AMPLITUDE_UNDERFLOW";
        case ErrorCode::NoSignChange: return "NO_SIGN_CHANGE";
        case ErrorCode::PoleOrder: return "POLE_ORDER";
        case ErrorCode::StepTooCoarse: return "STEP_TOO_COARSE";
    }
    return "UNKNOWN";
}

} // namespace zeno
