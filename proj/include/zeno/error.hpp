// error.hpp: error codes shared by every module of the engine

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zeno {

enum class ErrorCode {
    DomainError,
    InvalidConfig,
    Divergence,
    NonConverged,
    ModelMismatch,
    DegenerateRoots,
    AmplitudeUnderflow,
    NoSignChange,
    PoleOrder,
    StepTooCoarse,
};

// Machine-readable name, e.g. "NON_CONVERGED".
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace zeno
