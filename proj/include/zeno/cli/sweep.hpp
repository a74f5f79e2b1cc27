// sweep.hpp: τ sweeps across estimation methods and their CSV / JSON forms

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zeno/cli/config.hpp"
#include "zeno/error.hpp"

namespace zeno::cli {

struct MethodFailure {
    ErrorCode code{ErrorCode::NonConverged};
    std::string message;
};

struct MethodCell {
    Method method{Method::UtQuadrature};
    std::optional<DecayEstimate> estimate; // empty on failure
    std::optional<MethodFailure> failure;
};

struct SweepRow {
    double tau{0.0};
    double delta_tau{0.0};
    double gamma0{0.0};
    std::vector<MethodCell> cells; // one per requested method, in SweepSpec::methods order
};

struct SweepResult {
    std::vector<SweepRow> rows; // ascending tau
    json metadata;
};

// The system actually evaluated: Δ replaced by the Lamb-shifted Δ₁ when requested.
SystemConfig effective_config(const SweepSpec& spec);

// One method at one τ. Throws zeno::Error on failure.
DecayEstimate estimate(Method method, const SystemConfig& config, double tau, const SweepSpec& spec);

// Per-method failures land in the cells; only an invalid SweepSpec throws.
SweepResult run_sweep(const SweepSpec& spec);

// 17 significant digits in general format, no negative zero.
std::string format_number(double v);

void write_csv(const SweepResult& result, const SweepSpec& spec, std::ostream& out);

// Per-row failures as {row, tau, method, code, message} records.
json errors_json(const SweepResult& result);

// {"metadata": ..., "columns": [...], "rows": [[...], ...], "errors": [...]}
json result_json(const SweepResult& result, const SweepSpec& spec);

} // namespace zeno::cli
