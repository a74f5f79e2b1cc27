// sweep.cpp

#include "zeno/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "zeno/lorentzian_exact.hpp"

namespace zeno::cli {

namespace {

json classification_json(const SystemConfig& config) {
    const ZenoClassification c = classify(config);
    json warnings = json::array();
    for (ValidityWarning w : c.validity.warnings) warnings.push_back(to_string(w));
    return {{"verdict", to_string(c.verdict)}, {"g2", c.g2}, {"g2_eps", c.g2_eps}, {"gamma0", c.gamma0}, {"warnings", warnings}};
}

SweepRow evaluate_row(const SweepSpec& spec, const SystemConfig& config, double tau) {
    SweepRow row;
    row.tau = tau;
    row.delta_tau = spec.config.delta * tau;
    row.gamma0 = free_decay_rate(config);
    for (Method m : spec.methods) {
        MethodCell cell;
        cell.method = m;
        try {
            cell.estimate = estimate(m, config, tau, spec);
        } catch (const Error& e) {
            cell.failure = MethodFailure{e.code(), e.what()};
        }
        row.cells.push_back(std::move(cell));
    }
    return row;
}

} // namespace

SystemConfig effective_config(const SweepSpec& spec) {
    SystemConfig config = spec.config;
    if (spec.apply_lamb_shift) config.delta = lamb_shift(spec.config);
    return config;
}

DecayEstimate estimate(Method method, const SystemConfig& config, double tau, const SweepSpec& spec) {
    switch (method) {
        case Method::UtQuadrature: return gamma_ut(config, tau, spec.quadrature);
        case Method::SecondDerivApprox: return gamma_approx(config, tau);
        case Method::ExactLorentzian:
            return gamma_exact(std::get<Lorentzian>(config.spectrum), config.delta, tau);
        case Method::ClosedFormLorentzian:
            return closed_form_lorentzian(std::get<Lorentzian>(config.spectrum), config.delta, tau);
        case Method::LinearZeno:
            return make_estimate(Method::LinearZeno, tau, linear_decay_rate(config.spectrum, tau), free_decay_rate(config));
        case Method::MinorLobeCorrected: return gamma_minor_lobe_corrected(config, tau, spec.quadrature);
        case Method::VolterraOracle: return gamma_from_survival(config, tau, spec.volterra.value_or(VolterraSettings{}));
    }
    fail(ErrorCode::InvalidConfig, "unknown method");
}

SweepResult run_sweep(const SweepSpec& spec) {
    validate(spec);
    const SystemConfig config = effective_config(spec);
    const std::vector<double> taus = tau_values(spec.tau_grid);

    SweepResult result;
    result.rows.resize(taus.size());
    unsigned workers = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : static_cast<unsigned>(spec.threads);
    workers = std::min<unsigned>(workers, static_cast<unsigned>(taus.size()));

    // each worker claims grid indices; rows are written in place so order is the grid's
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next++; i < taus.size(); i = next++) result.rows[i] = evaluate_row(spec, config, taus[i]);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    result.metadata = {
        {"tool", "zenocrit"},
        {"version", kToolVersion},
        {"spec", to_json(spec)},
        {"effective_delta", config.delta},
        {"classification", classification_json(config)},
    };
    return result;
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0; // folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(const SweepResult& result, const SweepSpec& spec, std::ostream& out) {
    out << "tau,delta_tau,gamma0";
    for (Method m : spec.methods) {
        const std::string n(to_string(m));
        out << ',' << n << "_gamma," << n << "_ratio," << n << "_err";
    }
    out << '\n';
    for (const SweepRow& row : result.rows) {
        out << format_number(row.tau) << ',' << format_number(row.delta_tau) << ',' << format_number(row.gamma0);
        for (const MethodCell& cell : row.cells) {
            if (!cell.estimate) {
                out << ",,,";
                continue;
            }
            const DecayEstimate& e = *cell.estimate;
            out << ',' << format_number(e.gamma_eff) << ',';
            if (e.ratio) out << format_number(*e.ratio);
            out << ',' << format_number(e.err_estimate);
        }
        out << '\n';
    }
}

json errors_json(const SweepResult& result) {
    json errors = json::array();
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        for (const MethodCell& cell : result.rows[i].cells) {
            if (!cell.failure) continue;
            errors.push_back({{"row", i},
                              {"tau", result.rows[i].tau},
                              {"method", to_string(cell.method)},
                              {"code", to_string(cell.failure->code)},
                              {"message", cell.failure->message}});
        }
    }
    return errors;
}

json result_json(const SweepResult& result, const SweepSpec& spec) {
    json columns = {"tau", "delta_tau", "gamma0"};
    for (Method m : spec.methods) {
        const std::string n(to_string(m));
        columns.push_back(n + "_gamma");
        columns.push_back(n + "_ratio");
        columns.push_back(n + "_err");
    }
    json rows = json::array();
    for (const SweepRow& row : result.rows) {
        json r = {row.tau, row.delta_tau, row.gamma0};
        for (const MethodCell& cell : row.cells) {
            if (cell.estimate) {
                r.push_back(cell.estimate->gamma_eff);
                r.push_back(cell.estimate->ratio ? json(*cell.estimate->ratio) : json(nullptr));
                r.push_back(cell.estimate->err_estimate);
            } else {
                r.insert(r.end(), {nullptr, nullptr, nullptr});
            }
        }
        rows.push_back(r);
    }
    return {{"metadata", result.metadata}, {"columns", columns}, {"rows", rows}, {"errors", errors_json(result)}};
}

} // namespace zeno::cli
