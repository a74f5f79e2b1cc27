// app.cpp

#include "zeno/cli/app.hpp"

#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "zeno/cli/sweep.hpp"
#include "zeno/lorentzian_exact.hpp"

namespace zeno::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
    std::string config;
    std::string out;
    std::string format; // empty: csv for tables, json for records
    std::string methods;
    bool apply_lamb_shift{false};
    std::optional<double> rel_tol;
    std::optional<double> dt;
    std::optional<int> threads;
    // boundary
    std::string parameter;
    std::optional<double> lo;
    std::optional<double> hi;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "JSON config file")->required();
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--apply-lamb-shift", o.apply_lamb_shift, "replace delta by the Lamb-shifted level spacing");
}

SweepSpec load(const Options& o) {
    SweepSpec spec = load_spec(o.config);
    if (o.apply_lamb_shift) spec.apply_lamb_shift = true;
    if (!o.methods.empty()) spec.methods = parse_method_list(o.methods, spec.config.spectrum);
    if (o.rel_tol) spec.quadrature.rel_tol = *o.rel_tol;
    if (o.dt) {
        if (!spec.volterra) spec.volterra = VolterraSettings{};
        spec.volterra->dt = *o.dt;
    }
    if (o.threads) spec.threads = *o.threads;
    return spec;
}

// Writes to --out when given, otherwise to out.
void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) fail(ErrorCode::InvalidConfig, "cannot write output file '" + o.out + "'");
    f << text;
}

std::string record_text(const ojson& record, const std::string& format) {
    if (format == "json") return record.dump(2) + "\n";
    std::string header;
    std::string values;
    for (const auto& [key, v] : record.items()) {
        if (!header.empty()) {
            header += ',';
            values += ',';
        }
        header += key;
        if (v.is_number()) values += format_number(v.get<double>());
        else if (v.is_string()) values += v.get<std::string>();
        else if (v.is_array()) {
            std::string joined;
            for (const auto& x : v) joined += (joined.empty() ? "" : ";") + x.get<std::string>();
            values += joined;
        } else if (v.is_boolean()) values += v.get<bool>() ? "true" : "false";
    }
    return header + "\n" + values + "\n";
}

int cmd_sweep(const Options& o, SweepSpec spec, std::ostream& out, std::ostream& err) {
    const SweepResult result = run_sweep(spec);
    if (o.format == "json") {
        emit(o, out, result_json(result, spec).dump(2) + "\n");
        return 0;
    }
    std::ostringstream csv;
    write_csv(result, spec, csv);
    emit(o, out, csv.str());
    const json errors = errors_json(result);
    if (!o.out.empty()) {
        std::ofstream meta(o.out + ".meta.json", std::ios::binary);
        meta << json{{"metadata", result.metadata}, {"errors", errors}}.dump(2) << "\n";
    } else if (!errors.empty()) {
        err << json{{"errors", errors}}.dump() << "\n";
    }
    return 0;
}

int cmd_classify(const Options& o, const SweepSpec& spec, std::ostream& out) {
    const SystemConfig config = effective_config(spec);
    const ZenoClassification c = classify(config);
    ojson r;
    r["verdict"] = to_string(c.verdict);
    r["g2"] = c.g2;
    r["g2_eps"] = c.g2_eps;
    r["gamma0"] = c.gamma0;
    r["delta"] = config.delta;
    r["monotonicity"] = to_string(monotonicity_sign(config));
    r["delta_over_cutoff"] = c.validity.delta_over_cutoff ? ojson(*c.validity.delta_over_cutoff) : ojson(nullptr);
    r["delta_over_centroid"] = c.validity.delta_over_centroid ? ojson(*c.validity.delta_over_centroid) : ojson(nullptr);
    ojson warnings = ojson::array();
    for (ValidityWarning w : c.validity.warnings) warnings.push_back(to_string(w));
    r["warnings"] = warnings;
    emit(o, out, record_text(r, o.format));
    switch (c.verdict) {
        case Verdict::QZE: return 10;
        case Verdict::QAZE: return 11;
        case Verdict::Indeterminate: return 12;
    }
    return 12;
}

int cmd_boundary(const Options& o, SweepSpec spec, std::ostream& out) {
    BoundarySpec b = spec.boundary.value_or(BoundarySpec{});
    if (!o.parameter.empty()) {
        const auto p = swept_parameter_from_string(o.parameter);
        if (!p) fail(ErrorCode::InvalidConfig, "--parameter must be one of delta, omega0, lam, omega_c, s");
        b.parameter = *p;
    } else if (!spec.boundary) {
        fail(ErrorCode::InvalidConfig, "boundary needs a \"boundary\" config section or --parameter/--lo/--hi");
    }
    if (o.lo) b.range.lo = *o.lo;
    if (o.hi) b.range.hi = *o.hi;

    const SystemConfig base = effective_config(spec);
    const SpectrumFamily family = make_family(base, b.parameter);
    const BoundaryResult res = boundary_find(family, b.range, b.rel_tol);
    const SystemConfig at_root = family(res.parameter);

    ojson r;
    r["parameter"] = to_string(b.parameter);
    r["root"] = res.parameter;
    r["root_over_delta"] = res.parameter / base.delta;
    if (const auto* l = std::get_if<Lorentzian>(&at_root.spectrum)) r["detuning"] = l->omega0 - at_root.delta;
    r["g2"] = res.g2;
    r["g2_lo"] = res.g2_lo;
    r["g2_hi"] = res.g2_hi;
    r["iterations"] = res.iterations;
    emit(o, out, record_text(r, o.format));
    return 0;
}

int cmd_zeno_time(const Options& o, const SweepSpec& spec, std::ostream& out) {
    const SpectrumModel& s = spec.config.spectrum;
    ojson r;
    r["spectral_weight"] = spectral_weight(s);
    r["zeno_time"] = zeno_time(s);
    r["kernel0"] = kernel(KernelSpec{s, KernelMode::NumericFourier}, 0.0).real();
    if (const auto* l = std::get_if<Lorentzian>(&s)) {
        r["extended_zeno_time"] = extended_zeno_time(*l);
        r["extended_spectral_weight"] = std::numbers::pi * l->d0 * l->lam;
    }
    emit(o, out, record_text(r, o.format));
    return 0;
}

void report(std::ostream& err, std::string_view code, const std::string& message) {
    err << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

} // namespace

int exit_code(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidConfig:
        case ErrorCode::DomainError:
        case ErrorCode::ModelMismatch: return 2;
        default: return 3;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zeno / anti-Zeno decay-rate engine", "zenocrit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Options o;
    auto* sweep = app.add_subcommand("sweep", "effective decay rate over a tau grid");
    auto* classify_cmd = app.add_subcommand("classify", "QZE / QAZE verdict (exit 10 / 11 / 12)");
    auto* boundary = app.add_subcommand("boundary", "parameter value where G''(delta) changes sign");
    auto* oracle = app.add_subcommand("oracle", "Volterra survival-probability rates over a tau grid");
    auto* zeno = app.add_subcommand("zeno-time", "Zeno time and spectral weight");

    // each subcommand owns the options so they may follow the subcommand name
    for (CLI::App* cmd : {sweep, oracle}) {
        add_common(cmd, o);
        cmd->add_option("--threads", o.threads, "worker threads (0: hardware)");
        cmd->add_option("--dt", o.dt, "Volterra time step");
    }
    sweep->add_option("--methods", o.methods, "comma-separated methods, or all");
    sweep->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
    for (CLI::App* cmd : {classify_cmd, boundary, zeno}) add_common(cmd, o);
    boundary->add_option("--parameter", o.parameter, "delta, omega0, lam, omega_c or s");
    boundary->add_option("--lo", o.lo, "lower end of the search range");
    boundary->add_option("--hi", o.hi, "upper end of the search range");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        report(err, "USAGE", e.what());
        return 2;
    }

    const bool table = sweep->parsed() || oracle->parsed();
    if (o.format.empty()) o.format = table ? "csv" : "json";

    try {
        SweepSpec spec = load(o);
        if (sweep->parsed()) return cmd_sweep(o, spec, out, err);
        if (oracle->parsed()) {
            spec.methods = {Method::VolterraOracle};
            return cmd_sweep(o, spec, out, err);
        }
        if (classify_cmd->parsed()) return cmd_classify(o, spec, out);
        if (boundary->parsed()) return cmd_boundary(o, spec, out);
        if (zeno->parsed()) return cmd_zeno_time(o, spec, out);
    } catch (const Error& e) {
        report(err, to_string(e.code()), e.what());
        return exit_code(e.code());
    } catch (const std::exception& e) {
        report(err, "INTERNAL", e.what());
        return 1;
    }
    return 1;
}

} // namespace zeno::cli
