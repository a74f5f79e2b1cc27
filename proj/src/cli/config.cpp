// config.cpp

#include "zeno/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "zeno/error.hpp"

namespace zeno::cli {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::InvalidConfig, msg); }

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) bad(where + " must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            bad("unknown key '" + key + "' in " + where);
        }
    }
}

double number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) bad(where + "." + key + " is required");
    const json& v = j.at(key);
    if (!v.is_number()) bad(where + "." + key + " must be a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
    return j.contains(key) ? number(j, key, where) : fallback;
}

bool boolean_or(const json& j, const char* key, bool fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) bad(where + "." + key + " must be true or false");
    return j.at(key).get<bool>();
}

int integer(const json& j, const char* key, const std::string& where) {
    const double v = number(j, key, where);
    if (v != std::floor(v) || std::abs(v) > 1e9) bad(where + "." + key + " must be an integer");
    return static_cast<int>(v);
}

std::vector<double> number_list(const json& j, const char* key, const std::string& where) {
    const json& v = j.at(key);
    if (!v.is_array() || v.empty()) bad(where + "." + key + " must be a non-empty array of numbers");
    std::vector<double> out;
    for (const json& x : v) {
        if (!x.is_number()) bad(where + "." + key + " must contain numbers only");
        out.push_back(x.get<double>());
    }
    return out;
}

std::string_view to_string(Spacing s) { return s == Spacing::Log ? "log" : "linear"; }

Spacing spacing_from_json(const json& j, const std::string& where) {
    if (!j.contains("spacing")) return Spacing::Log;
    const std::string s = j.at("spacing").is_string() ? j.at("spacing").get<std::string>() : "";
    if (s == "log") return Spacing::Log;
    if (s == "linear") return Spacing::Linear;
    bad(where + ".spacing must be \"log\" or \"linear\"");
}

std::string_view to_string(TailPolicy p) { return p == TailPolicy::MeanValue ? "mean_value" : "truncate"; }

TauGrid grid_from_json(const json& j, double delta) {
    const std::string where = "sweep";
    check_keys(j, {"taus", "delta_taus", "tau_min", "tau_max", "delta_tau_min", "delta_tau_max", "n", "spacing"}, where);
    const bool list = j.contains("taus") || j.contains("delta_taus");
    const bool range = j.contains("tau_min") || j.contains("tau_max") || j.contains("delta_tau_min") || j.contains("delta_tau_max");
    if (list == range) bad("sweep needs exactly one of: taus, delta_taus, a tau_min/tau_max range, a delta_tau_min/delta_tau_max range");

    if (list) {
        if (j.contains("taus") && j.contains("delta_taus")) bad("sweep: give taus or delta_taus, not both");
        if (j.contains("n") || j.contains("spacing")) bad("sweep: n and spacing apply to ranges only");
        std::vector<double> taus = j.contains("taus") ? number_list(j, "taus", where) : number_list(j, "delta_taus", where);
        if (j.contains("delta_taus")) for (double& t : taus) t /= delta;
        std::sort(taus.begin(), taus.end());
        return taus;
    }

    GridRange g;
    const bool scaled = j.contains("delta_tau_min") || j.contains("delta_tau_max");
    if (scaled && (j.contains("tau_min") || j.contains("tau_max"))) bad("sweep: mix of tau and delta_tau range keys");
    if (scaled) {
        g.tau_min = number(j, "delta_tau_min", where) / delta;
        g.tau_max = number(j, "delta_tau_max", where) / delta;
    } else {
        g.tau_min = number(j, "tau_min", where);
        g.tau_max = number(j, "tau_max", where);
    }
    g.n = integer(j, "n", where);
    g.spacing = spacing_from_json(j, where);
    return g;
}

json grid_to_json(const TauGrid& grid) {
    if (const auto* g = std::get_if<GridRange>(&grid)) {
        return {{"tau_min", g->tau_min}, {"tau_max", g->tau_max}, {"n", g->n}, {"spacing", to_string(g->spacing)}};
    }
    return {{"taus", std::get<std::vector<double>>(grid)}};
}

QuadratureSettings quadrature_from_json(const json& j) {
    const std::string where = "settings.quadrature";
    check_keys(j, {"rel_tol", "abs_tol", "max_lobes", "tail_policy"}, where);
    QuadratureSettings q;
    q.rel_tol = number_or(j, "rel_tol", q.rel_tol, where);
    q.abs_tol = number_or(j, "abs_tol", q.abs_tol, where);
    if (j.contains("max_lobes")) q.max_lobes = integer(j, "max_lobes", where);
    if (j.contains("tail_policy")) {
        const std::string p = j.at("tail_policy").is_string() ? j.at("tail_policy").get<std::string>() : "";
        if (p == "mean_value") q.tail_policy = TailPolicy::MeanValue;
        else if (p == "truncate") q.tail_policy = TailPolicy::Truncate;
        else bad(where + ".tail_policy must be \"mean_value\" or \"truncate\"");
    }
    return q;
}

VolterraSettings volterra_from_json(const json& j) {
    const std::string where = "settings.volterra";
    check_keys(j, {"dt", "t_max", "richardson_check", "kernel_mode", "full_line"}, where);
    VolterraSettings v;
    v.dt = number_or(j, "dt", v.dt, where);
    v.t_max = number_or(j, "t_max", v.t_max, where);
    v.richardson_check = boolean_or(j, "richardson_check", v.richardson_check, where);
    v.full_line = boolean_or(j, "full_line", v.full_line, where);
    if (j.contains("kernel_mode")) {
        const auto m = kernel_mode_from_string(j.at("kernel_mode").is_string() ? j.at("kernel_mode").get<std::string>() : "");
        if (!m) bad(where + ".kernel_mode must be \"analytic_lorentzian\" or \"numeric_fourier\"");
        v.kernel_mode = *m;
    }
    return v;
}

json volterra_to_json(const VolterraSettings& v) {
    json j{{"dt", v.dt}, {"t_max", v.t_max}, {"richardson_check", v.richardson_check}, {"full_line", v.full_line}};
    if (v.kernel_mode) j["kernel_mode"] = to_string(*v.kernel_mode);
    return j;
}

BoundarySpec boundary_from_json(const json& j) {
    const std::string where = "boundary";
    check_keys(j, {"parameter", "lo", "hi", "rel_tol"}, where);
    BoundarySpec b;
    if (!j.contains("parameter") || !j.at("parameter").is_string()) bad("boundary.parameter is required");
    const auto p = swept_parameter_from_string(j.at("parameter").get<std::string>());
    if (!p) bad("boundary.parameter must be one of delta, omega0, lam, omega_c, s");
    b.parameter = *p;
    b.range.lo = number(j, "lo", where);
    b.range.hi = number(j, "hi", where);
    b.rel_tol = number_or(j, "rel_tol", b.rel_tol, where);
    return b;
}

bool is_lorentzian_only(Method m) {
    return m == Method::ExactLorentzian || m == Method::ClosedFormLorentzian;
}

} // namespace

bool operator==(const BoundarySpec& a, const BoundarySpec& b) {
    return a.parameter == b.parameter && a.range.lo == b.range.lo && a.range.hi == b.range.hi && a.rel_tol == b.rel_tol;
}

bool operator==(const SweepSpec& a, const SweepSpec& b) {
    return a.config.delta == b.config.delta && a.config.spectrum == b.config.spectrum && a.tau_grid == b.tau_grid &&
           a.methods == b.methods && a.quadrature == b.quadrature && a.volterra == b.volterra &&
           a.apply_lamb_shift == b.apply_lamb_shift && a.threads == b.threads && a.boundary == b.boundary;
}

std::vector<Method> default_methods(const SpectrumModel& spectrum) {
    std::vector<Method> out;
    const bool lorentzian = std::holds_alternative<Lorentzian>(spectrum);
    for (Method m : kAllMethods) {
        if (m == Method::VolterraOracle) continue;
        if (is_lorentzian_only(m) && !lorentzian) continue;
        out.push_back(m);
    }
    return out;
}

std::vector<Method> parse_method_list(const std::string& list, const SpectrumModel& spectrum) {
    if (list == "all") {
        std::vector<Method> out = default_methods(spectrum);
        out.push_back(Method::VolterraOracle);
        return out;
    }
    std::vector<Method> out;
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ',')) {
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        const auto m = method_from_string(name);
        if (!m) bad("unknown method '" + name + "'");
        out.push_back(*m);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

json to_json(const SpectrumModel& spectrum) {
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Lorentzian>) {
                return {{"type", "lorentzian"}, {"d0", m.d0}, {"omega0", m.omega0}, {"lam", m.lam}};
            } else if constexpr (std::is_same_v<T, Hydrogenlike>) {
                return {{"type", "hydrogenlike"}, {"eta", m.eta}, {"omega_c", m.omega_c}};
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                return {{"type", "power_law"}, {"a", m.a}, {"s", m.s}, {"omega_c", m.omega_c}};
            } else {
                json points = json::array();
                for (std::size_t i = 0; i < m.omega().size(); ++i) points.push_back({m.omega()[i], m.g()[i]});
                return {{"type", "tabulated"}, {"points", points}};
            }
        },
        spectrum);
}

SpectrumModel spectrum_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) bad("spectrum.type is required");
    const std::string type = j.at("type").get<std::string>();
    const std::string where = "spectrum";
    SpectrumModel s;
    if (type == "lorentzian") {
        check_keys(j, {"type", "d0", "omega0", "lam"}, where);
        s = Lorentzian{number(j, "d0", where), number(j, "omega0", where), number(j, "lam", where)};
    } else if (type == "hydrogenlike") {
        check_keys(j, {"type", "eta", "omega_c"}, where);
        s = Hydrogenlike{number(j, "eta", where), number(j, "omega_c", where)};
    } else if (type == "power_law") {
        check_keys(j, {"type", "a", "s", "omega_c"}, where);
        s = PowerLaw{number(j, "a", where), number(j, "s", where), number(j, "omega_c", where)};
    } else if (type == "tabulated") {
        check_keys(j, {"type", "points"}, where);
        if (!j.contains("points") || !j.at("points").is_array()) bad("spectrum.points must be an array of [omega, g] pairs");
        std::vector<std::pair<double, double>> pts;
        for (const json& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                bad("spectrum.points entries must be [omega, g] number pairs");
            }
            pts.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        s = Tabulated::from_points(std::move(pts));
    } else {
        bad("spectrum.type must be one of lorentzian, hydrogenlike, power_law, tabulated; got '" + type + "'");
    }
    validate(s);
    return s;
}

json to_json(const SweepSpec& spec) {
    json j;
    j["spectrum"] = to_json(spec.config.spectrum);
    j["delta"] = spec.config.delta;
    j["sweep"] = grid_to_json(spec.tau_grid);
    json methods = json::array();
    for (Method m : spec.methods) methods.push_back(to_string(m));
    j["methods"] = methods;
    json settings;
    settings["quadrature"] = {{"rel_tol", spec.quadrature.rel_tol},
                              {"abs_tol", spec.quadrature.abs_tol},
                              {"max_lobes", spec.quadrature.max_lobes},
                              {"tail_policy", to_string(spec.quadrature.tail_policy)}};
    if (spec.volterra) settings["volterra"] = volterra_to_json(*spec.volterra);
    settings["apply_lamb_shift"] = spec.apply_lamb_shift;
    settings["threads"] = spec.threads;
    j["settings"] = settings;
    if (spec.boundary) {
        j["boundary"] = {{"parameter", to_string(spec.boundary->parameter)},
                         {"lo", spec.boundary->range.lo},
                         {"hi", spec.boundary->range.hi},
                         {"rel_tol", spec.boundary->rel_tol}};
    }
    return j;
}

SweepSpec spec_from_json(const json& j) {
    try {
        check_keys(j, {"spectrum", "delta", "sweep", "methods", "settings", "boundary"}, "config");
        SweepSpec spec;
        if (!j.contains("spectrum")) bad("config.spectrum is required");
        spec.config.spectrum = spectrum_from_json(j.at("spectrum"));
        spec.config.delta = number(j, "delta", "config");
        validate(spec.config);

        if (j.contains("sweep")) spec.tau_grid = grid_from_json(j.at("sweep"), spec.config.delta);

        if (j.contains("methods")) {
            const json& m = j.at("methods");
            if (m.is_string()) {
                spec.methods = parse_method_list(m.get<std::string>(), spec.config.spectrum);
            } else if (m.is_array()) {
                std::string joined;
                for (const json& x : m) {
                    if (!x.is_string()) bad("methods must be strings");
                    joined += (joined.empty() ? "" : ",") + x.get<std::string>();
                }
                spec.methods = parse_method_list(joined, spec.config.spectrum);
            } else {
                bad("methods must be \"all\" or an array of method names");
            }
        } else {
            spec.methods = default_methods(spec.config.spectrum);
        }

        if (j.contains("settings")) {
            const json& s = j.at("settings");
            check_keys(s, {"quadrature", "volterra", "apply_lamb_shift", "threads"}, "settings");
            if (s.contains("quadrature")) spec.quadrature = quadrature_from_json(s.at("quadrature"));
            if (s.contains("volterra")) spec.volterra = volterra_from_json(s.at("volterra"));
            spec.apply_lamb_shift = boolean_or(s, "apply_lamb_shift", false, "settings");
            if (s.contains("threads")) spec.threads = integer(s, "threads", "settings");
        }
        if (j.contains("boundary")) spec.boundary = boundary_from_json(j.at("boundary"));
        return spec;
    } catch (const json::exception& e) {
        bad(std::string("malformed config: ") + e.what());
    }
}

SweepSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        bad("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return spec_from_json(j);
}

void validate(const SweepSpec& spec) {
    validate(spec.config);
    validate(spec.quadrature);
    if (spec.volterra) validate(*spec.volterra);
    if (spec.methods.empty()) bad("at least one method is required");
    if (!std::is_sorted(spec.methods.begin(), spec.methods.end()) ||
        std::adjacent_find(spec.methods.begin(), spec.methods.end()) != spec.methods.end()) {
        bad("methods must be unique and in canonical order");
    }
    if (!std::holds_alternative<Lorentzian>(spec.config.spectrum)) {
        for (Method m : spec.methods) {
            if (is_lorentzian_only(m)) {
                bad(std::string("method ") + std::string(to_string(m)) + " needs a lorentzian spectrum, got " +
                    model_name(spec.config.spectrum));
            }
        }
    }
    if (spec.threads < 0) bad("settings.threads must be >= 0");
    if (const auto* g = std::get_if<GridRange>(&spec.tau_grid)) {
        if (!(g->tau_min > 0.0) || !std::isfinite(g->tau_max)) bad("sweep: tau_min must be > 0 and tau_max finite");
        if (g->n < 2) bad("sweep: n must be >= 2");
        if (!(g->tau_max > g->tau_min)) bad("sweep: tau_max must exceed tau_min");
    } else {
        for (double t : std::get<std::vector<double>>(spec.tau_grid)) {
            if (!(t > 0.0) || !std::isfinite(t)) bad("sweep: every tau must be finite and > 0");
        }
    }
}

std::vector<double> tau_values(const TauGrid& grid) {
    if (const auto* list = std::get_if<std::vector<double>>(&grid)) return *list;
    const auto& g = std::get<GridRange>(grid);
    std::vector<double> out(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const double f = static_cast<double>(i) / (g.n - 1);
        out[i] = g.spacing == Spacing::Log ? g.tau_min * std::pow(g.tau_max / g.tau_min, f)
                                           : g.tau_min + f * (g.tau_max - g.tau_min);
    }
    out.front() = g.tau_min;
    out.back() = g.tau_max;
    return out;
}

} // namespace zeno::cli
