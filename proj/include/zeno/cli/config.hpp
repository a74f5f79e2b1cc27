// config.hpp: JSON run configuration for the command-line tool

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "zeno/criterion.hpp"
#include "zeno/decay_estimate.hpp"
#include "zeno/filter_quadrature.hpp"
#include "zeno/spectra.hpp"
#include "zeno/volterra_oracle.hpp"

namespace zeno::cli {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

enum class Spacing { Log, Linear };

struct GridRange {
    double tau_min{0.0};
    double tau_max{0.0};
    int n{0};
    Spacing spacing{Spacing::Log};

    friend bool operator==(const GridRange&, const GridRange&) = default;
};

using TauGrid = std::variant<GridRange, std::vector<double>>;

struct BoundarySpec {
    SweptParameter parameter{SweptParameter::Delta};
    Interval range;
    double rel_tol{1e-10};
};

struct SweepSpec {
    SystemConfig config;
    TauGrid tau_grid{GridRange{}};
    std::vector<Method> methods; // enum order, no duplicates
    QuadratureSettings quadrature;
    std::optional<VolterraSettings> volterra;
    bool apply_lamb_shift{false};
    int threads{1};
    std::optional<BoundarySpec> boundary;
};

bool operator==(const BoundarySpec& a, const BoundarySpec& b);
bool operator==(const SweepSpec& a, const SweepSpec& b);

// Methods that apply to a spectrum when none are requested. The Volterra oracle is
// opt-in because it costs O(N²) per grid point.
std::vector<Method> default_methods(const SpectrumModel& spectrum);

// "all", or a comma list of method names.
std::vector<Method> parse_method_list(const std::string& list, const SpectrumModel& spectrum);

json to_json(const SpectrumModel& spectrum);
SpectrumModel spectrum_from_json(const json& j);

json to_json(const SweepSpec& spec);

// Throws Error(InvalidConfig) on schema violations. The sweep section may be absent
// when the command does not need a τ grid.
SweepSpec spec_from_json(const json& j);
SweepSpec load_spec(const std::string& path);

void validate(const SweepSpec& spec);

// Grid values in ascending order.
std::vector<double> tau_values(const TauGrid& grid);

} // namespace zeno::cli
