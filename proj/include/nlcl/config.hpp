#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nlcl/reference.hpp"
#include "nlcl/stepper.hpp"
#include "nlcl/study.hpp"

namespace nlcl {

/// Raised for malformed, incomplete or inconsistent configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a run or study needs, as written in the config file. Optional
/// fields fall back to problem-dependent defaults when the config is resolved.
///
/// File format: `[section]` headers followed by `key = value` lines; `#` and
/// `;` start comments.
///
///   [problem]  name (required), u_left, u_right, x_jump, speed, value
///   [kernel]   profile = uniform, delta (required)
///   [flux]     family = godunov, local, speed, lambda = 1
///   [grid]     dx (required), x_min, x_max, boundary
///   [time]     T, mesh_ratio, safety = 0.9, snapshots = 9
///   [study]    regime = fixed_delta, levels = 4, coupling = 2, window_min, window_max
///   [output]   dir = out
struct RunConfig {
    std::string problem;
    std::optional<double> u_left;
    std::optional<double> u_right;
    double x_jump = 0.0;
    double speed = 1.0;
    double value = 1.0;

    std::string profile = "uniform";
    double delta = 0.0;

    std::string family = "godunov";
    std::optional<std::string> local;
    double lambda = 1.0;

    double dx = 0.0;
    std::optional<double> x_min;
    std::optional<double> x_max;
    std::optional<std::string> boundary;

    std::optional<double> final_time;
    std::optional<double> mesh_ratio;
    double safety = 0.9;
    int snapshots = 9;

    std::string regime = "fixed_delta";
    int levels = 4;
    double coupling = 2.0;
    std::optional<double> window_min;
    std::optional<double> window_max;

    std::string output_dir = "out";

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config_text(std::string_view text);
RunConfig parse_config(const std::filesystem::path& path);
std::string write_config(const RunConfig& config);

/// Checks keys, ranges and the CFL bound on the problem's data box. Throws
/// ConfigError naming the offending key or the admissible mesh ratio.
void validate(const RunConfig& config);

/// Fully resolved objects built from a validated config.
struct ResolvedConfig {
    Problem problem;
    TwoPointFlux flux;
    Kernel kernel;
    GridGeometry geometry;
    SchemeConfig scheme;
    double window_min;
    double window_max;
};

ResolvedConfig resolve(const RunConfig& config);

/// Study settings for the `study` subcommand.
StudySettings study_settings(const RunConfig& config);

}  // namespace nlcl
