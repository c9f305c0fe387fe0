#include "nlcl/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace nlcl {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text) {
    const std::string buf(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + buf + "'");
    }
    return v;
}

int to_int(std::string_view key, std::string_view text) {
    const double v = to_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + std::string(text) + "'");
    }
    return static_cast<int>(v);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Field {
    std::string section;
    std::string key;
    bool required;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::optional<std::string>(const RunConfig&)> get;
};

template <class T>
Field number(std::string section, std::string key, T RunConfig::*member, bool required = false) {
    const std::string name = section + "." + key;
    return {section, key, required,
            [=](RunConfig& c, std::string_view v) {
                if constexpr (std::is_same_v<T, int>) c.*member = to_int(name, v);
                else c.*member = to_double(name, v);
            },
            [=](const RunConfig& c) -> std::optional<std::string> {
                if constexpr (std::is_same_v<T, int>) return std::to_string(c.*member);
                else return format_double(c.*member);
            }};
}

Field optional_number(std::string section, std::string key, std::optional<double> RunConfig::*member) {
    const std::string name = section + "." + key;
    return {section, key, false,
            [=](RunConfig& c, std::string_view v) { c.*member = to_double(name, v); },
            [=](const RunConfig& c) -> std::optional<std::string> {
                if (!(c.*member)) return std::nullopt;
                return format_double(*(c.*member));
            }};
}

Field text(std::string section, std::string key, std::string RunConfig::*member, bool required = false) {
    return {section, key, required, [=](RunConfig& c, std::string_view v) { c.*member = std::string(v); },
            [=](const RunConfig& c) -> std::optional<std::string> { return c.*member; }};
}

Field optional_text(std::string section, std::string key, std::optional<std::string> RunConfig::*member) {
    return {section, key, false, [=](RunConfig& c, std::string_view v) { c.*member = std::string(v); },
            [=](const RunConfig& c) { return c.*member; }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        text("problem", "name", &RunConfig::problem, true),
        optional_number("problem", "u_left", &RunConfig::u_left),
        optional_number("problem", "u_right", &RunConfig::u_right),
        number("problem", "x_jump", &RunConfig::x_jump),
        number("problem", "speed", &RunConfig::speed),
        number("problem", "value", &RunConfig::value),
        text("kernel", "profile", &RunConfig::profile),
        number("kernel", "delta", &RunConfig::delta, true),
        text("flux", "family", &RunConfig::family),
        optional_text("flux", "local", &RunConfig::local),
        number("flux", "lambda", &RunConfig::lambda),
        number("grid", "dx", &RunConfig::dx, true),
        optional_number("grid", "x_min", &RunConfig::x_min),
        optional_number("grid", "x_max", &RunConfig::x_max),
        optional_text("grid", "boundary", &RunConfig::boundary),
        optional_number("time", "T", &RunConfig::final_time),
        optional_number("time", "mesh_ratio", &RunConfig::mesh_ratio),
        number("time", "safety", &RunConfig::safety),
        number("time", "snapshots", &RunConfig::snapshots),
        text("study", "regime", &RunConfig::regime),
        number("study", "levels", &RunConfig::levels),
        number("study", "coupling", &RunConfig::coupling),
        optional_number("study", "window_min", &RunConfig::window_min),
        optional_number("study", "window_max", &RunConfig::window_max),
        text("output", "dir", &RunConfig::output_dir),
    };
    return table;
}

template <class Fn>
auto config_guard(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

RunConfig parse_config_text(std::string_view input) {
    RunConfig config;
    std::vector<std::string> seen;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= input.size()) {
        const std::size_t end = std::min(input.find('\n', pos), input.size());
        std::string_view line = input.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const std::string full = section + "." + key;
        const Field* field = nullptr;
        for (const auto& f : fields()) {
            if (f.section == section && f.key == key) field = &f;
        }
        if (!field) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + full + "'");
        field->set(config, value);
        seen.push_back(full);
    }
    for (const auto& f : fields()) {
        if (!f.required) continue;
        const std::string full = f.section + "." + f.key;
        if (std::find(seen.begin(), seen.end(), full) == seen.end()) {
            throw ConfigError("missing required key '" + full + "'");
        }
    }
    return config;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string write_config(const RunConfig& config) {
    std::ostringstream out;
    std::string section;
    for (const auto& f : fields()) {
        const auto value = f.get(config);
        if (!value) continue;
        if (f.section != section) {
            if (!section.empty()) out << '\n';
            section = f.section;
            out << '[' << section << "]\n";
        }
        out << f.key << " = " << *value << '\n';
    }
    return out.str();
}

ResolvedConfig resolve(const RunConfig& c) {
    return config_guard([&] {
        if (!(c.dx > 0.0)) throw ConfigError("grid.dx must be positive");
        if (!(c.delta > 0.0)) throw ConfigError("kernel.delta must be positive");
        if (c.final_time && !(*c.final_time > 0.0)) throw ConfigError("time.T must be positive");
        if (!(c.safety > 0.0 && c.safety <= 1.0)) throw ConfigError("time.safety must lie in (0, 1]");
        if (c.snapshots < 2) throw ConfigError("time.snapshots must be at least 2");
        if (c.levels < 2) throw ConfigError("study.levels must be at least 2");
        if (!(c.coupling > 0.0)) throw ConfigError("study.coupling must be positive");
        (void)parse_regime(c.regime);

        ProblemParams params;
        params.u_left = c.u_left;
        params.u_right = c.u_right;
        params.x_jump = c.x_jump;
        params.speed = c.speed;
        params.value = c.value;
        Problem problem = make_problem(c.problem, params);

        LocalFlux local = problem.local;
        if (c.local) {
            if (*c.local == "burgers") local = LocalFlux::burgers();
            else if (*c.local == "linear") local = LocalFlux::linear(c.speed);
            else if (*c.local == "cubic") local = LocalFlux::cubic();
            else throw ConfigError("unknown local flux '" + *c.local + "' (valid: burgers, linear, cubic)");
            // The closed-form solution belongs to the preset flux.
            if (local.name() != problem.local.name() || local.speed() != problem.local.speed()) {
                problem.exact.reset();
            }
            problem.local = local;
        }
        const FluxFamily family = parse_family(c.family);
        const TwoPointFlux flux(family, local, c.lambda);
        if (!is_monotone_on(flux, problem.data_min, problem.data_max)) {
            throw ConfigError("flux.lambda = " + format_double(c.lambda) +
                              " makes Lax-Friedrichs non-monotone; need lambda * max|f'| <= 1, i.e. lambda <= " +
                              format_double(1.0 / local.max_speed(problem.data_min, problem.data_max)));
        }

        const double bound = max_mesh_ratio(flux, problem.data_min, problem.data_max);
        if (c.mesh_ratio && !(*c.mesh_ratio > 0.0)) throw ConfigError("time.mesh_ratio must be positive");
        if (c.mesh_ratio && *c.mesh_ratio > bound * (1.0 + 1e-12)) {
            throw ConfigError("time.mesh_ratio = " + format_double(*c.mesh_ratio) +
                              " violates the CFL condition (dt/dx) (L1 + L2) <= 1 on the data box [" +
                              format_double(problem.data_min) + ", " + format_double(problem.data_max) +
                              "]; the bound is dt/dx <= " + format_double(bound));
        }

        const Kernel kernel(parse_profile(c.profile), c.delta);
        problem.x_min = c.x_min.value_or(problem.x_min);
        problem.x_max = c.x_max.value_or(problem.x_max);
        if (c.boundary) problem.boundary = parse_boundary(*c.boundary);
        problem.final_time = c.final_time.value_or(problem.final_time);
        const GridGeometry geometry = GridGeometry::covering(problem.x_min, problem.x_max, c.dx, problem.boundary);

        // Default window: the domain minus delta plus the distance a wave
        // covers by T, on each side.
        double wmin = problem.x_min;
        double wmax = problem.x_max;
        if (problem.boundary == Boundary::ConstantExtension) {
            const double margin = c.delta + local.max_speed(problem.data_min, problem.data_max) * problem.final_time;
            if (2.0 * margin < wmax - wmin) {
                wmin += margin;
                wmax -= margin;
            }
        }
        wmin = c.window_min.value_or(wmin);
        wmax = c.window_max.value_or(wmax);
        if (!(wmin <= wmax) || wmin < problem.x_min || wmax > problem.x_max) {
            throw ConfigError("study window must lie inside the domain");
        }
        problem.window_min = wmin;
        problem.window_max = wmax;

        SchemeConfig scheme{kernel, flux, c.mesh_ratio, problem.final_time, c.safety};
        return ResolvedConfig{problem, flux, kernel, geometry, scheme, wmin, wmax};
    });
}

void validate(const RunConfig& config) { (void)resolve(config); }

StudySettings study_settings(const RunConfig& config) {
    const ResolvedConfig r = resolve(config);
    StudySettings s;
    s.problem = r.problem;
    s.profile = r.kernel.profile();
    s.flux = r.flux;
    s.regime = parse_regime(config.regime);
    s.dx0 = config.dx;
    s.levels = config.levels;
    s.delta = config.delta;
    s.coupling = config.coupling;
    s.mesh_ratio = config.mesh_ratio;
    s.safety = config.safety;
    s.final_time = r.problem.final_time;
    s.snapshots = config.snapshots;
    s.window_min = r.window_min;
    s.window_max = r.window_max;
    return s;
}

}  // namespace nlcl
