#include "nlcl/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlcl {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

// JSON has no infinities; they become null.
nlohmann::ordered_json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_solution_csv(const Trajectory& trajectory, std::ostream& out) {
    out << "t,x_center,u\n";
    for (const GridState& state : trajectory) {
        const std::string t = format_number(state.time());
        for (long j = 0; j < state.n_cells(); ++j) {
            out << t << ',' << format_number(state.cell_center(j)) << ',' << format_number(state[j]) << '\n';
        }
    }
}

void write_solution_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
    std::ofstream out = open_for_write(path);
    write_solution_csv(trajectory, out);
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

nlohmann::ordered_json to_json(const InvariantReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["applicable"] = r.applicable;
    j["violation"] = r.violation;
    j["tolerance"] = r.tolerance;
    j["step"] = r.step;
    j["cell"] = r.cell;
    j["kruzkov_constant"] = r.kruzkov_constant ? nlohmann::ordered_json(*r.kruzkov_constant) : nullptr;
    return j;
}

nlohmann::ordered_json to_json(const std::vector<InvariantReport>& reports) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

nlohmann::ordered_json to_json(const StudyReport& report, bool include_timing) {
    nlohmann::ordered_json j;
    j["regime"] = std::string(regime_name(report.regime));
    j["problem"] = report.problem;
    j["decreasing"] = report.decreasing;
    j["invariants_passed"] = report.invariants_passed;
    auto levels = nlohmann::ordered_json::array();
    for (const auto& level : report.levels) {
        nlohmann::ordered_json row;
        row["dx"] = level.dx;
        row["delta"] = level.delta;
        row["dt"] = level.dt;
        row["r"] = level.r;
        row["n_cells"] = level.n_cells;
        row["steps"] = level.steps;
        row["value"] = level.value ? nlohmann::ordered_json(*level.value) : nullptr;
        if (level.probe) row["probe"] = *level.probe;
        if (include_timing) row["wall_seconds"] = level.wall_seconds;
        row["invariants"] = to_json(level.invariants);
        levels.push_back(row);
    }
    j["levels"] = levels;
    auto rates = nlohmann::ordered_json::array();
    for (double e : report.eoc) rates.push_back(number_or_null(e));
    j["eoc"] = rates;
    return j;
}

void write_study(const StudyReport& report, const RunConfig& config, const std::filesystem::path& path,
                 bool include_timing) {
    nlohmann::ordered_json j;
    j["config"] = write_config(config);
    j["study"] = to_json(report, include_timing);
    write_text(path, j.dump(2) + "\n");
}

void write_study_csv(const StudyReport& report, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "level,dx,delta,dt,r,n_cells,steps,value,eoc\n";
    // EOC between this level's value and the next one's.
    std::size_t value_index = 0;
    for (std::size_t m = 0; m < report.levels.size(); ++m) {
        const LevelRecord& level = report.levels[m];
        out << m << ',' << format_number(level.dx) << ',' << format_number(level.delta) << ','
            << format_number(level.dt) << ',' << level.r << ',' << level.n_cells << ',' << level.steps << ',';
        if (level.value) out << format_number(*level.value);
        out << ',';
        if (level.value) {
            if (value_index < report.eoc.size()) out << format_number(report.eoc[value_index]);
            ++value_index;
        }
        out << '\n';
    }
    write_text(path, out.str());
}

void emit_plot_data(const StudyReport& report, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "# dx value\n";
    for (const auto& level : report.levels) {
        if (level.value) out << format_number(level.dx) << ' ' << format_number(*level.value) << '\n';
    }
    write_text(path, out.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out = open_for_write(path);
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace nlcl
