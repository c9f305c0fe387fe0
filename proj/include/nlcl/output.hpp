#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "json.hpp"
#include "nlcl/config.hpp"
#include "nlcl/diagnostics.hpp"
#include "nlcl/grid.hpp"
#include "nlcl/study.hpp"

namespace nlcl {

/// All text output uses 17 significant digits so doubles survive a round trip.
std::string format_number(double v);

/// CSV with header `t,x_center,u`, one row per cell per stored time level.
void write_solution_csv(const Trajectory& trajectory, std::ostream& out);
void write_solution_csv(const Trajectory& trajectory, const std::filesystem::path& path);

nlohmann::ordered_json to_json(const InvariantReport& report);
nlohmann::ordered_json to_json(const std::vector<InvariantReport>& reports);
/// Wall times are left out unless requested; they would break byte-identical output.
nlohmann::ordered_json to_json(const StudyReport& report, bool include_timing = false);

/// Study JSON: config echo, per-level rows, EOCs and invariant reports.
void write_study(const StudyReport& report, const RunConfig& config, const std::filesystem::path& path,
                 bool include_timing = false);
/// One row per level: level,dx,delta,dt,r,n_cells,steps,value,eoc.
void write_study_csv(const StudyReport& report, const std::filesystem::path& path);
/// Two columns `dx value` for every level that has a value.
void emit_plot_data(const StudyReport& report, const std::filesystem::path& path);

/// Writes `text` to `path`, throwing std::runtime_error if the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace nlcl
