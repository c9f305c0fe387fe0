#include "cli_app.hpp"

#include <omp.h>

#include <filesystem>
#include <iomanip>
#include <optional>

#include "CLI11.hpp"
#include "nlcl/config.hpp"
#include "nlcl/diagnostics.hpp"
#include "nlcl/output.hpp"
#include "nlcl/stepper.hpp"
#include "nlcl/study.hpp"

namespace nlcl::cli {

namespace {

struct Overrides {
    std::string config_path;
    std::optional<double> dx;
    std::optional<double> delta;
    std::optional<std::string> flux;
    std::optional<double> final_time;
    std::optional<int> levels;
    std::optional<std::string> out;
    int threads = 0;
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("config", o.config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--dx", o.dx, "Cell width");
    cmd->add_option("--delta", o.delta, "Kernel horizon");
    cmd->add_option("--flux", o.flux, "Flux family (godunov, lax_friedrichs, engquist_osher, upwind_linear)");
    cmd->add_option("--T", o.final_time, "Final time");
    cmd->add_option("--levels", o.levels, "Refinement levels");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--threads", o.threads, "OpenMP threads (0 keeps the runtime default)");
}

RunConfig load(const Overrides& o) {
    RunConfig c = parse_config(o.config_path);
    if (o.dx) c.dx = *o.dx;
    if (o.delta) c.delta = *o.delta;
    if (o.flux) c.family = *o.flux;
    if (o.final_time) c.final_time = *o.final_time;
    if (o.levels) c.levels = *o.levels;
    if (o.out) c.output_dir = *o.out;
    validate(c);
    if (o.threads > 0) omp_set_num_threads(o.threads);
    return c;
}

struct Simulation {
    Trajectory trajectory;
    std::vector<InvariantReport> reports;
    double dt = 0.0;
    long r = 0;
    long steps = 0;
};

Simulation simulate(const RunConfig& config) {
    const ResolvedConfig rc = resolve(config);
    const GridState initial = cell_average_init(rc.problem.initial, rc.geometry);
    const QuadratureWeights weights = compute_weights(rc.kernel, rc.geometry.dx);
    InvariantMonitor monitor(initial, weights, rc.flux);
    Simulation sim;
    RunOptions options;
    options.snapshots = config.snapshots;
    options.observer = [&](const GridState& before, const GridState& after, long index) {
        monitor.observe(before, after, index);
        sim.steps = index + 1;
    };
    sim.trajectory = run(rc.scheme, initial, options);
    sim.reports = monitor.reports();
    sim.dt = effective_mesh_ratio(rc.scheme, initial) * initial.dx();
    sim.r = weights.r();
    return sim;
}

bool all_passed(const std::vector<InvariantReport>& reports) {
    for (const auto& r : reports) {
        if (!r.passed) return false;
    }
    return true;
}

void print_reports(const std::vector<InvariantReport>& reports, std::ostream& out) {
    for (const auto& r : reports) {
        out << std::left << std::setw(16) << r.name << (r.passed ? "PASS" : "FAIL") << "  violation "
            << format_number(r.violation) << "  tolerance " << format_number(r.tolerance);
        if (!r.passed) out << "  step " << r.step << " cell " << r.cell;
        out << '\n';
    }
}

void write_summary(const RunConfig& config, const Simulation& sim, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["config"] = write_config(config);
    j["dt"] = sim.dt;
    j["r"] = sim.r;
    j["steps"] = sim.steps;
    j["final_time"] = sim.trajectory.back().time();
    j["invariants"] = to_json(sim.reports);
    j["passed"] = all_passed(sim.reports);
    write_text(path, j.dump(2) + "\n");
}

int cmd_run(const Overrides& o, std::ostream& out, bool write_csv) {
    const RunConfig config = load(o);
    const Simulation sim = simulate(config);
    const std::filesystem::path dir = config.output_dir;
    if (write_csv) write_solution_csv(sim.trajectory, dir / "solution.csv");
    write_summary(config, sim, dir / "summary.json");
    print_reports(sim.reports, out);
    return all_passed(sim.reports) ? kPass : kInvariantFailure;
}

int cmd_study(const Overrides& o, bool timing, std::ostream& out) {
    const RunConfig config = load(o);
    const StudyReport report = run_study(study_settings(config));
    const std::filesystem::path dir = config.output_dir;
    write_study(report, config, dir / "study.json", timing);
    write_study_csv(report, dir / "study.csv");
    emit_plot_data(report, dir / "plot.dat");

    out << regime_name(report.regime) << " study of " << report.problem << '\n';
    const auto values = report.values();
    for (std::size_t m = 0; m < report.levels.size(); ++m) {
        const auto& level = report.levels[m];
        out << "  dx " << format_number(level.dx) << "  delta " << format_number(level.delta) << "  r " << level.r;
        if (level.value) out << "  value " << format_number(*level.value);
        out << '\n';
    }
    out << "  eoc";
    for (double e : report.eoc) out << ' ' << format_number(e);
    out << "\n  decreasing " << (report.decreasing ? "yes" : "no") << ", invariants "
        << (report.invariants_passed ? "pass" : "FAIL") << '\n';
    return report.decreasing && report.invariants_passed ? kPass : kInvariantFailure;
}

int cmd_weights(const std::optional<std::string>& config_path, std::optional<std::string> profile,
                std::optional<double> delta, std::optional<double> dx, std::ostream& out) {
    std::string prof = profile.value_or("uniform");
    std::optional<double> d = delta;
    std::optional<double> h = dx;
    if (config_path) {
        const RunConfig c = parse_config(*config_path);
        if (!profile) prof = c.profile;
        if (!d) d = c.delta;
        if (!h) h = c.dx;
    }
    if (!d || !h) throw ConfigError("weights needs --delta and --dx (or a config providing them)");
    const QuadratureWeights w = compute_weights(Kernel(parse_profile(prof), *d), *h);
    out << "# profile " << prof << " delta " << format_number(*d) << " dx " << format_number(*h) << " r " << w.r()
        << " moment " << format_number(w.first_moment()) << '\n';
    out << "k,W_k\n";
    for (long k = 1; k <= w.reach(); ++k) out << k << ',' << format_number(w[k]) << '\n';
    return kPass;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monotone solver for nonlocal pair-interaction conservation laws", "nlcl"};
    app.require_subcommand(1);

    Overrides run_o, check_o, study_o;
    bool timing = false;
    auto* run_cmd = app.add_subcommand("run", "Run one simulation; writes solution.csv and summary.json");
    add_common(run_cmd, run_o);
    auto* check_cmd = app.add_subcommand("check", "Run the invariant suite on one simulation");
    add_common(check_cmd, check_o);
    auto* study_cmd = app.add_subcommand("study", "Refinement study; writes study.json, study.csv and plot.dat");
    add_common(study_cmd, study_o);
    study_cmd->add_flag("--timing", timing, "Include wall times in study.json");

    std::optional<std::string> w_config, w_profile;
    std::optional<double> w_delta, w_dx;
    auto* weights_cmd = app.add_subcommand("weights", "Print the horizon weights W_k");
    weights_cmd->add_option("--config", w_config, "Take profile, delta and dx from a config file");
    weights_cmd->add_option("--profile", w_profile, "uniform, triangular or quadratic");
    weights_cmd->add_option("--delta", w_delta, "Kernel horizon");
    weights_cmd->add_option("--dx", w_dx, "Cell width");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*run_cmd) return cmd_run(run_o, out, true);
        if (*check_cmd) return cmd_run(check_o, out, false);
        if (*study_cmd) return cmd_study(study_o, timing, out);
        if (*weights_cmd) return cmd_weights(w_config, w_profile, w_delta, w_dx, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace nlcl::cli
