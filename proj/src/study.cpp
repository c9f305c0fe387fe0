#include "nlcl/study.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlcl/stepper.hpp"

namespace nlcl {

std::string_view regime_name(Regime r) { return r == Regime::FixedDelta ? "fixed_delta" : "joint_limit"; }

Regime parse_regime(std::string_view key) {
    if (key == "fixed_delta") return Regime::FixedDelta;
    if (key == "joint_limit") return Regime::JointLimit;
    throw std::invalid_argument("unknown regime '" + std::string(key) + "' (valid: fixed_delta, joint_limit)");
}

StudySettings default_study(const Problem& problem, Regime regime) {
    StudySettings s;
    s.problem = problem;
    s.regime = regime;
    s.flux = TwoPointFlux::godunov(problem.local);
    s.final_time = problem.final_time;
    s.window_min = problem.window_min;
    s.window_max = problem.window_max;
    return s;
}

std::vector<double> StudyReport::values() const {
    std::vector<double> out;
    for (const auto& level : levels) {
        if (level.value) out.push_back(*level.value);
    }
    return out;
}

std::vector<double> eoc(const std::vector<double>& errors) {
    std::vector<double> out;
    for (std::size_t m = 0; m + 1 < errors.size(); ++m) {
        const double a = errors[m];
        const double b = errors[m + 1];
        if (a == 0.0 && b == 0.0) out.push_back(0.0);
        else if (b == 0.0) out.push_back(std::numeric_limits<double>::infinity());
        else out.push_back(std::log2(a / b));
    }
    return out;
}

namespace {

struct LevelRun {
    LevelRecord record;
    Trajectory snapshots;
};

void validate(const StudySettings& s) {
    if (s.levels < 2) throw std::invalid_argument("a study needs at least two levels");
    if (!(s.dx0 > 0.0)) throw std::invalid_argument("dx0 must be positive");
    if (!(s.final_time >= 0.0)) throw std::invalid_argument("final time must be nonnegative");
    if (!(s.window_min <= s.window_max) || s.window_min < s.problem.x_min || s.window_max > s.problem.x_max) {
        throw std::invalid_argument("measurement window must lie inside the domain");
    }
}

double study_mesh_ratio(const StudySettings& s) {
    const double bound = max_mesh_ratio(s.flux, s.problem.data_min, s.problem.data_max);
    if (s.mesh_ratio) {
        if (*s.mesh_ratio > bound * (1.0 + 1e-12)) throw CflViolation(*s.mesh_ratio, bound);
        return *s.mesh_ratio;
    }
    return std::isfinite(bound) ? s.safety * bound : s.safety;
}

LevelRun run_level(const StudySettings& s, double dx, double delta, double lambda) {
    const auto start = std::chrono::steady_clock::now();
    const GridGeometry geometry = GridGeometry::covering(s.problem.x_min, s.problem.x_max, dx, s.problem.boundary);
    const GridState initial = cell_average_init(s.problem.initial, geometry);
    const Kernel kernel(s.profile, delta);
    const QuadratureWeights weights = compute_weights(kernel, dx);

    SchemeConfig config{kernel, s.flux, lambda, s.final_time, s.safety};
    std::optional<InvariantMonitor> monitor;
    if (s.check_invariants) monitor.emplace(initial, weights, s.flux, s.check_entropy);

    long steps = 0;
    RunOptions options;
    options.snapshots = s.snapshots;
    options.observer = [&](const GridState& before, const GridState& after, long index) {
        if (monitor) monitor->observe(before, after, index);
        steps = index + 1;
    };

    LevelRun out;
    out.snapshots = run(config, initial, options);
    out.record.dx = dx;
    out.record.delta = delta;
    out.record.dt = lambda * dx;
    out.record.r = weights.r();
    out.record.n_cells = geometry.n_cells;
    out.record.steps = steps;
    if (monitor) out.record.invariants = monitor->reports();
    if (s.probe_x) out.record.probe = reconstruct(out.snapshots.back(), *s.probe_x);
    out.record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

void finish(StudyReport& report) {
    const std::vector<double> v = report.values();
    report.eoc = eoc(v);
    report.decreasing = !v.empty();
    for (std::size_t m = 0; m + 1 < v.size(); ++m) {
        const bool converged = v[m] == 0.0 && v[m + 1] == 0.0;
        if (!(v[m + 1] < v[m]) && !converged) report.decreasing = false;
    }
    for (const auto& level : report.levels) {
        for (const auto& inv : level.invariants) {
            if (!inv.passed) report.invariants_passed = false;
        }
    }
}

double level_dx(const StudySettings& s, int m) { return s.dx0 / std::ldexp(1.0, m); }

}  // namespace

StudyReport refine_fixed_delta(const StudySettings& s) {
    validate(s);
    const double lambda = study_mesh_ratio(s);
    StudyReport report;
    report.regime = Regime::FixedDelta;
    report.problem = s.problem.name;

    LevelRun coarse = run_level(s, level_dx(s, 0), s.delta, lambda);
    for (int m = 1; m < s.levels; ++m) {
        LevelRun fine = run_level(s, level_dx(s, m), s.delta, lambda);
        if (coarse.snapshots.size() != fine.snapshots.size()) throw std::logic_error("snapshot count mismatch");
        double sup = 0.0;
        for (std::size_t i = 0; i < fine.snapshots.size(); ++i) {
            sup = std::max(sup, l1_distance(coarse.snapshots[i], fine.snapshots[i], s.window_min, s.window_max));
        }
        coarse.record.value = sup;
        report.levels.push_back(std::move(coarse.record));
        coarse = std::move(fine);
    }
    report.levels.push_back(std::move(coarse.record));
    finish(report);
    return report;
}

StudyReport refine_joint_limit(const StudySettings& s) {
    validate(s);
    if (!s.problem.exact) throw std::invalid_argument("joint_limit needs a problem with an exact solution");
    if (!(s.coupling > 0.0)) throw std::invalid_argument("coupling must be positive");
    const double lambda = study_mesh_ratio(s);
    StudyReport report;
    report.regime = Regime::JointLimit;
    report.problem = s.problem.name;

    for (int m = 0; m < s.levels; ++m) {
        const double dx = level_dx(s, m);
        LevelRun level = run_level(s, dx, s.coupling * dx, lambda);
        double sup = 0.0;
        for (const GridState& snap : level.snapshots) {
            sup = std::max(sup, l1_error(snap, *s.problem.exact, s.window_min, s.window_max));
        }
        level.record.value = sup;
        report.levels.push_back(std::move(level.record));
    }
    finish(report);
    return report;
}

StudyReport run_study(const StudySettings& settings) {
    return settings.regime == Regime::FixedDelta ? refine_fixed_delta(settings) : refine_joint_limit(settings);
}

}  // namespace nlcl
