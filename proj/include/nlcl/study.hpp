#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlcl/diagnostics.hpp"
#include "nlcl/flux.hpp"
#include "nlcl/kernel.hpp"
#include "nlcl/reference.hpp"

namespace nlcl {

enum class Regime {
    FixedDelta,  // delta fixed, dx -> 0: Cauchy distances between successive levels
    JointLimit,  // delta = c dx -> 0: errors against the local entropy solution
};

std::string_view regime_name(Regime r);
Regime parse_regime(std::string_view key);

struct StudySettings {
    Problem problem;
    Profile profile = Profile::Uniform;
    TwoPointFlux flux = TwoPointFlux::godunov(LocalFlux::burgers());
    Regime regime = Regime::FixedDelta;
    double dx0 = 1.0 / 64.0;
    int levels = 4;
    /// Horizon for FixedDelta.
    double delta = 0.1;
    /// delta = coupling * dx for JointLimit.
    double coupling = 2.0;
    /// Fixed across levels; derived from the problem's data box when empty.
    std::optional<double> mesh_ratio;
    double safety = 0.9;
    double final_time = 0.5;
    /// Output times (endpoints included) over which the sup in time is taken.
    int snapshots = 9;
    double window_min = 0.0;
    double window_max = 1.0;
    bool check_invariants = true;
    bool check_entropy = true;
    /// Record the final-time value of the discrete solution at this point.
    std::optional<double> probe_x;
};

/// Settings with the problem's own domain, window and final time.
StudySettings default_study(const Problem& problem, Regime regime);

struct LevelRecord {
    double dx = 0.0;
    double delta = 0.0;
    double dt = 0.0;
    long r = 0;
    long n_cells = 0;
    long steps = 0;
    /// Error against the exact solution (JointLimit) or Cauchy distance to the
    /// next level (FixedDelta; empty on the finest level).
    std::optional<double> value;
    std::optional<double> probe;
    double wall_seconds = 0.0;
    std::vector<InvariantReport> invariants;
};

struct StudyReport {
    Regime regime = Regime::FixedDelta;
    std::string problem;
    std::vector<LevelRecord> levels;
    /// log2 ratios of consecutive values.
    std::vector<double> eoc;
    /// Values strictly decrease (all-zero sequences count as converged).
    bool decreasing = false;
    bool invariants_passed = true;

    std::vector<double> values() const;
};

/// log2(e_m / e_{m+1}); 0 when both vanish, +inf when only the second does.
std::vector<double> eoc(const std::vector<double>& errors);

/// Fixed horizon, dx halving from dx0. Value of level m is the sup over the
/// snapshots of the window L1 distance between levels m and m+1.
StudyReport refine_fixed_delta(const StudySettings& settings);

/// delta = coupling * dx, dx halving from dx0. Value of each level is the sup
/// over the snapshots of the window L1 error against problem.exact.
StudyReport refine_joint_limit(const StudySettings& settings);

/// Dispatches on settings.regime.
StudyReport run_study(const StudySettings& settings);

}  // namespace nlcl
