// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 only if all pass.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "nlcl/diagnostics.hpp"
#include "nlcl/output.hpp"
#include "nlcl/reference.hpp"
#include "nlcl/stepper.hpp"
#include "nlcl/study.hpp"

using namespace nlcl;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> body;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

const Profile kProfiles[] = {Profile::Uniform, Profile::Triangular, Profile::Quadratic};

std::vector<TwoPointFlux> burgers_fluxes() {
    return {TwoPointFlux::godunov(LocalFlux::burgers()), TwoPointFlux::lax_friedrichs(LocalFlux::burgers(), 0.8),
            TwoPointFlux::engquist_osher(LocalFlux::burgers())};
}

std::vector<TwoPointFlux> all_fluxes() {
    auto v = burgers_fluxes();
    v.push_back(TwoPointFlux::godunov(LocalFlux::cubic()));
    v.push_back(TwoPointFlux::engquist_osher(LocalFlux::cubic()));
    v.push_back(TwoPointFlux::upwind_linear(1.5));
    v.push_back(TwoPointFlux::upwind_linear(-0.5));
    return v;
}

GridState random_values(std::mt19937_64& rng, long n, double dx, Boundary b) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = u(rng);
    return GridState(GridGeometry{0.0, dx, n, b}, std::move(v));
}

// Piecewise-constant data with random plateaus: bounded variation.
GridState random_bv(std::mt19937_64& rng, long n, double dx, Boundary b) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<long> len(1, n / 8);
    std::vector<double> v;
    while (static_cast<long>(v.size()) < n) {
        const double value = u(rng);
        for (long i = len(rng); i > 0 && static_cast<long>(v.size()) < n; --i) v.push_back(value);
    }
    return GridState(GridGeometry{0.0, dx, n, b}, std::move(v));
}

double safe_dt(const TwoPointFlux& g, const GridState& s, double safety = 0.9) {
    return safety * max_mesh_ratio(g, s.min_value(), s.max_value()) * s.dx();
}

Trajectory march(const GridState& s, const QuadratureWeights& w, const TwoPointFlux& g, double dt, int steps) {
    Trajectory tr{s};
    tr.reserve(static_cast<std::size_t>(steps) + 1);
    for (int n = 0; n < steps; ++n) tr.push_back(step(tr.back(), w, g, dt));
    return tr;
}

// 1 -----------------------------------------------------------------------------------
Outcome weight_normalization() {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_real_distribution<double> log_dx(std::log(1e-4), 0.0);
    std::uniform_real_distribution<double> log_ratio(-1.0, std::log(500.0));
    double worst = 0.0;
    bool nonnegative = true;
    for (int i = 0; i < 1000; ++i) {
        const double dx = std::exp(log_dx(rng));
        const auto w = compute_weights(Kernel(kProfiles[pick(rng)], dx * std::exp(log_ratio(rng))), dx);
        worst = std::max(worst, std::abs(w.first_moment() - 1.0));
        for (double v : w.values()) nonnegative = nonnegative && v >= 0.0;
    }
    return {worst <= 1e-12 && nonnegative, "max |dx sum k W_k - 1| = " + num(worst) + " (tol 1e-12)"};
}

// 2 -----------------------------------------------------------------------------------
Outcome local_reduction() {
    std::mt19937_64 rng(202);
    const auto fluxes = all_fluxes();
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const TwoPointFlux& g = fluxes[static_cast<std::size_t>(i) % fluxes.size()];
        const double dx = 1.0 / 64;
        const auto w = compute_weights(Kernel(kProfiles[i % 3], frac(rng) * dx), dx);
        const GridState s = random_values(rng, 64, dx, i % 2 ? Boundary::Periodic : Boundary::ConstantExtension);
        const double dt = safe_dt(g, s);
        const GridState a = step(s, w, g, dt);
        for (long j = 0; j < s.n_cells(); ++j) {
            const double classical = s[j] - dt / dx * (g(s[j], s.at(j + 1)) - g(s.at(j - 1), s[j]));
            worst = std::max(worst, std::abs(a[j] - classical));
        }
    }
    return {worst <= 1e-13, "max per-cell deviation from the three-point scheme = " + num(worst) + " (tol 1e-13)"};
}

// 3 -----------------------------------------------------------------------------------
Outcome conservative_equivalence() {
    std::mt19937_64 rng(303);
    const auto fluxes = all_fluxes();
    std::uniform_int_distribution<int> pick_r(1, 64);
    double worst = 0.0;
    int max_r = 0;
    for (int i = 0; i < 200; ++i) {
        const TwoPointFlux& g = fluxes[static_cast<std::size_t>(i) % fluxes.size()];
        const int r = i == 0 ? 64 : pick_r(rng);
        const double dx = 1.0 / 256;
        const auto w = compute_weights(Kernel(kProfiles[i % 3], (r + 0.5) * dx), dx);
        max_r = std::max<int>(max_r, static_cast<int>(w.r()));
        const GridState s = random_values(rng, 256, dx, i % 2 ? Boundary::Periodic : Boundary::ConstantExtension);
        const double dt = safe_dt(g, s);
        const GridState a = step(s, w, g, dt);
        const GridState b = step_conservative_form(s, w, g, dt);
        for (long j = 0; j < s.n_cells(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
    }
    return {worst <= 1e-12 && max_r == 64,
            "max |step - conservative form| = " + num(worst) + " (tol 1e-12), r up to " + std::to_string(max_r)};
}

// 4 -----------------------------------------------------------------------------------
Outcome max_principle_tvd() {
    std::mt19937_64 rng(404);
    const auto fluxes = all_fluxes();
    const double dx = 1.0 / 256;
    int failures = 0;
    double worst_mp = 0.0, worst_tvd = 0.0;
    for (int i = 0; i < 100; ++i) {
        const GridState s = random_bv(rng, 256, dx, i % 2 ? Boundary::Periodic : Boundary::ConstantExtension);
        const TwoPointFlux& g = fluxes[static_cast<std::size_t>(i) % fluxes.size()];
        for (int r : {1, 4, 16}) {
            const auto w = compute_weights(Kernel(kProfiles[(i + r) % 3], (r + 0.25) * dx), dx);
            const Trajectory tr = march(s, w, g, safe_dt(g, s), 40);
            const auto mp = check_max_principle(tr);
            const auto tv = check_tvd(tr);
            worst_mp = std::max(worst_mp, mp.violation);
            worst_tvd = std::max(worst_tvd, tv.violation);
            failures += (mp.passed && tv.passed) ? 0 : 1;
        }
    }
    // negative control: twice the admissible step, with r = 1 and one-signed
    // data so the bound is sharp
    int detected = 0;
    for (int i = 0; i < 10; ++i) {
        GridState s = random_bv(rng, 256, dx, Boundary::Periodic);
        for (double& v : s.values()) v = 0.6 + 0.5 * v;
        const auto g = TwoPointFlux::godunov(LocalFlux::burgers());
        const auto w = compute_weights(Kernel(Profile::Uniform, 1.25 * dx), dx);
        const Trajectory tr = march(s, w, g, 2.0 * max_mesh_ratio(g, s.min_value(), s.max_value()) * dx, 40);
        detected += (!check_max_principle(tr).passed || !check_tvd(tr).passed) ? 1 : 0;
    }
    return {failures == 0 && detected > 0,
            std::to_string(failures) + " failing runs of 300; worst max-principle excess " + num(worst_mp) +
                ", worst TV increase " + num(worst_tvd) + " (tol 1e-12 scaled); 2x CFL detected in " +
                std::to_string(detected) + "/10"};
}

// 5 -----------------------------------------------------------------------------------
Outcome contraction_ordering() {
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> lift(0.0, 0.2);
    const auto fluxes = all_fluxes();
    const double dx = 1.0 / 128;
    int failures = 0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const TwoPointFlux& g = fluxes[static_cast<std::size_t>(i) % fluxes.size()];
        // periodic: no boundary flux, so the whole-line contraction applies verbatim
        const Boundary b = Boundary::Periodic;
        const auto w = compute_weights(Kernel(kProfiles[i % 3], (1 + i % 9) * 1.3 * dx), dx);
        const GridState u = random_bv(rng, 128, dx, b);
        const bool ordered = i % 2 == 0;
        std::vector<double> vv(u.values().begin(), u.values().end());
        if (ordered) {
            for (auto& x : vv) x += lift(rng);
        } else {
            const GridState other = random_bv(rng, 128, dx, b);
            vv.assign(other.values().begin(), other.values().end());
        }
        const GridState v(u.geometry(), vv);
        const double lo = std::min(u.min_value(), v.min_value()), hi = std::max(u.max_value(), v.max_value());
        const double dt = 0.9 * max_mesh_ratio(g, lo, hi) * dx;
        const Trajectory tu = march(u, w, g, dt, 100), tv = march(v, w, g, dt, 100);
        const auto c = check_l1_contraction(tu, tv);
        worst = std::max(worst, c.violation);
        failures += c.passed ? 0 : 1;
        if (ordered) {
            const auto o = check_ordering(tu, tv);
            failures += (o.applicable && o.passed) ? 0 : 1;
        }
    }
    return {failures == 0, std::to_string(failures) + " failures over 50 pairs x 100 steps; worst L1 increase " +
                               num(worst) + " (tol 1e-12 scaled)"};
}

// 6 -----------------------------------------------------------------------------------
Outcome entropy_inequality() {
    int failures = 0;
    double worst = 0.0;
    long steps = 0;
    const double dx = 1.0 / 128;
    for (const char* name : {"burgers_shock", "burgers_rarefaction"}) {
        const Problem p = make_problem(name);
        for (const auto& g : burgers_fluxes()) {
            for (double delta : {0.5 * dx, 4.0 * dx, 0.1}) {
                const auto geo = GridGeometry::covering(p.x_min, p.x_max, dx, p.boundary);
                const SchemeConfig c{Kernel(Profile::Uniform, delta), g, std::nullopt, p.final_time};
                const GridState init = cell_average_init(p.initial, geo);
                const auto w = compute_weights(c.kernel, dx);
                RunOptions opt;
                opt.record_every_step = true;
                const Trajectory tr = run(c, init, opt);
                const auto rep = check_entropy(tr, w, g, kruzkov_constants(init));
                steps += static_cast<long>(tr.size()) - 1;
                worst = std::max(worst, rep.violation);
                failures += rep.passed ? 0 : 1;
            }
        }
    }
    return {failures == 0, std::to_string(steps) + " steps x 17 constants; worst positive residual " + num(worst) +
                               " (tol 1e-10 scaled), " + std::to_string(failures) + " failing runs"};
}

// 7 -----------------------------------------------------------------------------------
Outcome one_step_bound() {
    // Fixed data: plateaus, a ramp and a smooth bump, all features wider than the largest horizon.
    const double dx = 1.0 / 2048;
    const InitialData data{[](double x) {
                               if (x < 0.15) return 0.8;
                               if (x < 0.3) return -0.4;
                               if (x < 0.45) return -0.4 + 1.2 * (x - 0.3) / 0.15;
                               if (x < 0.6) return 0.8;
                               return 0.8 * std::cos(2.0 * M_PI * (x - 0.6) / 0.4);
                           },
                           {0.15, 0.3, 0.45, 0.6}};
    const GridState u = cell_average_init(data, GridGeometry::covering(0.0, 1.0, dx, Boundary::Periodic));
    double cmin = INFINITY, cmax = 0.0;
    std::string table;
    for (const auto& g : burgers_fluxes()) {
        const double dt = safe_dt(g, u);
        for (int r : {1, 4, 16, 64}) {
            const auto w = compute_weights(Kernel(Profile::Triangular, (r + 0.5) * dx), dx);
            const GridState h = step(u, w, g, dt);
            const double C = discrete_l1_distance(h, u) / (dt * total_variation(u));
            cmin = std::min(cmin, C);
            cmax = std::max(cmax, C);
        }
    }
    return {cmax < 2.0 * cmin, "fitted C in [" + num(cmin) + ", " + num(cmax) + "] over r in {1,4,16,64} and 3 fluxes; "
                               "ratio " + num(cmax / cmin) + " (must be < 2)"};
}

std::string values_text(const StudyReport& r) {
    std::string s;
    for (double v : r.values()) s += (s.empty() ? "" : " ") + num(v);
    return s;
}

bool ratios_at_least(const std::vector<double>& v, double floor) {
    for (std::size_t m = 0; m + 1 < v.size(); ++m) {
        if (!(v[m] >= floor * v[m + 1])) return false;
    }
    return true;
}

// 8 -----------------------------------------------------------------------------------
Outcome fixed_delta_regime() {
    StudySettings s = default_study(make_problem("burgers_shock"), Regime::FixedDelta);
    s.delta = 0.1;
    s.dx0 = 1.0 / 64;
    s.levels = 4;
    const StudyReport r = run_study(s);
    const auto v = r.values();
    const bool ok = r.decreasing && ratios_at_least(v, 1.3) && r.invariants_passed && v.size() == 3;
    return {ok, "Cauchy distances " + values_text(r) + " (strictly decreasing, ratio >= 1.3); invariants " +
                    (r.invariants_passed ? "pass" : "FAIL")};
}

// 9 -----------------------------------------------------------------------------------
Outcome joint_limit_regime() {
    StudySettings shock = default_study(make_problem("burgers_shock"), Regime::JointLimit);
    shock.coupling = 2.0;
    shock.dx0 = 1.0 / 64;
    shock.levels = 4;
    const StudyReport rs = run_study(shock);

    StudySettings fan = default_study(make_problem("burgers_rarefaction"), Regime::JointLimit);
    fan.coupling = 2.0;
    fan.dx0 = 1.0 / 64;
    fan.levels = 4;
    fan.probe_x = 0.0;
    const StudyReport rf = run_study(fan);
    const double midpoint = *rf.levels.back().probe;

    const bool ok = rs.decreasing && rf.decreasing && std::abs(midpoint) <= 0.05 && rs.invariants_passed &&
                    rf.invariants_passed;
    return {ok, "shock errors " + values_text(rs) + "; rarefaction errors " + values_text(rf) +
                    "; fan midpoint " + num(midpoint) + " (|.| <= 0.05); invariants " +
                    (rs.invariants_passed && rf.invariants_passed ? "pass" : "FAIL")};
}

// 10 ----------------------------------------------------------------------------------
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "nlcl_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path config = root / "shock.ini";
    {
        std::ofstream out(config);
        out << "[problem]\nname = burgers_shock\n[kernel]\nprofile = triangular\ndelta = 0.05\n"
               "[flux]\nfamily = engquist_osher\n[grid]\ndx = 0.0078125\n[time]\nT = 0.25\nsnapshots = 5\n"
               "[study]\nregime = joint_limit\nlevels = 3\n";
    }
    const int saved = omp_get_max_threads();
    std::vector<std::vector<std::string>> outputs;
    int bad_exit = 0;
    // one output directory for all runs: the config echo records it
    const fs::path dir = root / "out";
    for (const char* threads : {"1", "4", "4", "2"}) {
        fs::remove_all(dir);
        std::ostringstream out, err;
        const std::vector<std::string> run_args{"nlcl", "run", config.string(), "--out", dir.string(), "--threads", threads};
        const std::vector<std::string> study_args{"nlcl", "study", config.string(), "--out", dir.string(), "--threads", threads};
        bad_exit += cli::main(run_args, out, err) != 0;
        bad_exit += cli::main(study_args, out, err) != 0;
        outputs.push_back({slurp(dir / "solution.csv"), slurp(dir / "summary.json"), slurp(dir / "study.json"),
                           slurp(dir / "study.csv"), slurp(dir / "plot.dat")});
    }
    omp_set_num_threads(saved);
    bool identical = true;
    for (const auto& o : outputs) identical = identical && o == outputs.front();
    bool nonempty = true;
    for (const auto& f : outputs.front()) nonempty = nonempty && !f.empty();
    return {identical && nonempty && bad_exit == 0,
            std::string(identical ? "byte-identical" : "DIFFERENT") +
                " solution.csv, summary.json, study.json, study.csv, plot.dat over 4 runs (threads 1, 4, 4, 2)"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "weight normalization", 1.0, weight_normalization},
        {2, "local reduction", 1.0, local_reduction},
        {3, "conservative-form equivalence", 5.0, conservative_equivalence},
        {4, "maximum principle and TVD", 30.0, max_principle_tvd},
        {5, "L1 contraction and ordering", 30.0, contraction_ordering},
        {6, "cell entropy inequality", 30.0, entropy_inequality},
        {7, "one-step L1/BV bound", 30.0, one_step_bound},
        {8, "fixed-delta convergence", 120.0, fixed_delta_regime},
        {9, "joint-limit convergence", 120.0, joint_limit_regime},
        {10, "determinism", 10.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_seconds;
        const bool pass = o.passed && in_time;
        failed += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail << "; "
                  << num(secs) << " s (budget " << num(c.budget_seconds) << " s" << (in_time ? "" : ", EXCEEDED")
                  << ")\n"
                  << std::flush;
    }
    std::cout << (failed == 0 ? "all 10 criteria pass" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
