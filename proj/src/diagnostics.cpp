#include "nlcl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlcl/stepper.hpp"

namespace nlcl {

namespace {

constexpr double kBoundTol = 1e-12;
constexpr double kConservationTol = 1e-13;
constexpr double kEntropyTol = 1e-10;

double data_scale(const GridState& s) {
    return 1.0 + std::max(std::abs(s.min_value()), std::abs(s.max_value()));
}

void require_same_grid(const GridState& a, const GridState& b) {
    const GridGeometry& ga = a.geometry();
    const GridGeometry& gb = b.geometry();
    if (ga.n_cells != gb.n_cells || ga.dx != gb.dx || ga.x0 != gb.x0 || ga.boundary != gb.boundary) {
        throw std::invalid_argument("states live on different grids");
    }
}

struct Excess {
    double value = 0.0;
    long cell = -1;
};

Excess bound_excess(const GridState& s, double lo, double hi) {
    Excess e;
    for (long j = 0; j < s.n_cells(); ++j) {
        const double over = std::max(lo - s[j], s[j] - hi);
        if (over > e.value) e = {over, j};
    }
    return e;
}

double mass(const GridState& s) {
    double sum = 0.0;
    for (double v : s.values()) sum += v;
    return s.dx() * sum;
}

double conservation_excess(const GridState& prev, const GridState& next, const QuadratureWeights& w,
                           const TwoPointFlux& g) {
    const double dt = next.time() - prev.time();
    double expected = mass(prev);
    if (prev.boundary() == Boundary::ConstantExtension) {
        expected -= dt * (wide_flux(prev, w, g, prev.n_cells() - 1) - wide_flux(prev, w, g, -1));
    }
    return std::abs(mass(next) - expected);
}

// Entropy residual per cell without checking that `next` follows from `prev`.
EntropyResidual entropy_residual_unchecked(const GridState& prev, const GridState& next, const QuadratureWeights& w,
                                           const TwoPointFlux& flux, double c) {
    const long n = prev.n_cells();
    const long reach = w.reach();
    const double dt = next.time() - prev.time();
    std::vector<double> u(static_cast<std::size_t>(n + 2 * reach));
    for (long j = -reach; j < n + reach; ++j) u[static_cast<std::size_t>(j + reach)] = prev.at(j);
    const std::span<const double> weights = w.values();
    std::vector<double> residual(static_cast<std::size_t>(n));

    flux.visit([&](const auto& g) {
        const double* v = u.data() + reach;
#pragma omp parallel for schedule(static)
        for (long j = 0; j < n; ++j) {
            const double uj = v[j];
            double acc = 0.0;
            for (long k = 1; k <= reach; ++k) {
                acc += (entropy_flux(g, uj, v[j + k], c) - entropy_flux(g, v[j - k], uj, c)) *
                       weights[static_cast<std::size_t>(k - 1)];
            }
            residual[static_cast<std::size_t>(j)] = std::abs(next[j] - c) - std::abs(uj - c) + dt * acc;
        }
    });

    EntropyResidual worst{residual[0], 0};
    for (long j = 1; j < n; ++j) {
        if (residual[static_cast<std::size_t>(j)] > worst.worst) worst = {residual[static_cast<std::size_t>(j)], j};
    }
    return worst;
}

void check_one_step(const GridState& prev, const GridState& next, const QuadratureWeights& w,
                    const TwoPointFlux& flux) {
    require_same_grid(prev, next);
    const double dt = next.time() - prev.time();
    if (!(dt > 0.0)) throw std::invalid_argument("entropy residual: states are not one forward step apart");
    const GridState expected = step(prev, w, flux, dt);
    const double tol = 1e-9 * data_scale(prev);
    for (long j = 0; j < prev.n_cells(); ++j) {
        if (std::abs(expected[j] - next[j]) > tol) {
            throw std::invalid_argument("entropy residual: states are not one step of the scheme apart");
        }
    }
}

InvariantReport make_report(std::string name, double tolerance) {
    InvariantReport r;
    r.name = std::move(name);
    r.tolerance = tolerance;
    return r;
}

void record(InvariantReport& r, double excess, long step, long cell, std::optional<double> c = std::nullopt) {
    if (excess > r.violation) {
        r.violation = excess;
        r.step = step;
        r.cell = cell;
        r.kruzkov_constant = c;
    }
    r.passed = r.violation <= r.tolerance;
}

}  // namespace

double discrete_l1_norm(const GridState& state) {
    double sum = 0.0;
    for (double v : state.values()) sum += std::abs(v);
    return state.dx() * sum;
}

double total_variation(const GridState& state) {
    double sum = 0.0;
    for (long j = 0; j + 1 < state.n_cells(); ++j) sum += std::abs(state[j + 1] - state[j]);
    if (state.boundary() == Boundary::Periodic) sum += std::abs(state[0] - state[state.n_cells() - 1]);
    return sum;
}

double discrete_bv_norm(const GridState& state) { return state.dx() * total_variation(state); }

double discrete_l1_distance(const GridState& u, const GridState& v) {
    require_same_grid(u, v);
    double sum = 0.0;
    for (long j = 0; j < u.n_cells(); ++j) sum += std::abs(u[j] - v[j]);
    return u.dx() * sum;
}

InvariantReport check_max_principle(const Trajectory& trajectory) {
    if (trajectory.empty()) return make_report("max_principle", 0.0);
    const GridState& first = trajectory.front();
    auto report = make_report("max_principle", kBoundTol * data_scale(first));
    const double lo = first.min_value();
    const double hi = first.max_value();
    for (std::size_t n = 1; n < trajectory.size(); ++n) {
        const Excess e = bound_excess(trajectory[n], lo, hi);
        record(report, e.value, static_cast<long>(n) - 1, e.cell);
    }
    return report;
}

InvariantReport check_tvd(const Trajectory& trajectory) {
    if (trajectory.empty()) return make_report("tvd", 0.0);
    auto report = make_report("tvd", kBoundTol * data_scale(trajectory.front()));
    for (std::size_t n = 1; n < trajectory.size(); ++n) {
        const double growth = total_variation(trajectory[n]) - total_variation(trajectory[n - 1]);
        record(report, growth, static_cast<long>(n) - 1, -1);
    }
    return report;
}

InvariantReport check_conservation(const Trajectory& trajectory, const QuadratureWeights& weights,
                                   const TwoPointFlux& flux) {
    if (trajectory.empty()) return make_report("conservation", 0.0);
    const GridState& first = trajectory.front();
    auto report = make_report("conservation",
                              kConservationTol * data_scale(first) * std::max(1.0, first.geometry().length()));
    for (std::size_t n = 1; n < trajectory.size(); ++n) {
        record(report, conservation_excess(trajectory[n - 1], trajectory[n], weights, flux), static_cast<long>(n) - 1,
               -1);
    }
    return report;
}

InvariantReport check_l1_contraction(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size()) throw std::invalid_argument("trajectories differ in length");
    if (a.empty()) return make_report("l1_contraction", 0.0);
    const double scale = std::max(data_scale(a.front()), data_scale(b.front()));
    auto report = make_report("l1_contraction", kBoundTol * scale * std::max(1.0, a.front().geometry().length()));
    double previous = discrete_l1_distance(a.front(), b.front());
    for (std::size_t n = 1; n < a.size(); ++n) {
        const double d = discrete_l1_distance(a[n], b[n]);
        record(report, d - previous, static_cast<long>(n) - 1, -1);
        previous = d;
    }
    return report;
}

InvariantReport check_ordering(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size()) throw std::invalid_argument("trajectories differ in length");
    if (a.empty()) return make_report("monotone_ordering", 0.0);
    const double scale = std::max(data_scale(a.front()), data_scale(b.front()));
    auto report = make_report("monotone_ordering", kBoundTol * scale);
    require_same_grid(a.front(), b.front());

    bool a_below = true;
    bool b_below = true;
    for (long j = 0; j < a.front().n_cells(); ++j) {
        a_below = a_below && a.front()[j] <= b.front()[j];
        b_below = b_below && b.front()[j] <= a.front()[j];
    }
    if (!a_below && !b_below) {
        report.applicable = false;
        return report;
    }
    const Trajectory& low = a_below ? a : b;
    const Trajectory& high = a_below ? b : a;
    for (std::size_t n = 1; n < a.size(); ++n) {
        for (long j = 0; j < low[n].n_cells(); ++j) {
            record(report, low[n][j] - high[n][j], static_cast<long>(n) - 1, j);
        }
    }
    return report;
}

EntropyResidual cell_entropy_residual(const GridState& prev, const GridState& next,
                                      const QuadratureWeights& weights, const TwoPointFlux& flux, double c) {
    check_one_step(prev, next, weights, flux);
    return entropy_residual_unchecked(prev, next, weights, flux, c);
}

std::vector<double> kruzkov_constants(const GridState& initial) {
    const double lo = initial.min_value() - 0.1;
    const double hi = initial.max_value() + 0.1;
    std::vector<double> cs(17);
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = lo + (hi - lo) * static_cast<double>(i) / 16.0;
    return cs;
}

InvariantReport check_entropy(const Trajectory& trajectory, const QuadratureWeights& weights,
                              const TwoPointFlux& flux, const std::vector<double>& constants) {
    if (trajectory.empty()) return make_report("entropy", 0.0);
    auto report = make_report("entropy", kEntropyTol * data_scale(trajectory.front()));
    for (std::size_t n = 1; n < trajectory.size(); ++n) {
        check_one_step(trajectory[n - 1], trajectory[n], weights, flux);
        for (double c : constants) {
            const EntropyResidual r = entropy_residual_unchecked(trajectory[n - 1], trajectory[n], weights, flux, c);
            record(report, std::max(r.worst, 0.0), static_cast<long>(n) - 1, r.cell, c);
        }
    }
    return report;
}

// InvariantMonitor ------------------------------------------------------------------

void InvariantMonitor::Tracker::record(double excess, long step, long cell, std::optional<double> c) {
    nlcl::record(report, excess, step, cell, c);
}

InvariantMonitor::InvariantMonitor(const GridState& initial, const QuadratureWeights& weights,
                                   const TwoPointFlux& flux, bool entropy)
    : weights_(weights),
      flux_(flux),
      lo_(initial.min_value()),
      hi_(initial.max_value()),
      scale_(data_scale(initial)),
      length_(initial.geometry().length()),
      constants_(kruzkov_constants(initial)),
      entropy_(entropy),
      max_principle_{make_report("max_principle", kBoundTol * scale_)},
      tvd_{make_report("tvd", kBoundTol * scale_)},
      conservation_{make_report("conservation", kConservationTol * scale_ * std::max(1.0, length_))},
      entropy_tracker_{make_report("entropy", kEntropyTol * scale_)} {}

void InvariantMonitor::observe(const GridState& before, const GridState& after, long step_index) {
    const Excess e = bound_excess(after, lo_, hi_);
    max_principle_.record(e.value, step_index, e.cell);
    tvd_.record(total_variation(after) - total_variation(before), step_index, -1);
    conservation_.record(conservation_excess(before, after, weights_, flux_), step_index, -1);
    if (entropy_) {
        for (double c : constants_) {
            const EntropyResidual r = entropy_residual_unchecked(before, after, weights_, flux_, c);
            entropy_tracker_.record(std::max(r.worst, 0.0), step_index, r.cell, c);
        }
    }
}

std::vector<InvariantReport> InvariantMonitor::reports() const {
    std::vector<InvariantReport> out{max_principle_.report, tvd_.report, conservation_.report};
    if (entropy_) out.push_back(entropy_tracker_.report);
    return out;
}

bool InvariantMonitor::all_passed() const {
    for (const auto& r : reports()) {
        if (!r.passed) return false;
    }
    return true;
}

}  // namespace nlcl
