#include "nlcl/stepper.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace nlcl {

namespace {

std::string cfl_message(double requested, double bound) {
    std::ostringstream os;
    os.precision(17);
    os << "mesh ratio dt/dx = " << requested << " violates the CFL bound dt/dx * (L1 + L2) <= 1, "
       << "which requires dt/dx <= " << bound;
    return os.str();
}

void check_compatible(const GridState& state, const QuadratureWeights& weights) {
    if (std::abs(state.dx() - weights.dx()) > 1e-12 * state.dx()) {
        throw std::invalid_argument("quadrature weights were built for a different dx");
    }
}

// Copies the cells plus `pad` ghosts on either side.
std::vector<double> padded_values(const GridState& state, long pad) {
    const long n = state.n_cells();
    std::vector<double> out(static_cast<std::size_t>(n + 2 * pad));
    for (long j = -pad; j < n + pad; ++j) out[static_cast<std::size_t>(j + pad)] = state.at(j);
    return out;
}

}  // namespace

CflViolation::CflViolation(double requested, double bound)
    : std::invalid_argument(cfl_message(requested, bound)), requested_(requested), bound_(bound) {}

double max_mesh_ratio(const TwoPointFlux& flux, double b1, double b2) {
    const double sum = lipschitz_box_bound(flux, b1, b2).sum();
    return sum > 0.0 ? 1.0 / sum : std::numeric_limits<double>::infinity();
}

CflStep cfl_dt(const GridState& state, const SchemeConfig& config) {
    const double sum = lipschitz_box_bound(config.flux, state.min_value(), state.max_value()).sum();
    if (sum <= 0.0) return {config.safety * state.dx(), true};
    return {config.safety * state.dx() / sum, false};
}

GridState step(const GridState& state, const QuadratureWeights& weights, const TwoPointFlux& flux, double dt) {
    check_compatible(state, weights);
    const long n = state.n_cells();
    const long reach = weights.reach();
    const std::vector<double> u = padded_values(state, reach);
    const std::span<const double> w = weights.values();
    std::vector<double> next(static_cast<std::size_t>(n));

    flux.visit([&](const auto& g) {
        const double* c = u.data() + reach;
        double* out = next.data();
#pragma omp parallel for schedule(static)
        for (long j = 0; j < n; ++j) {
            const double uj = c[j];
            double acc = 0.0;
            for (long k = 1; k <= reach; ++k) {
                acc += (g(uj, c[j + k]) - g(c[j - k], uj)) * w[static_cast<std::size_t>(k - 1)];
            }
            out[j] = uj - dt * acc;
        }
    });
    return GridState(state.geometry(), std::move(next), state.time() + dt);
}

GridState step_reference(const GridState& state, const QuadratureWeights& weights, const TwoPointFlux& flux,
                         double dt) {
    check_compatible(state, weights);
    const long n = state.n_cells();
    std::vector<double> next(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
        const double uj = state[j];
        double acc = 0.0;
        for (long k = 1; k <= weights.reach(); ++k) {
            acc += (flux(uj, state.at(j + k)) - flux(state.at(j - k), uj)) * weights[k];
        }
        next[static_cast<std::size_t>(j)] = uj - dt * acc;
    }
    return GridState(state.geometry(), std::move(next), state.time() + dt);
}

double wide_flux(const GridState& state, const QuadratureWeights& weights, const TwoPointFlux& flux, long j) {
    double total = 0.0;
    for (long k = 1; k <= weights.reach(); ++k) {
        double inner = 0.0;
        for (long l = 1; l <= k; ++l) inner += flux(state.at(j + 1 - l), state.at(j + 1 - l + k));
        total += inner * weights[k];
    }
    return total * weights.dx();
}

GridState step_conservative_form(const GridState& state, const QuadratureWeights& weights,
                                 const TwoPointFlux& flux, double dt) {
    check_compatible(state, weights);
    const long n = state.n_cells();
    const long reach = weights.reach();
    const std::vector<double> u = padded_values(state, 2 * reach);
    const std::span<const double> w = weights.values();
    const double dx = weights.dx();

    // interface[i] is the flux between cells i-1 and i, i = 0..n.
    std::vector<double> interface(static_cast<std::size_t>(n + 1));
    flux.visit([&](const auto& g) {
        const double* c = u.data() + 2 * reach;
#pragma omp parallel for schedule(static)
        for (long i = 0; i <= n; ++i) {
            const long j = i - 1;
            double total = 0.0;
            for (long k = 1; k <= reach; ++k) {
                double inner = 0.0;
                for (long l = 1; l <= k; ++l) inner += g(c[j + 1 - l], c[j + 1 - l + k]);
                total += inner * w[static_cast<std::size_t>(k - 1)];
            }
            interface[static_cast<std::size_t>(i)] = total * dx;
        }
    });

    std::vector<double> next(static_cast<std::size_t>(n));
    const double ratio = dt / dx;
    for (long j = 0; j < n; ++j) {
        const auto i = static_cast<std::size_t>(j);
        next[i] = state[j] - ratio * (interface[i + 1] - interface[i]);
    }
    return GridState(state.geometry(), std::move(next), state.time() + dt);
}

double effective_mesh_ratio(const SchemeConfig& config, const GridState& initial) {
    const double bound = max_mesh_ratio(config.flux, initial.min_value(), initial.max_value());
    if (config.mesh_ratio) {
        const double lambda = *config.mesh_ratio;
        if (!(lambda > 0.0)) throw std::invalid_argument("mesh ratio must be positive");
        if (lambda > bound * (1.0 + 1e-12)) throw CflViolation(lambda, bound);
        return lambda;
    }
    return cfl_dt(initial, config).dt / initial.dx();
}

Trajectory run(const SchemeConfig& config, const InitialData& data, const GridGeometry& geometry,
               const RunOptions& options) {
    return run(config, cell_average_init(data, geometry), options);
}

Trajectory run(const SchemeConfig& config, const GridState& initial, const RunOptions& options) {
    if (!(config.final_time >= 0.0)) throw std::invalid_argument("final time must be nonnegative");
    const double dt = effective_mesh_ratio(config, initial) * initial.dx();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step is not a positive finite number");
    const QuadratureWeights weights = compute_weights(config.kernel, initial.dx());
    const double T = config.final_time;

    std::vector<double> outputs;
    const int snaps = std::max(options.snapshots, 2);
    for (int m = 1; m < snaps; ++m) outputs.push_back(T * static_cast<double>(m) / static_cast<double>(snaps - 1));

    Trajectory trajectory{initial};
    if (T == 0.0) return trajectory;

    GridState current = initial;
    long step_index = 0;
    // Time levels are anchored to the last output time to keep long runs from
    // accumulating drift: t = anchor + steps * dt.
    double anchor = 0.0;
    long since_anchor = 0;
    for (double target : outputs) {
        while (current.time() < target) {
            const double full = anchor + static_cast<double>(since_anchor + 1) * dt;
            const bool last = full >= target;
            const double next_time = last ? target : full;
            GridState next = step(current, weights, config.flux, next_time - current.time());
            next.set_time(next_time);
            for (double v : next.values()) {
                if (!std::isfinite(v)) {
                    throw std::runtime_error("non-finite value after step " + std::to_string(step_index + 1));
                }
            }
            if (options.observer) options.observer(current, next, step_index);
            ++step_index;
            ++since_anchor;
            if (options.record_every_step && !last) trajectory.push_back(next);
            current = std::move(next);
        }
        anchor = target;
        since_anchor = 0;
        trajectory.push_back(current);
    }
    return trajectory;
}

}  // namespace nlcl
