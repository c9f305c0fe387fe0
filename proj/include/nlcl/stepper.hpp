#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "nlcl/flux.hpp"
#include "nlcl/grid.hpp"
#include "nlcl/kernel.hpp"

namespace nlcl {

struct SchemeConfig {
    Kernel kernel;
    TwoPointFlux flux;
    /// dt/dx, held fixed under refinement. When empty, run() derives it from
    /// the CFL bound of the initial data times `safety`.
    std::optional<double> mesh_ratio;
    double final_time = 0.0;
    double safety = 0.9;
};

/// Thrown when a configured mesh ratio breaks lambda (L1 + L2) <= 1.
class CflViolation : public std::invalid_argument {
public:
    CflViolation(double requested, double bound);
    double requested() const { return requested_; }
    double bound() const { return bound_; }

private:
    double requested_;
    double bound_;
};

struct CflStep {
    double dt;
    /// L1 + L2 vanished (zero flux); dt fell back to safety * dx.
    bool degenerate = false;
};

/// Largest admissible mesh ratio 1/(L1 + L2) over [b1, b2]; infinity for a zero flux.
double max_mesh_ratio(const TwoPointFlux& flux, double b1, double b2);

/// dt = safety dx / (L1 + L2) with the Lipschitz box taken from the data range.
/// The maximum principle keeps the box fixed, so one evaluation suffices.
CflStep cfl_dt(const GridState& state, const SchemeConfig& config);

/// One forward-in-time step
///   u_j - dt sum_k [g(u_j, u_{j+k}) - g(u_{j-k}, u_j)] W_k.
/// Cells are distributed over OpenMP threads; each cell sums over k in a
/// fixed order, so the result does not depend on the thread count.
/// Throws std::invalid_argument if the weights were built for another dx.
GridState step(const GridState& state, const QuadratureWeights& weights, const TwoPointFlux& flux, double dt);

/// Serial reference of step(): same arithmetic per cell, ghost reads through
/// GridState::at and per-call flux dispatch. Kept for testing and benchmarks.
GridState step_reference(const GridState& state, const QuadratureWeights& weights, const TwoPointFlux& flux,
                         double dt);

/// Wide numerical flux at the interface between cells j and j+1:
///   dx sum_k W_k sum_{l=1..k} g(u_{j+1-l}, u_{j+1-l+k}).
/// Equals f(c) on a constant state.
double wide_flux(const GridState& state, const QuadratureWeights& weights, const TwoPointFlux& flux, long j);

/// The same update written in flux-difference form
///   u_j - (dt/dx) [G_{j+1/2} - G_{j-1/2}]
/// with the wide flux G. Independent route used to cross-check step().
GridState step_conservative_form(const GridState& state, const QuadratureWeights& weights,
                                 const TwoPointFlux& flux, double dt);

/// Called after every step with the states before and after it.
using StepObserver = std::function<void(const GridState& before, const GridState& after, long step_index)>;

struct RunOptions {
    /// Number of equally spaced output times in [0, T], endpoints included.
    /// Steps are shortened to land on each one exactly.
    int snapshots = 2;
    /// Store every time level instead of only the snapshots.
    bool record_every_step = false;
    StepObserver observer;
};

/// Marches the cell averages of `data` on `geometry` to config.final_time with
/// dt = mesh_ratio * dx. Throws CflViolation for an inadmissible mesh ratio and
/// std::runtime_error (naming the step) if a value turns non-finite.
Trajectory run(const SchemeConfig& config, const InitialData& data, const GridGeometry& geometry,
               const RunOptions& options = {});

/// Same, starting from given cell averages.
Trajectory run(const SchemeConfig& config, const GridState& initial, const RunOptions& options = {});

/// Mesh ratio run() would use for this initial state.
double effective_mesh_ratio(const SchemeConfig& config, const GridState& initial);

}  // namespace nlcl
