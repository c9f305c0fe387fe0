#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlcl/flux.hpp"
#include "nlcl/grid.hpp"
#include "nlcl/kernel.hpp"

namespace nlcl {

/// Verdict of one invariant check. `violation` is the worst excess over the
/// admissible value (zero when the invariant holds exactly).
struct InvariantReport {
    std::string name;
    bool passed = true;
    double violation = 0.0;
    double tolerance = 0.0;
    long step = -1;  // index of the offending step (state n -> n+1), -1 if none
    long cell = -1;
    std::optional<double> kruzkov_constant;
    /// False when the check had nothing to examine (e.g. unordered data for
    /// the ordering check); such reports pass.
    bool applicable = true;
};

// Discrete norms ---------------------------------------------------------------

/// dx * sum |u_j|
double discrete_l1_norm(const GridState& state);
/// sum |u_{j+1} - u_j| over interior neighbours, plus the wrap-around pair on
/// periodic grids.
double total_variation(const GridState& state);
/// dx * total_variation
double discrete_bv_norm(const GridState& state);
/// dx * sum |u_j - v_j|; grids must match.
double discrete_l1_distance(const GridState& u, const GridState& v);

// Trajectory checks --------------------------------------------------------------

/// min u^0 <= u^n_j <= max u^0, tolerance 1e-12 (1 + max|u^0|).
InvariantReport check_max_principle(const Trajectory& trajectory);

/// TV(u^{n+1}) <= TV(u^n), tolerance 1e-12 (1 + max|u^0|).
InvariantReport check_tvd(const Trajectory& trajectory);

/// Mass dx sum u_j changes only through the wide flux at the two domain ends
/// (no change at all on periodic grids). Needs consecutive time levels unless
/// the grid is periodic. Per-step tolerance 1e-13 (1 + max|u^0|) max(1, length).
InvariantReport check_conservation(const Trajectory& trajectory, const QuadratureWeights& weights,
                                   const TwoPointFlux& flux);

/// dx sum |u^n - v^n| is non-increasing in n. Holds exactly on periodic grids;
/// with constant extension, fluxes through the truncated ends can raise it.
InvariantReport check_l1_contraction(const Trajectory& a, const Trajectory& b);

/// If u^0 <= v^0 (or v^0 <= u^0) componentwise, the order persists at every level.
InvariantReport check_ordering(const Trajectory& a, const Trajectory& b);

// Cell entropy inequality ------------------------------------------------------------

struct EntropyResidual {
    double worst;  // max_j residual_j
    long cell;
};

/// residual_j = |u^{n+1}_j - c| - |u^n_j - c|
///              + dt sum_k [q(u_j, u_{j+k}; c) - q(u_{j-k}, u_j; c)] W_k
/// with dt = t^{n+1} - t^n. Throws std::invalid_argument unless `next` is one
/// step of the scheme applied to `prev`.
EntropyResidual cell_entropy_residual(const GridState& prev, const GridState& next,
                                      const QuadratureWeights& weights, const TwoPointFlux& flux, double c);

/// 17 equally spaced constants on [min u^0 - 0.1, max u^0 + 0.1].
std::vector<double> kruzkov_constants(const GridState& initial);

/// Entropy residuals of every consecutive pair for every constant; tolerance
/// 1e-10 (1 + max|u^0|).
InvariantReport check_entropy(const Trajectory& trajectory, const QuadratureWeights& weights,
                              const TwoPointFlux& flux, const std::vector<double>& constants);

/// Streams the single-trajectory checks step by step, so long runs need not
/// store every time level. Feed it from a StepObserver.
class InvariantMonitor {
public:
    InvariantMonitor(const GridState& initial, const QuadratureWeights& weights, const TwoPointFlux& flux,
                     bool entropy = true);

    void observe(const GridState& before, const GridState& after, long step_index);

    /// Max principle, TVD, conservation and (if enabled) entropy, in that order.
    std::vector<InvariantReport> reports() const;
    bool all_passed() const;

private:
    struct Tracker {
        InvariantReport report;
        void record(double excess, long step, long cell, std::optional<double> c = std::nullopt);
    };

    QuadratureWeights weights_;
    TwoPointFlux flux_;
    double lo_;
    double hi_;
    double scale_;
    double length_;
    std::vector<double> constants_;
    bool entropy_;
    Tracker max_principle_;
    Tracker tvd_;
    Tracker conservation_;
    Tracker entropy_tracker_;
};

}  // namespace nlcl
