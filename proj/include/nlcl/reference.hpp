#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlcl/flux.hpp"
#include "nlcl/grid.hpp"

namespace nlcl {

/// Entropy solution of u_t + (u^2/2)_x = 0 with Riemann data uL (x < x_jump),
/// uR (x >= x_jump): a shock at speed (uL + uR)/2 if uL > uR, otherwise a
/// rarefaction fan.
double burgers_riemann_exact(double uL, double uR, double x, double t, double x_jump = 0.0);

/// u0(x - a t), wrapped into [x_min, x_min + period) when a period is given.
double linear_advection_exact(const std::function<double(double)>& u0, double speed, double x, double t,
                              std::optional<double> period = std::nullopt, double x_min = 0.0);

/// A closed-form local solution u(x, t). Between consecutive breakpoints the
/// function is smooth; if `piecewise_affine` it is affine there, and l1_error
/// integrates exactly.
struct ExactSolution {
    std::function<double(double x, double t)> value;
    std::function<std::vector<double>(double t)> breakpoints;
    bool piecewise_affine = false;
};

ExactSolution burgers_riemann_solution(double uL, double uR, double x_jump = 0.0);
ExactSolution advected_solution(std::function<double(double)> u0, double speed, double x_min, double period);

/// Integral over [a, b] of |u^{dx}(x, t) - u_exact(x, t)| at the state's time.
/// Pieces are cut at cell edges and at the exact solution's breakpoints; affine
/// pieces are integrated in closed form (including the sign change), smooth
/// pieces with composite 5-point Gauss. Throws if [a, b] leaves the grid.
double l1_error(const GridState& state, const ExactSolution& exact, double a, double b);

/// A named test problem with everything a run or study needs.
struct Problem {
    std::string name;
    InitialData initial;
    LocalFlux local;
    double x_min = 0.0;
    double x_max = 1.0;
    Boundary boundary = Boundary::Periodic;
    double final_time = 0.5;
    double window_min = 0.0;
    double window_max = 1.0;
    /// Range of u0, used for the CFL box at configuration time.
    double data_min = 0.0;
    double data_max = 1.0;
    std::optional<ExactSolution> exact;
};

struct ProblemParams {
    /// Riemann states; each problem has its own defaults.
    std::optional<double> u_left;
    std::optional<double> u_right;
    double x_jump = 0.0;
    double speed = 1.0;
    double value = 1.0;  // for "constant"
};

/// "burgers_shock", "burgers_rarefaction", "advect_bump", "riemann" or "constant".
/// Defaults: burgers_shock (1, 0), burgers_rarefaction (-1, 1), riemann (1, 0).
Problem make_problem(std::string_view name, const ProblemParams& params = {});
std::vector<std::string> problem_keys();

/// sin^4(pi x): smooth, periodic on [0, 1], values in [0, 1].
double bump(double x);

}  // namespace nlcl
