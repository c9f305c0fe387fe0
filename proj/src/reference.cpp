#include "nlcl/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlcl {

double burgers_riemann_exact(double uL, double uR, double x, double t, double x_jump) {
    const double xi = x - x_jump;
    if (t <= 0.0) return xi < 0.0 ? uL : uR;
    if (uL > uR) {
        const double s = 0.5 * (uL + uR);
        return xi < s * t ? uL : uR;
    }
    if (xi <= uL * t) return uL;
    if (xi >= uR * t) return uR;
    return xi / t;
}

double linear_advection_exact(const std::function<double(double)>& u0, double speed, double x, double t,
                              std::optional<double> period, double x_min) {
    double y = x - speed * t;
    if (period) {
        y = x_min + std::fmod(y - x_min, *period);
        if (y < x_min) y += *period;
    }
    return u0(y);
}

ExactSolution burgers_riemann_solution(double uL, double uR, double x_jump) {
    ExactSolution e;
    e.value = [=](double x, double t) { return burgers_riemann_exact(uL, uR, x, t, x_jump); };
    e.breakpoints = [=](double t) -> std::vector<double> {
        if (t <= 0.0) return {x_jump};
        if (uL > uR) return {x_jump + 0.5 * (uL + uR) * t};
        return {x_jump + uL * t, x_jump + uR * t};
    };
    e.piecewise_affine = true;
    return e;
}

ExactSolution advected_solution(std::function<double(double)> u0, double speed, double x_min, double period) {
    ExactSolution e;
    e.value = [=](double x, double t) { return linear_advection_exact(u0, speed, x, t, period, x_min); };
    e.breakpoints = [](double) { return std::vector<double>{}; };
    e.piecewise_affine = false;
    return e;
}

namespace {

// Integral of |d| for d affine on an interval of length len with end values d0, d1.
double abs_affine_integral(double d0, double d1, double len) {
    if ((d0 >= 0.0 && d1 >= 0.0) || (d0 <= 0.0 && d1 <= 0.0)) return 0.5 * len * std::abs(d0 + d1);
    return 0.5 * len * (d0 * d0 + d1 * d1) / (std::abs(d0) + std::abs(d1));
}

constexpr std::array<double, 5> kNodes = {-0.90617984593866399280, -0.53846931010568309104, 0.0,
                                          0.53846931010568309104, 0.90617984593866399280};
constexpr std::array<double, 5> kWeights = {0.23692688505618908751, 0.47862867049936646804,
                                            0.56888888888888888889, 0.47862867049936646804,
                                            0.23692688505618908751};

}  // namespace

double l1_error(const GridState& state, const ExactSolution& exact, double a, double b) {
    const double lo = state.x0();
    const double hi = state.geometry().x_end();
    if (a < lo - 1e-12 || b > hi + 1e-12 || a > b) throw std::invalid_argument("l1_error: window outside the grid");
    const double t = state.time();

    std::vector<double> cuts{a, b};
    for (long j = state.cell_index(a) + 1; j <= state.cell_index(b); ++j) {
        const double edge = state.cell_left(j);
        if (edge > a && edge < b) cuts.push_back(edge);
    }
    for (double p : exact.breakpoints(t)) {
        if (p > a && p < b) cuts.push_back(p);
    }
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double p = cuts[i];
        const double q = cuts[i + 1];
        const double len = q - p;
        if (len <= 0.0) continue;
        const double u = reconstruct(state, 0.5 * (p + q));
        if (exact.piecewise_affine) {
            // Sample strictly inside the piece; extrapolate to the ends.
            const double d1 = u - exact.value(p + 0.25 * len, t);
            const double d2 = u - exact.value(p + 0.75 * len, t);
            const double half_step = 0.5 * (d2 - d1);
            total += abs_affine_integral(d1 - half_step, d2 + half_step, len);
        } else {
            constexpr int kSub = 4;
            const double h = len / kSub;
            for (int s = 0; s < kSub; ++s) {
                const double mid = p + (s + 0.5) * h;
                double sum = 0.0;
                for (std::size_t g = 0; g < kNodes.size(); ++g) {
                    sum += kWeights[g] * std::abs(u - exact.value(mid + 0.5 * h * kNodes[g], t));
                }
                total += 0.5 * h * sum;
            }
        }
    }
    return total;
}

double bump(double x) {
    const double s = std::sin(std::numbers::pi * x);
    return s * s * s * s;
}

std::vector<std::string> problem_keys() {
    return {"burgers_shock", "burgers_rarefaction", "advect_bump", "riemann", "constant"};
}

Problem make_problem(std::string_view name, const ProblemParams& params) {
    Problem p;
    p.name = std::string(name);
    if (name == "burgers_shock" || name == "burgers_rarefaction" || name == "riemann") {
        const bool shock = name == "burgers_shock";
        const bool fan = name == "burgers_rarefaction";
        const double uL = params.u_left.value_or(fan ? -1.0 : 1.0);
        const double uR = params.u_right.value_or(fan ? 1.0 : 0.0);
        if (shock && !(uL > uR)) throw std::invalid_argument("burgers_shock needs u_left > u_right");
        if (fan && !(uL < uR)) throw std::invalid_argument("burgers_rarefaction needs u_left < u_right");
        const double xj = params.x_jump;
        p.initial = InitialData{[=](double x) { return x < xj ? uL : uR; }, {xj}};
        p.local = LocalFlux::burgers();
        p.boundary = Boundary::ConstantExtension;
        p.final_time = 0.5;
        if (fan) {
            p.x_min = xj - 2.0;
            p.x_max = xj + 2.0;
            p.window_min = xj - 1.0;
            p.window_max = xj + 1.0;
        } else {
            p.x_min = xj - 1.0;
            p.x_max = xj + 2.0;
            p.window_min = xj - 0.5;
            p.window_max = xj + 1.5;
        }
        p.data_min = std::min(uL, uR);
        p.data_max = std::max(uL, uR);
        if (shock || fan) p.exact = burgers_riemann_solution(uL, uR, xj);
        return p;
    }
    if (name == "advect_bump") {
        const double a = params.speed;
        p.initial = InitialData{bump, {}};
        p.local = LocalFlux::linear(a);
        p.x_min = 0.0;
        p.x_max = 1.0;
        p.boundary = Boundary::Periodic;
        p.final_time = 1.0;
        p.window_min = 0.0;
        p.window_max = 1.0;
        p.data_min = 0.0;
        p.data_max = 1.0;
        p.exact = advected_solution(bump, a, 0.0, 1.0);
        return p;
    }
    if (name == "constant") {
        const double c = params.value;
        p.initial = InitialData{[=](double) { return c; }, {}};
        p.local = LocalFlux::burgers();
        p.x_min = 0.0;
        p.x_max = 1.0;
        p.boundary = Boundary::Periodic;
        p.final_time = 0.5;
        p.window_min = 0.0;
        p.window_max = 1.0;
        p.data_min = c;
        p.data_max = c;
        ExactSolution e;
        e.value = [=](double, double) { return c; };
        e.breakpoints = [](double) { return std::vector<double>{}; };
        e.piecewise_affine = true;
        p.exact = e;
        return p;
    }
    throw std::invalid_argument("unknown problem '" + std::string(name) +
                                "' (valid: burgers_shock, burgers_rarefaction, advect_bump, riemann, constant)");
}

}  // namespace nlcl
