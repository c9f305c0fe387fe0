#include "nlcl/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace nlcl {

std::string_view boundary_name(Boundary b) {
    return b == Boundary::Periodic ? "periodic" : "constant_extension";
}

Boundary parse_boundary(std::string_view key) {
    if (key == "periodic") return Boundary::Periodic;
    if (key == "constant_extension" || key == "constant") return Boundary::ConstantExtension;
    throw std::invalid_argument("unknown boundary '" + std::string(key) + "' (valid: periodic, constant_extension)");
}

GridGeometry GridGeometry::covering(double x_min, double x_max, double dx, Boundary boundary) {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("dx must be positive and finite");
    if (!(x_max > x_min)) throw std::invalid_argument("domain must satisfy x_min < x_max");
    const double cells = (x_max - x_min) / dx;
    const double n = std::round(cells);
    if (n < 1.0 || std::abs(cells - n) > 1e-9 * std::max(1.0, cells)) {
        throw std::invalid_argument("domain length is not a whole number of cells");
    }
    return GridGeometry{x_min, dx, static_cast<long>(n), boundary};
}

GridState::GridState(GridGeometry geometry, std::vector<double> values, double time)
    : geometry_(geometry), values_(std::move(values)), time_(time) {
    if (values_.empty()) throw std::invalid_argument("grid state needs at least one cell");
    if (static_cast<long>(values_.size()) != geometry_.n_cells) {
        throw std::invalid_argument("value count does not match the geometry");
    }
    if (!(geometry_.dx > 0.0)) throw std::invalid_argument("dx must be positive");
}

long GridState::cell_index(double x) const {
    auto j = static_cast<long>(std::floor((x - geometry_.x0) / geometry_.dx));
    // Correct the floor against the exact edge positions.
    if (cell_left(j + 1) <= x) ++j;
    else if (cell_left(j) > x) --j;
    return j;
}

double GridState::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double GridState::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

namespace {

// Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {
    -0.90617984593866399280, -0.53846931010568309104, 0.0, 0.53846931010568309104, 0.90617984593866399280};
constexpr std::array<double, 5> kGaussWeights = {
    0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889, 0.47862867049936646804,
    0.23692688505618908751};

double gauss5(const std::function<double(double)>& u, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
        const double v = u(mid + half * kGaussNodes[i]);
        if (!std::isfinite(v)) throw std::invalid_argument("initial data returned a non-finite sample");
        sum += kGaussWeights[i] * v;
    }
    return half * sum;
}

}  // namespace

GridState cell_average_init(const InitialData& data, const GridGeometry& geometry) {
    if (!data.u0) throw std::invalid_argument("initial data has no function");
    std::vector<double> breaks = data.breakpoints;
    std::sort(breaks.begin(), breaks.end());

    std::vector<double> values(static_cast<std::size_t>(geometry.n_cells));
    for (long j = 0; j < geometry.n_cells; ++j) {
        const double a = geometry.x0 + static_cast<double>(j) * geometry.dx;
        const double b = geometry.x0 + static_cast<double>(j + 1) * geometry.dx;
        double integral = 0.0;
        double left = a;
        for (auto it = std::upper_bound(breaks.begin(), breaks.end(), a); it != breaks.end() && *it < b; ++it) {
            integral += gauss5(data.u0, left, *it);
            left = *it;
        }
        integral += gauss5(data.u0, left, b);
        values[static_cast<std::size_t>(j)] = integral / (b - a);
    }
    return GridState(geometry, std::move(values), 0.0);
}

double reconstruct(const GridState& state, double x) { return state.at(state.cell_index(x)); }

double reconstruct(const Trajectory& trajectory, double x, double t) {
    if (trajectory.empty()) throw std::invalid_argument("reconstruct: empty trajectory");
    auto it = std::upper_bound(trajectory.begin(), trajectory.end(), t,
                               [](double time, const GridState& s) { return time < s.time(); });
    if (it != trajectory.begin()) --it;
    return reconstruct(*it, x);
}

double l1_distance(const GridState& u, const GridState& v, double a, double b) {
    if (!(b >= a)) throw std::invalid_argument("l1_distance: empty window");
    std::vector<double> edges{a, b};
    for (const GridState* s : {&u, &v}) {
        for (long j = s->cell_index(a) + 1; j <= s->cell_index(b); ++j) {
            const double e = s->cell_left(j);
            if (e > a && e < b) edges.push_back(e);
        }
    }
    std::sort(edges.begin(), edges.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double len = edges[i + 1] - edges[i];
        if (len <= 0.0) continue;
        const double mid = 0.5 * (edges[i] + edges[i + 1]);
        sum += std::abs(reconstruct(u, mid) - reconstruct(v, mid)) * len;
    }
    return sum;
}

}  // namespace nlcl
