#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlcl {

enum class Boundary { Periodic, ConstantExtension };

std::string_view boundary_name(Boundary b);
Boundary parse_boundary(std::string_view key);

/// Uniform 1-D grid: n_cells cells of width dx, cell j = [x0 + j dx, x0 + (j+1) dx).
struct GridGeometry {
    double x0 = 0.0;
    double dx = 1.0;
    long n_cells = 1;
    Boundary boundary = Boundary::Periodic;

    /// Geometry covering [x_min, x_max]; throws unless the length is a whole
    /// number of cells (relative slack 1e-9).
    static GridGeometry covering(double x_min, double x_max, double dx, Boundary boundary);

    double x_end() const { return x0 + static_cast<double>(n_cells) * dx; }
    double length() const { return static_cast<double>(n_cells) * dx; }
};

/// Cell averages on a uniform grid at one time level.
class GridState {
public:
    GridState(GridGeometry geometry, std::vector<double> values, double time = 0.0);

    const GridGeometry& geometry() const { return geometry_; }
    double dx() const { return geometry_.dx; }
    double x0() const { return geometry_.x0; }
    long n_cells() const { return geometry_.n_cells; }
    Boundary boundary() const { return geometry_.boundary; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](long j) const { return values_[static_cast<std::size_t>(j)]; }

    /// Ghost-aware read: wraps for periodic grids, clamps to the edge cell for
    /// constant extension.
    double at(long j) const {
        const long n = geometry_.n_cells;
        if (j >= 0 && j < n) return values_[static_cast<std::size_t>(j)];
        if (geometry_.boundary == Boundary::Periodic) {
            long m = j % n;
            if (m < 0) m += n;
            return values_[static_cast<std::size_t>(m)];
        }
        return values_[j < 0 ? 0 : static_cast<std::size_t>(n - 1)];
    }

    double cell_left(long j) const { return geometry_.x0 + static_cast<double>(j) * geometry_.dx; }
    double cell_center(long j) const { return geometry_.x0 + (static_cast<double>(j) + 0.5) * geometry_.dx; }

    /// Index of the half-open cell containing x; may lie outside [0, n_cells).
    long cell_index(double x) const;

    double min_value() const;
    double max_value() const;

private:
    GridGeometry geometry_;
    std::vector<double> values_;
    double time_;
};

using Trajectory = std::vector<GridState>;

/// Initial datum u0. `breakpoints` lists the points where u0 may be
/// discontinuous or change formula; between breakpoints the function should be
/// smooth. A polynomial of degree <= 9 between breakpoints is averaged exactly.
struct InitialData {
    std::function<double(double)> u0;
    std::vector<double> breakpoints;
};

/// Cell averages of u0: each cell is split at the breakpoints inside it and
/// every piece is integrated with 5-point Gauss-Legendre. Throws on non-finite
/// samples.
GridState cell_average_init(const InitialData& data, const GridGeometry& geometry);

/// Piecewise-constant field at x; cells are half-open so an edge belongs to the
/// cell on its right. Outside a constant-extension grid the edge value is used;
/// periodic grids wrap.
double reconstruct(const GridState& state, double x);

/// Piecewise constant in time as well: the stored state with the largest time
/// not exceeding t (the first one if t precedes all of them).
double reconstruct(const Trajectory& trajectory, double x, double t);

/// Exact integral of |u - v| over [a, b] for two piecewise-constant fields.
double l1_distance(const GridState& u, const GridState& v, double a, double b);

}  // namespace nlcl
