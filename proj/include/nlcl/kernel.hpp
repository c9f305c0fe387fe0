#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlcl {

/// Shape of the normalized density rho on [0,1]. Every profile integrates to
/// one and ships with a closed-form antiderivative.
enum class Profile {
    Uniform,     // rho(s) = 1
    Triangular,  // rho(s) = 2(1 - s)
    Quadratic,   // rho(s) = 3(1 - s)^2
};

std::string_view profile_name(Profile p);
/// Accepts "uniform", "triangular" (or "triangular_decreasing") and "quadratic".
Profile parse_profile(std::string_view key);
std::vector<std::string> profile_keys();

/// Interaction kernel omega(h) = rho(h/delta)/delta supported on [0, delta].
class Kernel {
public:
    Kernel(Profile profile, double delta);

    Profile profile() const { return profile_; }
    double delta() const { return delta_; }

    /// Pointwise density; zero outside [0, delta].
    double operator()(double h) const;

    /// Exact integral of omega over [a, b] with the limits clamped to [0, delta].
    /// Throws std::invalid_argument for a < 0 or a > b.
    double mass(double a, double b) const;

private:
    // Antiderivative of rho on [0,1], P(0) = 0, P(1) = 1.
    double cumulative(double s) const;

    Profile profile_;
    double delta_;
};

inline double kernel_mass(const Kernel& kernel, double a, double b) { return kernel.mass(a, b); }

/// Discrete horizon weights W_1..W_{max(r,1)} for a cell width dx, with
/// r = floor(delta/dx). W_k carries the kernel mass of the k-th cell divided by
/// k*dx; the tail [r*dx, delta] is lumped into W_r.
class QuadratureWeights {
public:
    QuadratureWeights(double dx, double delta, long r, std::vector<double> weights);

    double dx() const { return dx_; }
    double delta() const { return delta_; }
    /// floor(delta/dx); may be zero.
    long r() const { return r_; }
    /// Stencil half-width max(r, 1).
    long reach() const { return static_cast<long>(weights_.size()); }

    /// 1-based access, k in [1, reach()].
    double operator[](long k) const { return weights_[static_cast<std::size_t>(k - 1)]; }
    std::span<const double> values() const { return weights_; }

    /// dx * sum_k k W_k; equals one up to round-off.
    double first_moment() const;

private:
    double dx_;
    double delta_;
    long r_;
    std::vector<double> weights_;
};

QuadratureWeights compute_weights(const Kernel& kernel, double dx);

}  // namespace nlcl
