#include "nlcl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlcl {

std::string_view profile_name(Profile p) {
    switch (p) {
    case Profile::Uniform: return "uniform";
    case Profile::Triangular: return "triangular";
    case Profile::Quadratic: return "quadratic";
    }
    return "unknown";
}

Profile parse_profile(std::string_view key) {
    if (key == "uniform") return Profile::Uniform;
    if (key == "triangular" || key == "triangular_decreasing") return Profile::Triangular;
    if (key == "quadratic") return Profile::Quadratic;
    throw std::invalid_argument("unknown kernel profile '" + std::string(key) +
                                "' (valid: uniform, triangular, quadratic)");
}

std::vector<std::string> profile_keys() { return {"uniform", "triangular", "quadratic"}; }

Kernel::Kernel(Profile profile, double delta) : profile_(profile), delta_(delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("kernel horizon must be positive and finite");
    }
}

double Kernel::operator()(double h) const {
    if (h < 0.0 || h > delta_) return 0.0;
    const double s = h / delta_;
    double rho = 0.0;
    switch (profile_) {
    case Profile::Uniform: rho = 1.0; break;
    case Profile::Triangular: rho = 2.0 * (1.0 - s); break;
    case Profile::Quadratic: rho = 3.0 * (1.0 - s) * (1.0 - s); break;
    }
    return rho / delta_;
}

double Kernel::cumulative(double s) const {
    switch (profile_) {
    case Profile::Uniform: return s;
    case Profile::Triangular: return s * (2.0 - s);
    case Profile::Quadratic: {
        // 1 - (1-s)^3 expanded to avoid cancellation near s = 0.
        return s * (3.0 - s * (3.0 - s));
    }
    }
    return 0.0;
}

double Kernel::mass(double a, double b) const {
    if (a < 0.0) throw std::invalid_argument("kernel_mass: lower limit must be nonnegative");
    if (a > b) throw std::invalid_argument("kernel_mass: lower limit exceeds upper limit");
    const double lo = std::min(a, delta_);
    const double hi = std::min(b, delta_);
    if (lo >= hi) return 0.0;
    return cumulative(hi / delta_) - cumulative(lo / delta_);
}

QuadratureWeights::QuadratureWeights(double dx, double delta, long r, std::vector<double> weights)
    : dx_(dx), delta_(delta), r_(r), weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("quadrature needs at least one weight");
}

double QuadratureWeights::first_moment() const {
    double sum = 0.0;
    for (long k = 1; k <= reach(); ++k) sum += static_cast<double>(k) * (*this)[k];
    return dx_ * sum;
}

QuadratureWeights compute_weights(const Kernel& kernel, double dx) {
    if (!(dx > 0.0) || !std::isfinite(dx)) {
        throw std::invalid_argument("compute_weights: dx must be positive and finite");
    }
    const double delta = kernel.delta();
    const double ratio = delta / dx;
    // Snap ratios that are integers up to round-off (delta = 0.3, dx = 0.1).
    const double nearest = std::round(ratio);
    const long r = std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, ratio)
                       ? static_cast<long>(nearest)
                       : static_cast<long>(std::floor(ratio));
    const long reach = std::max(r, 1L);

    std::vector<double> w(static_cast<std::size_t>(reach));
    for (long k = 1; k <= reach; ++k) {
        const double lo = static_cast<double>(k - 1) * dx;
        const double hi = static_cast<double>(k) * dx;
        w[static_cast<std::size_t>(k - 1)] = kernel.mass(lo, hi) / (static_cast<double>(k) * dx);
    }
    if (r >= 1) {
        const double tail_start = std::min(static_cast<double>(r) * dx, delta);
        w[static_cast<std::size_t>(r - 1)] += kernel.mass(tail_start, delta) / (static_cast<double>(reach) * dx);
    }
    return QuadratureWeights(dx, delta, r, std::move(w));
}

}  // namespace nlcl
