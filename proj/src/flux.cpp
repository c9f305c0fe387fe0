#include "nlcl/flux.hpp"

#include <cmath>
#include <stdexcept>

namespace nlcl {

double LocalFlux::max_speed(double b1, double b2) const {
    const Range r = derivative_range(b1, b2);
    return std::max(std::abs(r.lo), std::abs(r.hi));
}

std::string_view LocalFlux::name() const {
    struct Namer {
        std::string_view operator()(const Burgers&) const { return "burgers"; }
        std::string_view operator()(const LinearAdvection&) const { return "linear"; }
        std::string_view operator()(const Cubic&) const { return "cubic"; }
    };
    return std::visit(Namer{}, model_);
}

double LocalFlux::speed() const {
    if (const auto* lin = std::get_if<LinearAdvection>(&model_)) return lin->speed;
    return 0.0;
}

std::vector<std::string> local_flux_keys() { return {"burgers", "linear", "cubic"}; }

std::string_view family_name(FluxFamily f) {
    switch (f) {
    case FluxFamily::Godunov: return "godunov";
    case FluxFamily::LaxFriedrichs: return "lax_friedrichs";
    case FluxFamily::EngquistOsher: return "engquist_osher";
    case FluxFamily::UpwindLinear: return "upwind_linear";
    }
    return "unknown";
}

FluxFamily parse_family(std::string_view key) {
    if (key == "godunov") return FluxFamily::Godunov;
    if (key == "lax_friedrichs" || key == "lf") return FluxFamily::LaxFriedrichs;
    if (key == "engquist_osher" || key == "eo") return FluxFamily::EngquistOsher;
    if (key == "upwind_linear") return FluxFamily::UpwindLinear;
    throw std::invalid_argument("unknown flux family '" + std::string(key) +
                                "' (valid: godunov, lax_friedrichs, engquist_osher, upwind_linear)");
}

std::vector<std::string> family_keys() { return {"godunov", "lax_friedrichs", "engquist_osher", "upwind_linear"}; }

TwoPointFlux::TwoPointFlux(FluxFamily family, LocalFlux local, double lambda)
    : family_(family), local_(local), lambda_(lambda) {
    if (family_ == FluxFamily::LaxFriedrichs && !(lambda_ > 0.0 && std::isfinite(lambda_))) {
        throw std::invalid_argument("lax_friedrichs needs a positive lambda");
    }
    if (family_ == FluxFamily::UpwindLinear && !std::holds_alternative<LinearAdvection>(local_.model())) {
        throw std::invalid_argument("upwind_linear requires the linear local flux");
    }
}

LipschitzBound lipschitz_box_bound(const TwoPointFlux& g, double b1, double b2) {
    if (b1 > b2) throw std::invalid_argument("lipschitz_box_bound: B1 > B2");
    const Range fp = g.local().derivative_range(b1, b2);
    switch (g.family()) {
    case FluxFamily::Godunov:
    case FluxFamily::EngquistOsher:
        // g_1 = max(f'(a), 0) and g_2 = min(f'(b), 0) wherever they are defined.
        return {std::max(fp.hi, 0.0), std::max(-fp.lo, 0.0)};
    case FluxFamily::LaxFriedrichs: {
        const double c = 1.0 / (2.0 * g.lambda());
        return {std::max(std::abs(0.5 * fp.lo + c), std::abs(0.5 * fp.hi + c)),
                std::max(std::abs(0.5 * fp.lo - c), std::abs(0.5 * fp.hi - c))};
    }
    case FluxFamily::UpwindLinear: {
        const double a = g.local().speed();
        return {std::max(a, 0.0), std::max(-a, 0.0)};
    }
    }
    return {0.0, 0.0};
}

bool is_monotone_on(const TwoPointFlux& g, double b1, double b2) {
    if (g.family() != FluxFamily::LaxFriedrichs) return true;
    return g.lambda() * g.local().max_speed(b1, b2) <= 1.0 + 1e-14;
}

}  // namespace nlcl
