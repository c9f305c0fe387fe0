#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace nlcl {

// ---------------------------------------------------------------------------
// Local fluxes f(u)
// ---------------------------------------------------------------------------

/// Closed interval [lo, hi] of derivative values.
struct Range {
    double lo;
    double hi;
};

/// f(u) = u^2/2
struct Burgers {
    double f(double u) const { return 0.5 * u * u; }
    double df(double u) const { return u; }
    std::optional<double> critical_point() const { return 0.0; }
    Range derivative_range(double b1, double b2) const { return {b1, b2}; }
    // Engquist-Osher split, integrals of max(f',0) and min(f',0) from 0.
    double eo_plus(double u) const { const double p = std::max(u, 0.0); return 0.5 * p * p; }
    double eo_minus(double u) const { const double m = std::min(u, 0.0); return 0.5 * m * m; }
};

/// f(u) = a u
struct LinearAdvection {
    double speed = 1.0;
    double f(double u) const { return speed * u; }
    double df(double) const { return speed; }
    std::optional<double> critical_point() const { return std::nullopt; }
    Range derivative_range(double, double) const { return {speed, speed}; }
    double eo_plus(double u) const { return std::max(speed, 0.0) * u; }
    double eo_minus(double u) const { return std::min(speed, 0.0) * u; }
};

/// f(u) = u^3/3, non-convex with an inflection at 0.
struct Cubic {
    double f(double u) const { return u * u * u / 3.0; }
    double df(double u) const { return u * u; }
    std::optional<double> critical_point() const { return 0.0; }
    Range derivative_range(double b1, double b2) const {
        const double lo = (b1 <= 0.0 && b2 >= 0.0) ? 0.0 : std::min(b1 * b1, b2 * b2);
        return {lo, std::max(b1 * b1, b2 * b2)};
    }
    double eo_plus(double u) const { return u * u * u / 3.0; }
    double eo_minus(double) const { return 0.0; }
};

using LocalFluxModel = std::variant<Burgers, LinearAdvection, Cubic>;

/// Named local flux; "burgers", "linear" (with speed) and "cubic".
class LocalFlux {
public:
    LocalFlux() : model_(Burgers{}) {}
    explicit LocalFlux(LocalFluxModel model) : model_(model) {}

    static LocalFlux burgers() { return LocalFlux(Burgers{}); }
    static LocalFlux linear(double speed) { return LocalFlux(LinearAdvection{speed}); }
    static LocalFlux cubic() { return LocalFlux(Cubic{}); }

    double f(double u) const { return std::visit([u](const auto& m) { return m.f(u); }, model_); }
    double df(double u) const { return std::visit([u](const auto& m) { return m.df(u); }, model_); }
    Range derivative_range(double b1, double b2) const {
        return std::visit([=](const auto& m) { return m.derivative_range(b1, b2); }, model_);
    }
    /// sup |f'| over [b1, b2].
    double max_speed(double b1, double b2) const;

    std::string_view name() const;
    const LocalFluxModel& model() const { return model_; }
    /// Speed of linear advection, zero for the other models.
    double speed() const;

private:
    LocalFluxModel model_;
};

std::vector<std::string> local_flux_keys();

// ---------------------------------------------------------------------------
// Two-point fluxes g(a, b)
// ---------------------------------------------------------------------------

enum class FluxFamily { Godunov, LaxFriedrichs, EngquistOsher, UpwindLinear };

std::string_view family_name(FluxFamily f);
FluxFamily parse_family(std::string_view key);
std::vector<std::string> family_keys();

/// Partial derivatives (dg/da, dg/db).
struct Partials {
    double d1;
    double d2;
};

/// Bounds for sup|g_1| and sup|g_2| over a data box.
struct LipschitzBound {
    double l1;
    double l2;
    double sum() const { return l1 + l2; }
};

/// Godunov: minimum of f over [a,b] if a <= b, maximum over [b,a] otherwise.
template <class F>
struct GodunovFlux {
    F local;

    double operator()(double a, double b) const { return extremum(a, b).first; }

    Partials partials(double a, double b) const {
        if (a == b) {
            const double d = local.df(a);
            return {std::max(d, 0.0), std::min(d, 0.0)};
        }
        switch (extremum(a, b).second) {
        case Where::Left: return {local.df(a), 0.0};
        case Where::Right: return {0.0, local.df(b)};
        case Where::Interior: break;
        }
        return {0.0, 0.0};
    }

private:
    enum class Where { Left, Right, Interior };

    std::pair<double, Where> extremum(double a, double b) const {
        const double fa = local.f(a);
        const double fb = local.f(b);
        const bool rising = a <= b;
        double best = fa;
        Where at = Where::Left;
        if (rising ? fb < best : fb > best) {
            best = fb;
            at = Where::Right;
        }
        if (const auto c = local.critical_point()) {
            const double lo = rising ? a : b;
            const double hi = rising ? b : a;
            if (*c > lo && *c < hi) {
                const double fc = local.f(*c);
                if (rising ? fc < best : fc > best) {
                    best = fc;
                    at = Where::Interior;
                }
            }
        }
        return {best, at};
    }
};

/// Lax-Friedrichs with a frozen mesh-ratio parameter lambda.
template <class F>
struct LaxFriedrichsFlux {
    F local;
    double lambda;

    double operator()(double a, double b) const {
        return 0.5 * (local.f(a) + local.f(b)) - (b - a) / (2.0 * lambda);
    }
    Partials partials(double a, double b) const {
        return {0.5 * local.df(a) + 1.0 / (2.0 * lambda), 0.5 * local.df(b) - 1.0 / (2.0 * lambda)};
    }
};

/// Engquist-Osher: f(0) + f_+(a) + f_-(b).
template <class F>
struct EngquistOsherFlux {
    F local;

    double operator()(double a, double b) const { return local.f(0.0) + local.eo_plus(a) + local.eo_minus(b); }
    Partials partials(double a, double b) const {
        return {std::max(local.df(a), 0.0), std::min(local.df(b), 0.0)};
    }
};

/// Upwinding for f(u) = c u.
struct UpwindLinearFlux {
    double speed;

    double operator()(double a, double b) const { return speed >= 0.0 ? speed * a : speed * b; }
    Partials partials(double, double) const {
        return speed >= 0.0 ? Partials{speed, 0.0} : Partials{0.0, speed};
    }
};

/// A monotone, consistent two-point flux g built from a local flux and a
/// scheme family. Evaluation dispatches per call; hot loops should go through
/// visit(), which hands a concrete flux functor to the callback.
class TwoPointFlux {
public:
    /// lambda is only used by Lax-Friedrichs. UpwindLinear requires a linear local flux.
    TwoPointFlux(FluxFamily family, LocalFlux local, double lambda = 1.0);

    static TwoPointFlux godunov(LocalFlux local) { return {FluxFamily::Godunov, local}; }
    static TwoPointFlux lax_friedrichs(LocalFlux local, double lambda) {
        return {FluxFamily::LaxFriedrichs, local, lambda};
    }
    static TwoPointFlux engquist_osher(LocalFlux local) { return {FluxFamily::EngquistOsher, local}; }
    static TwoPointFlux upwind_linear(double speed) {
        return {FluxFamily::UpwindLinear, LocalFlux::linear(speed)};
    }

    FluxFamily family() const { return family_; }
    const LocalFlux& local() const { return local_; }
    double lambda() const { return lambda_; }

    double operator()(double a, double b) const;
    Partials partials(double a, double b) const;
    double f(double u) const { return local_.f(u); }

    /// Calls fn with one of GodunovFlux<M>, LaxFriedrichsFlux<M>,
    /// EngquistOsherFlux<M> or UpwindLinearFlux.
    template <class Fn>
    decltype(auto) visit(Fn&& fn) const {
        return std::visit(
            [&](const auto& model) -> decltype(auto) {
                using M = std::decay_t<decltype(model)>;
                switch (family_) {
                case FluxFamily::LaxFriedrichs: return fn(LaxFriedrichsFlux<M>{model, lambda_});
                case FluxFamily::EngquistOsher: return fn(EngquistOsherFlux<M>{model});
                case FluxFamily::UpwindLinear: return fn(UpwindLinearFlux{local_.speed()});
                case FluxFamily::Godunov: break;
                }
                return fn(GodunovFlux<M>{model});
            },
            local_.model());
    }

private:
    FluxFamily family_;
    LocalFlux local_;
    double lambda_;
};

inline double TwoPointFlux::operator()(double a, double b) const {
    return visit([=](const auto& g) { return g(a, b); });
}

inline Partials TwoPointFlux::partials(double a, double b) const {
    return visit([=](const auto& g) { return g.partials(a, b); });
}

inline double eval_flux(const TwoPointFlux& g, double a, double b) { return g(a, b); }

/// Kruzkov entropy flux q(a,b;c) = g(max(a,c), max(b,c)) - g(min(a,c), min(b,c)).
template <class G>
double entropy_flux(const G& g, double a, double b, double c) {
    return g(std::max(a, c), std::max(b, c)) - g(std::min(a, c), std::min(b, c));
}

/// Closed-form sup|g_1|, sup|g_2| over [b1,b2]^2. Throws if b1 > b2.
LipschitzBound lipschitz_box_bound(const TwoPointFlux& g, double b1, double b2);

/// For Lax-Friedrichs: lambda * sup|f'| <= 1 on the box, which keeps g monotone.
/// Always true for the other families.
bool is_monotone_on(const TwoPointFlux& g, double b1, double b2);

}  // namespace nlcl
