#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "doctest.h"
#include "nlcl/flux.hpp"

using namespace nlcl;

namespace {

// Godunov oracle: extremum of f by dense enumeration of the interval, endpoints included.
double godunov_oracle(const LocalFlux& f, double a, double b) {
    const int n = 20000;
    const double lo = std::min(a, b), hi = std::max(a, b);
    double best = f.f(a);
    for (int i = 0; i <= n; ++i) {
        const double v = f.f(lo + (hi - lo) * i / n);
        best = a <= b ? std::min(best, v) : std::max(best, v);
    }
    return best;
}

std::vector<TwoPointFlux> all_fluxes() {
    return {
        TwoPointFlux::godunov(LocalFlux::burgers()),
        TwoPointFlux::godunov(LocalFlux::cubic()),
        TwoPointFlux::godunov(LocalFlux::linear(-0.7)),
        TwoPointFlux::lax_friedrichs(LocalFlux::burgers(), 0.5),
        TwoPointFlux::lax_friedrichs(LocalFlux::cubic(), 0.25),
        TwoPointFlux::engquist_osher(LocalFlux::burgers()),
        TwoPointFlux::engquist_osher(LocalFlux::cubic()),
        TwoPointFlux::engquist_osher(LocalFlux::linear(1.3)),
        TwoPointFlux::upwind_linear(2.0),
        TwoPointFlux::upwind_linear(-1.5),
    };
}

int sgn(double x) { return x >= 0.0 ? 1 : -1; }  // sgn(0) = 1

}  // namespace

TEST_CASE("local flux derivatives match centered differences") {
    for (const LocalFlux& f : {LocalFlux::burgers(), LocalFlux::cubic(), LocalFlux::linear(2.5)}) {
        for (double u = -2.0; u <= 2.0; u += 0.137) {
            const double h = 1e-5;
            const double fd = (f.f(u + h) - f.f(u - h)) / (2 * h);
            CHECK(std::abs(fd - f.df(u)) <= 1e-6 * std::max(1.0, std::abs(f.df(u))));
        }
    }
}

TEST_CASE("eval_flux examples") {
    const auto gb = TwoPointFlux::godunov(LocalFlux::burgers());
    CHECK(eval_flux(gb, 1.0, -1.0) == doctest::Approx(godunov_oracle(LocalFlux::burgers(), 1.0, -1.0)));
    CHECK(eval_flux(gb, 1.0, -1.0) == doctest::Approx(0.5));
    CHECK(eval_flux(gb, -1.0, 1.0) == doctest::Approx(0.0));
    const auto lf = TwoPointFlux::lax_friedrichs(LocalFlux::burgers(), 1.0);
    CHECK(eval_flux(lf, 0.0, 1.0) == doctest::Approx(-0.25));
}

TEST_CASE("Godunov agrees with the enumeration oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const LocalFlux& f : {LocalFlux::burgers(), LocalFlux::cubic(), LocalFlux::linear(-0.4)}) {
        const auto g = TwoPointFlux::godunov(f);
        for (int i = 0; i < 200; ++i) {
            const double a = u(rng), b = u(rng);
            CHECK(g(a, b) == doctest::Approx(godunov_oracle(f, a, b)).epsilon(1e-8));
        }
    }
}

TEST_CASE("consistency g(u,u) = f(u)") {
    for (const auto& g : all_fluxes()) {
        for (double u = -1.5; u <= 1.5; u += 0.1) CHECK(std::abs(g(u, u) - g.f(u)) <= 1e-12);
    }
}

TEST_CASE("property: monotone in each argument") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> h(0.0, 0.5);
    for (const auto& g : all_fluxes()) {
        for (int i = 0; i < 10000; ++i) {
            const double a = u(rng), b = u(rng), s = h(rng);
            // LF with lambda*max|f'| <= 1 is only monotone on its box
            if (!is_monotone_on(g, -1.0, 1.5)) continue;
            CHECK(g(a + s, b) >= g(a, b) - 1e-15);
            CHECK(g(a, b + s) <= g(a, b) + 1e-15);
        }
    }
}

TEST_CASE("partials match finite differences away from kinks and carry the right signs") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& g : all_fluxes()) {
        int checked = 0;
        for (int i = 0; i < 2000; ++i) {
            const double a = u(rng), b = u(rng);
            if (std::abs(a - b) < 1e-3 || std::abs(a) < 1e-3 || std::abs(b) < 1e-3) continue;
            const double h = 1e-7;
            const Partials p = g.partials(a, b);
            const double d1 = (g(a + h, b) - g(a - h, b)) / (2 * h);
            const double d2 = (g(a, b + h) - g(a, b - h)) / (2 * h);
            CHECK(std::abs(d1 - p.d1) <= 1e-6 * std::max(1.0, std::abs(p.d1)));
            CHECK(std::abs(d2 - p.d2) <= 1e-6 * std::max(1.0, std::abs(p.d2)));
            CHECK(p.d1 >= 0.0);
            CHECK(p.d2 <= 0.0);
            ++checked;
        }
        CHECK(checked > 1000);
    }
}

TEST_CASE("lipschitz_box_bound examples") {
    SUBCASE("godunov burgers on [-1,1]") {
        const auto b = lipschitz_box_bound(TwoPointFlux::godunov(LocalFlux::burgers()), -1.0, 1.0);
        CHECK(b.l1 <= 1.05);
        CHECK(b.l2 <= 1.05);
        CHECK(b.l1 == doctest::Approx(1.0));
        CHECK(b.l2 == doctest::Approx(1.0));
    }
    SUBCASE("upwind linear a=2") {
        const auto b = lipschitz_box_bound(TwoPointFlux::upwind_linear(2.0), -3.0, 7.0);
        CHECK(b.l1 == 2.0);
        CHECK(b.l2 == 0.0);
    }
    SUBCASE("lax-friedrichs lambda=1 burgers on [-1,1]") {
        const auto b = lipschitz_box_bound(TwoPointFlux::lax_friedrichs(LocalFlux::burgers(), 1.0), -1.0, 1.0);
        CHECK(b.l1 == doctest::Approx(1.0));
        CHECK(b.l2 == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(lipschitz_box_bound(TwoPointFlux::godunov(LocalFlux::burgers()), 1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("closed-form box bounds dominate a 101x101 sampling oracle") {
    for (const auto& g : all_fluxes()) {
        for (auto [b1, b2] : {std::pair{-1.0, 1.0}, std::pair{0.2, 1.7}, std::pair{-2.0, -0.5}}) {
            if (!is_monotone_on(g, b1, b2)) continue;
            double s1 = 0.0, s2 = 0.0;
            for (int i = 0; i <= 100; ++i) {
                for (int k = 0; k <= 100; ++k) {
                    const Partials p = g.partials(b1 + (b2 - b1) * i / 100, b1 + (b2 - b1) * k / 100);
                    s1 = std::max(s1, std::abs(p.d1));
                    s2 = std::max(s2, std::abs(p.d2));
                }
            }
            const LipschitzBound lb = lipschitz_box_bound(g, b1, b2);
            CHECK(lb.l1 >= s1 - 1e-12);
            CHECK(lb.l2 >= s2 - 1e-12);
            CHECK(lb.l1 <= 1.05 * s1 + 1e-12);
            CHECK(lb.l2 <= 1.05 * s2 + 1e-12);
        }
    }
}

TEST_CASE("property: Lipschitz inequality for g and q on the box") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& g : all_fluxes()) {
        if (!is_monotone_on(g, -1.0, 1.0)) continue;
        const LipschitzBound lb = lipschitz_box_bound(g, -1.0, 1.0);
        const double cq = 2.0 * std::max(lb.l1, lb.l2);
        for (int i = 0; i < 5000; ++i) {
            const double a = u(rng), b = u(rng), c = u(rng), d = u(rng), k = u(rng);
            CHECK(std::abs(g(a, b) - g(c, d)) <= lb.l1 * std::abs(a - c) + lb.l2 * std::abs(b - d) + 1e-13);
            CHECK(std::abs(entropy_flux(g, a, b, k) - entropy_flux(g, c, d, k)) <=
                  cq * (std::abs(a - c) + std::abs(b - d)) + 1e-13);
        }
    }
}

TEST_CASE("entropy_flux examples") {
    const auto g = TwoPointFlux::godunov(LocalFlux::burgers());
    CHECK(entropy_flux(g, 2.0, 0.0, 1.0) == doctest::Approx(1.5));
    CHECK(entropy_flux(g, 2.0, 2.0, 1.0) == doctest::Approx(1.5));
    for (const auto& h : all_fluxes()) CHECK(entropy_flux(h, 0.3, 0.3, 0.3) == 0.0);
}

TEST_CASE("property: q(u,u;c) = sgn(u-c)(f(u)-f(c)) with sgn(0) = 1") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& g : all_fluxes()) {
        for (int i = 0; i < 2000; ++i) {
            const double v = u(rng), c = i % 50 == 0 ? v : u(rng);
            CHECK(std::abs(entropy_flux(g, v, v, c) - sgn(v - c) * (g.f(v) - g.f(c))) <= 1e-12);
        }
    }
}

TEST_CASE("flux construction errors and keys") {
    CHECK_THROWS_AS(TwoPointFlux(FluxFamily::UpwindLinear, LocalFlux::burgers()), std::invalid_argument);
    CHECK_THROWS_AS(TwoPointFlux::lax_friedrichs(LocalFlux::burgers(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(parse_family("roe"), std::invalid_argument);
    CHECK(parse_family("engquist_osher") == FluxFamily::EngquistOsher);
    CHECK(is_monotone_on(TwoPointFlux::lax_friedrichs(LocalFlux::burgers(), 1.0), -1.0, 1.0));
    CHECK_FALSE(is_monotone_on(TwoPointFlux::lax_friedrichs(LocalFlux::burgers(), 1.0), -2.0, 1.0));
}
