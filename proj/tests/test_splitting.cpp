#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "decaylab/decay.hpp"
#include "decaylab/fft.hpp"
#include "decaylab/solver.hpp"
#include "decaylab/splitting.hpp"

using namespace decaylab;

namespace {

SpectralVectorField random_divfree(const Grid& g, unsigned seed, double amp) {
    RealVectorField f(g);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& c : f.comp)
        for (auto& v : c) v = u(rng);
    SpectralVectorField s = to_spectral(f);
    dealias_inplace(s);
    leray_project_inplace(s);
    const std::size_t zero = g.flat(0, 0, 0);
    for (int c = 0; c < 3; ++c) s.comp[c][zero] = complexd(0.0, 0.0);
    scale(s, amp / std::sqrt(sobolev_seminorm_sq(s, 0.5)));
    return s;
}

}  // namespace

TEST_CASE("splitting radius schedules") {
    const SplittingSchedule logsch{ScheduleVariant::log_schedule, 0.0};
    const SplittingSchedule pow4{ScheduleVariant::power_schedule, 4.0};

    SECTION("closed forms at spot points") {
        CHECK(splitting_radius(0.0, pow4) == Catch::Approx(std::sqrt(2.0)));
        CHECK(splitting_radius(0.0, logsch) ==
              Catch::Approx(std::sqrt(1.5 / std::exp(1.0))));
        const double e = std::exp(1.0);
        // at t = e^2 - e the log schedule collapses to sqrt(3)/(2e)
        CHECK(splitting_radius(e * e - e, logsch) ==
              Catch::Approx(std::sqrt(3.0) / (2.0 * e)));
        CHECK(splitting_radius(1.0, pow4) == Catch::Approx(1.0));
    }
    SECTION("non-increasing in t") {
        for (const auto& sch : {logsch, pow4}) {
            CHECK(splitting_radius(10.0, sch) >= splitting_radius(20.0, sch));
            double prev = splitting_radius(0.0, sch);
            for (double t = 0.5; t < 50.0; t += 0.5) {
                const double g = splitting_radius(t, sch);
                REQUIRE(g <= prev);
                prev = g;
            }
        }
    }
    SECTION("domain errors") {
        CHECK_THROWS_AS(splitting_radius(-1.0, pow4), std::domain_error);
        CHECK_THROWS_AS(
            splitting_radius(1.0, SplittingSchedule{ScheduleVariant::power_schedule, 0.0}),
            std::domain_error);
    }
}

TEST_CASE("low mode fraction") {
    Grid g(16, 2.0 * pi);
    SpectralVectorField u = random_divfree(g, 2, 1.0);

    SECTION("zero field maps to 0") {
        SpectralVectorField z(g);
        CHECK(low_mode_fraction(z, 0.5, 1.0) == 0.0);
    }
    SECTION("all of the mass below xi_max, none below delta_xi") {
        CHECK(low_mode_fraction(u, 0.5, g.xi_max()) == 1.0);
        CHECK(low_mode_fraction(u, 0.5, 0.5 * g.delta_xi()) == 0.0);
    }
    SECTION("monotone non-decreasing in g") {
        double prev = 0.0;
        for (double gg = 0.5; gg <= 14.0; gg += 0.5) {
            const double f = low_mode_fraction(u, 0.5, gg);
            REQUIRE(f >= prev);
            REQUIRE(f <= 1.0);
            prev = f;
        }
    }
}

TEST_CASE("bilinear ratio") {
    Grid g(16, 4.0 * pi);
    SpectralVectorField u = random_divfree(g, 3, 0.4);

    SECTION("invariant under positive scaling, exact to rounding") {
        const double r1 = bilinear_ratio(u);
        SpectralVectorField v = u;
        scale(v, 37.5);
        const double r2 = bilinear_ratio(v);
        CHECK(r2 == Catch::Approx(r1).epsilon(1e-10));
    }
    SECTION("single-mode field has zero self-interaction numerator") {
        SpectralVectorField m(g);
        m.comp[1][g.flat(1, 0, 0)] = complexd(0.2, 0.1);
        m.comp[1][g.flat(g.n - 1, 0, 0)] = complexd(0.2, -0.1);
        CHECK(std::abs(bilinear_ratio(m)) < 1e-12);
    }
    SECTION("zero field is a domain error") {
        SpectralVectorField z(g);
        CHECK_THROWS_AS(bilinear_ratio(z), std::domain_error);
    }
}

TEST_CASE("low-frequency concentration along a small-data run") {
    Grid g(32, 16.0 * pi);
    SolverConfig cfg;
    cfg.grid = g;
    cfg.dt = 5e-3;
    cfg.t_final = 8.0;
    cfg.record_interval = 0.2;
    cfg.epsilon_budget = 0.05;
    SpectralVectorField u0 = synthesize_with_character(0.0, g, 37, 0.05);
    TimeSeries s = run_simulation(cfg, u0);

    // the power-schedule ball keeps pace with the collapsing spectrum;
    // recorded fraction should not drift down once transients die out
    double at5 = 0.0, last = 0.0;
    for (const auto& r : s.records) {
        REQUIRE(r.lowfrac_g2 >= 0.0);
        REQUIRE(r.lowfrac_g2 <= 1.0);
        if (r.t == 5.0) at5 = r.lowfrac_g2;
        last = r.lowfrac_g2;
    }
    CHECK(last >= at5 - 0.01);
}
