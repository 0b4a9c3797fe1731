#include <doctest.h>

#include <cmath>

#include "heatflow/heatkernel.hpp"
#include "oracles.hpp"

using namespace heatflow;

TEST_CASE("exact H^3 kernel") {
    CHECK(h_exact_h3(1, 0).value() == doctest::Approx(8.2590e-3).epsilon(1e-4));
    for (double t : {0.1, 1.0, 30.0})
        for (double r : {0.0, 1e-9, 0.4, 5.0, 200.0})
            CHECK(h_exact_h3(t, r).log() == doctest::Approx(oracle::log_h3(t, r)).epsilon(1e-12));
    // Far in the tail the value underflows a double but the log stays finite.
    CHECK(std::isfinite(h_exact_h3(1, 2000).log()));
    CHECK_THROWS_AS(heat_kernel(3, -1, 1), ConfigError);
    CHECK_THROWS_AS(heat_kernel(3, 1, -1), ConfigError);
    CHECK_THROWS_AS(heat_kernel(4, 1, 1, Route::ExactH3), ConfigError);
}

TEST_CASE("spectral route agrees with the exact kernel") {
    for (double t : {0.5, 2.0, 20.0})
        for (double r : {0.0, 0.3, 3.0, 15.0}) {
            double ex = h_exact_h3(t, r).log();
            CHECK(h_spectral(3, t, r).log() == doctest::Approx(ex).epsilon(1e-9));
        }
    // The two spectral evaluations agree where both apply.
    for (int n : {2, 4})
        for (double r : {0.5, 4.0}) CHECK(h_spectral_direct(n, 2, r).log() == doctest::Approx(h_spectral_shifted(n, 2, r).log()).epsilon(1e-8));
}

TEST_CASE("route names") {
    for (Route r : {Route::ExactH3, Route::Spectral, Route::Asymptotic}) CHECK(parse_route(route_name(r)) == r);
    CHECK_THROWS_AS(parse_route("fast"), ConfigError);
}

TEST_CASE("positive and decreasing in r") {
    for (int n : {2, 3, 4}) {
        double prev = heat_kernel(n, 2, 0).value.log();
        for (double r = 0.25; r < 30; r += 0.25) {
            double cur = heat_kernel(n, 2, r).value.log();
            CHECK(std::isfinite(cur));
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("norms: mass one, sup at the origin, L2 from the semigroup") {
    for (int n : {2, 3})
        for (double t : {0.5, 5.0, 40.0}) {
            CHECK(lp_norm_log(n, t, 1).value() == doctest::Approx(1).epsilon(1e-7));
            CHECK(lp_norm_log(n, t, INFINITY).log() == doctest::Approx(heat_kernel(n, t, 0).value.log()));
            // ||h_t||_2^2 = h_{2t}(0)
            CHECK(2 * lp_norm_log(n, t, 2).log() == doctest::Approx(heat_kernel(n, 2 * t, 0).value.log()).epsilon(1e-7));
        }
}

TEST_CASE("semigroup at the origin, H^3 oracle") {
    double t = 1.5, s = 0.7;
    double I = 4 * oracle::pi *
               oracle::simpson([&](double r) { return oracle::h3(t, r) * oracle::h3(s, r) * std::sinh(r) * std::sinh(r); },
                               0, 40, 20000);
    CHECK(I == doctest::Approx(oracle::h3(t + s, 0)).epsilon(1e-9));
}

TEST_CASE("two-sided envelope t^{-3/2}(1+r) e^{-rho^2 t - rho r - r^2/4t}") {
    for (int n : {2, 3, 4}) {
        double rho = 0.5 * (n - 1), lo = INFINITY, hi = -INFINITY;
        for (double t : {1.0, 10.0, 100.0})
            for (double r = 0; r <= 2 * rho * t + 10 * std::sqrt(t); r += 0.5 + 0.05 * t) {
                double env = -1.5 * std::log(t) + std::log1p(r) - rho * rho * t - rho * r - r * r / (4 * t);
                double q = heat_kernel(n, t, r).value.log() - env;
                lo = std::min(lo, q);
                hi = std::max(hi, q);
            }
        CHECK(hi - lo < std::log(50.0));
    }
}

TEST_CASE("tabulated kernel matches the spectral route") {
    HeatKernel k(2, 3.0);
    for (double r : {0.0, 0.13, 2.2, 9.9, 25.0}) CHECK(k.log_value(r) == doctest::Approx(h_spectral(2, 3, r).log()).epsilon(1e-10));
    HeatKernel k3(3, 3.0);
    CHECK(k3.log_value(2) == doctest::Approx(oracle::log_h3(3, 2)));
    CHECK_THROWS_AS(HeatKernel(3, 0), ConfigError);
}

TEST_CASE("asymptotic route") {
    CHECK(asymptotic_gamma(3, 0) == doctest::Approx(oracle::pi / std::tgamma(0.25)).epsilon(1e-12));
    CHECK(asymptotic_gamma(3, 0) == doctest::Approx(0.86650).epsilon(1e-4));
    // n = 3 along r = 2t the ratio to the exact kernel tends to 2 gamma(1).
    for (double t : {50.0, 100.0, 200.0}) {
        double q = std::exp(h_asymptotic(3, t, 2 * t).log() - h_exact_h3(t, 2 * t).log());
        CHECK(q == doctest::Approx(2 * asymptotic_gamma(3, 1)).epsilon(1e-8));
    }
}

TEST_CASE("critical regions") {
    RegionSchedule s = RegionSchedule::defaults();
    RadialRegion g = critical_region(3, 1, 100, s);
    CHECK(g.lo == doctest::Approx(200 - std::pow(100.0, 0.75)));
    CHECK(g.hi == doctest::Approx(200 + std::pow(100.0, 0.75)));
    g = critical_region(3, 2, 100, s);
    CHECK(g.lo == doctest::Approx(std::pow(100.0, 0.25)));
    CHECK(g.hi == doctest::Approx(std::pow(100.0, 0.75)));
    g = critical_region(3, INFINITY, 100, s);
    CHECK(g.lo == 0);
    CHECK(g.hi == doctest::Approx(10 / std::log(100.0)));
    CHECK_THROWS_AS(critical_region(3, 0.5, 10, s), ConfigError);
}

TEST_CASE("concentration defect decreases for p < inf") {
    RegionSchedule s = RegionSchedule::defaults();
    for (double p : {1.0, 1.5, 2.0}) {
        double a = concentration_defect(3, 10, p, s), b = concentration_defect(3, 100, p, s);
        CHECK(a >= 0);
        CHECK(b < a);
    }
}

TEST_CASE("kernel quotient defects") {
    RegionSchedule s = RegionSchedule::defaults();
    CHECK(quotient_defect_low(3, 1, 50, HPoint::origin(3), s) < 1e-12);
    CHECK(quotient_defect_high(3, 2, 50, HPoint::origin(3), s) < 1e-12);
    HPoint c = HPoint::axial(3, 1, 0);
    double a = quotient_defect_low(3, 1.5, 100, c, s), b = quotient_defect_low(3, 1.5, 400, c, s);
    CHECK(b < a);
    HPoint c2 = HPoint::axial(3, 2, 0);
    CHECK(quotient_defect_high(3, 2, 400, c2, s) / quotient_defect_high(3, 2, 100, c2, s) <= 0.9);
}
