#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "heatflow/chebtable.hpp"
#include "heatflow/errors.hpp"
#include "heatflow/logval.hpp"
#include "heatflow/parallel.hpp"
#include "heatflow/quadrature.hpp"

using namespace heatflow;

TEST_CASE("LogVal arithmetic matches doubles") {
    const double xs[] = {-3.5, -1e-3, 0.0, 2e-7, 1.0, 42.0};
    for (double a : xs)
        for (double b : xs) {
            LogVal A(a), B(b);
            CHECK((A + B).value() == doctest::Approx(a + b).epsilon(1e-14));
            CHECK((A - B).value() == doctest::Approx(a - b).epsilon(1e-14));
            CHECK((A * B).value() == doctest::Approx(a * b).epsilon(1e-14));
            if (b != 0) CHECK((A / B).value() == doctest::Approx(a / b).epsilon(1e-14));
            CHECK((A < B) == (a < b));
        }
}

TEST_CASE("LogVal handles magnitudes far outside double range") {
    LogVal tiny = LogVal::from_log(-2000), huge = LogVal::from_log(1500);
    CHECK((tiny * huge).log() == doctest::Approx(-500));
    CHECK((tiny + tiny).log() == doctest::Approx(-2000 + std::log(2.0)));
    CHECK((huge - huge).is_zero());
    CHECK(tiny.pow(0.5).log() == doctest::Approx(-1000));
    CHECK(LogVal(-2.0).pow(3).value() == doctest::Approx(-8));
    CHECK(LogVal::zero().value() == 0.0);
}

TEST_CASE("add_checked flags catastrophic cancellation") {
    bool flagged = false;
    add_checked(LogVal(1.0), LogVal(-(1.0 - 1e-14)), flagged);
    CHECK(flagged);
    add_checked(LogVal(1.0), LogVal(-0.5), flagged);
    CHECK_FALSE(flagged);
    CHECK(log_add(-INFINITY, 1.0) == 1.0);
    CHECK(log_add(0.0, 0.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("adaptive quadrature on known integrals") {
    CHECK(integrate_real([](double x) { return std::sin(x); }, {0.0, M_PI}) == doctest::Approx(2).epsilon(1e-12));
    CHECK(integrate_real([](double x) { return 1 / std::sqrt(x); }, {1e-12, 1.0}, {1e-10, 0, 16, 4000, true}) ==
          doctest::Approx(2 * (1 - 1e-6)).epsilon(1e-8));
    // Kink at 0.3 given as a break.
    CHECK(integrate_real([](double x) { return std::abs(x - 0.3); }, {0.0, 0.3, 1.0}) ==
          doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));
    auto c = integrate_complex([](double x) { return std::exp(std::complex<double>(0, 5 * x)); }, {0.0, 1.0});
    CHECK(std::abs(c - (std::exp(std::complex<double>(0, 5)) - 1.0) / std::complex<double>(0, 5)) < 1e-12);
}

TEST_CASE("log-domain quadrature integrates underflowing integrands") {
    // int_0^1 exp(-2000 (x - 0.5)^2 - 1000) = exp(-1000) sqrt(pi / 2000) (tails negligible)
    LogVal v = integrate_log([](double x) { return LogVal::from_log(-2000 * (x - 0.5) * (x - 0.5) - 1000); },
                             {0.0, 0.5, 1.0}, {1e-12, 0, 16, 4000, true});
    CHECK(v.log() == doctest::Approx(-1000 + 0.5 * std::log(M_PI / 2000)).epsilon(1e-12));
}

TEST_CASE("quadrature reports non-convergence") {
    auto f = [](double x) { return std::sin(1 / x); };
    CHECK_THROWS_AS(integrate_real(f, {1e-9, 1.0}, {1e-14, 0, 8, 20, true}), QuadratureError);
    auto res = integrate<double>(f, {1e-9, 1.0}, {1e-14, 0, 8, 20, false});
    CHECK_FALSE(res.converged);
    CHECK(res.panels <= 20);
}

TEST_CASE("Chebyshev table interpolates smooth functions") {
    auto f = [](double x) { return std::sin(x) * std::exp(-0.1 * x); };
    ChebTable t(f, 0, 10, 0.5, 16);
    double worst = 0;
    for (double x = 0; x <= 10; x += 0.0137) worst = std::max(worst, std::abs(t(x) - f(x)));
    CHECK(worst < 1e-12);
    CHECK(t(-1) == f(-1)); // outside [a, b]: fallback to f
    CHECK(t.lower() == 0);
    CHECK(t.upper() == 10);
}

TEST_CASE("parallel_for covers every index once and rethrows") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 1000);
    CHECK(*std::min_element(hits.begin(), hits.end()) == 1);
    CHECK_THROWS_WITH(parallel_for(100,
                                   [](std::size_t i) {
                                       if (i == 17 || i == 60) throw std::runtime_error("at " + std::to_string(i));
                                   }),
                      "at 17");
    std::atomic<int> inner{0};
    parallel_for(4, [&](std::size_t) { parallel_for(5, [&](std::size_t) { ++inner; }); });
    CHECK(inner == 20);
    CHECK(thread_count() >= 1);
}
