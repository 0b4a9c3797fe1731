#include <doctest.h>

#include <cmath>

#include "heatflow/heatkernel.hpp"
#include "heatflow/spherical.hpp"
#include "oracles.hpp"

using namespace heatflow;

TEST_CASE("spherical function examples") {
    for (int n : {2, 3, 5}) CHECK(phi_lambda_real(n, 1.3, 0.0) == 1.0);
    CHECK(phi_lambda_real(3, 1, 1) == doctest::Approx(std::sin(1.0) / std::sinh(1.0)).epsilon(1e-12));
    CHECK(phi_lambda_real(3, 1, 1) == doctest::Approx(0.71604).epsilon(1e-5));
    for (int n : {2, 3, 4, 7}) CHECK(phi_lambda_real(n, cplx(0, 0.5 * (n - 1)), 5) == doctest::Approx(1).epsilon(1e-10));
}

TEST_CASE("H^3 closed form on a grid, including imaginary lambda") {
    for (double l : {0.2, 1.0, 4.0, 11.0})
        for (double r : {0.05, 0.7, 3.0, 12.0, 40.0}) {
            double ref = std::sin(l * r) / (l * std::sinh(r));
            CHECK(phi_lambda_real(3, l, r) == doctest::Approx(ref).epsilon(1e-10).scale(1e-12));
        }
    for (double y : {0.3, 0.8})
        for (double r : {0.5, 6.0, 60.0}) {
            ScaledComplex v = phi_lambda(3, cplx(0, y), r);
            double log_ref = std::log(std::sinh(y * r) / (y * std::sinh(r)));
            CHECK(std::log(v.mantissa.real()) + v.log_scale == doctest::Approx(log_ref).epsilon(1e-11));
        }
}

TEST_CASE("n = 5 closed form") {
    // phi_lambda = 3 (coth r sin(lr) / l - cos(lr)) / ((1 + l^2) sinh^2 r)... checked via the radial ODE instead:
    // phi'' + (n-1) coth r phi' = -(l^2 + rho^2) phi.
    const int n = 5;
    const double l = 0.9, rho = 2, h = 1e-3;
    for (double r : {0.5, 1.5, 4.0}) {
        double f0 = phi_lambda_real(n, l, r), fp = phi_lambda_real(n, l, r + h), fm = phi_lambda_real(n, l, r - h);
        double d2 = (fp - 2 * f0 + fm) / (h * h), d1 = (fp - fm) / (2 * h);
        CHECK(d2 + (n - 1) / std::tanh(r) * d1 == doctest::Approx(-(l * l + rho * rho) * f0).epsilon(1e-5));
    }
}

TEST_CASE("even in lambda and bounded by phi_0") {
    for (int n : {2, 3, 4})
        for (double l : {0.3, 1.0, 2.7})
            for (double r : {0.1, 1.0, 10.0}) {
                cplx a = phi_lambda(n, l, r).value(), b = phi_lambda(n, -l, r).value();
                CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
                CHECK(std::abs(a) <= phi0(n, r).value() * (1 + 1e-10));
            }
}

TEST_CASE("imaginary parameters: 0 < phi_{iq rho} <= e^{q rho r} phi_0") {
    for (int n : {2, 3, 4}) {
        double rho = 0.5 * (n - 1);
        for (double q : {0.0, 0.25, 0.5, 1.0})
            for (double r : {0.3, 2.0, 8.0, 25.0}) {
                ScaledComplex v = phi_lambda(n, cplx(0, q * rho), r);
                CHECK(v.mantissa.real() > 0);
                double lhs = std::log(v.mantissa.real()) + v.log_scale;
                CHECK(lhs <= q * rho * r + phi0(n, r).log() + 1e-10);
            }
    }
}

TEST_CASE("ground spherical function") {
    CHECK(phi0(3, 0).value() == 1.0);
    CHECK(phi0(3, 2).value() == doctest::Approx(2 / std::sinh(2.0)));
    CHECK(phi0(3, 2).value() == doctest::Approx(0.55144).epsilon(1e-5));
    CHECK(phi0(3, 800).log() == doctest::Approx(std::log(800.0) - 800 + std::log(2.0)));
    // n = 2: phi_0(r) ~ c (1 + r) e^{-r/2}
    std::vector<double> ratio;
    for (double r : {10.0, 20.0, 50.0}) ratio.push_back(std::exp(phi0(2, r).log() + 0.5 * r) / (1 + r));
    CHECK(ratio[2] / ratio[0] == doctest::Approx(1).epsilon(0.1));
    CHECK(ratio[2] / ratio[1] == doctest::Approx(1).epsilon(0.05));
}

TEST_CASE("smooth bump has unit mass") {
    for (int n : {2, 3, 4})
        for (double a : {0.5, 1.0}) {
            RadialProfile b = smooth_bump(n, a);
            double ref = oracle::sphere_area(n) *
                         oracle::simpson([&](double r) { return b(r) * std::pow(std::sinh(r), n - 1); }, 0, a, 4000);
            CHECK(ref == doctest::Approx(1).epsilon(1e-9));
            CHECK(b(a) == 0.0);
            CHECK(b(1.5 * a) == 0.0);
        }
}

TEST_CASE("spherical transform") {
    for (int n : {2, 3, 4}) {
        RadialProfile b = smooth_bump(n, 0.7);
        CHECK(spherical_transform(n, b, cplx(0, 0.5 * (n - 1))).real() == doctest::Approx(1).epsilon(1e-10));
    }
    RadialProfile zero;
    zero.eval = [](double) { return 0.0; };
    zero.support_radius = 1;
    zero.effective_radius = 1;
    CHECK(std::abs(spherical_transform(3, zero, 1.0)) == 0.0);
    // Heat profile: transform is e^{-t(l^2 + rho^2)}.
    RadialProfile h1 = heat_profile(3, 1.0);
    CHECK(spherical_transform(3, h1, 1.0).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
    RadialProfile h2 = heat_profile(2, 0.5);
    CHECK(spherical_transform(2, h2, 0.8).real() == doctest::Approx(std::exp(-0.5 * (0.64 + 0.25))).epsilon(1e-8));
    // H^3: direct sine-transform oracle.
    RadialProfile b = smooth_bump(3, 1.0);
    for (double l : {0.5, 3.0, 20.0}) {
        double ref = 4 * M_PI *
                     oracle::simpson([&](double r) { return b(r) * std::sin(l * r) * std::sinh(r) / l; }, 0, 1, 20000);
        CHECK(spherical_transform(3, b, l).real() == doctest::Approx(ref).epsilon(1e-8).scale(1e-12));
    }
}

TEST_CASE("inverse transform") {
    for (double r : {0.0, 2.0, 7.0}) {
        auto F = [](double l) { return std::exp(-(l * l + 1)); };
        CHECK(inverse_transform_radial(3, F, r) == doctest::Approx(oracle::h3(1, r)).epsilon(1e-8));
    }
    CHECK(inverse_transform_radial(3, [](double) { return 0.0; }, 1.0) == 0.0);
    // Bump round trip at one radius.
    RadialProfile b = smooth_bump(3, 1.0);
    auto F = [&](double l) { return spherical_transform(3, b, l).real(); };
    CHECK(std::abs(inverse_transform_radial(3, F, 0.5, InverseOptions{1e-8, 0}) - b(0.5)) < 1e-6 * b(0));
}

TEST_CASE("spectral constant is calibrated once for every n") {
    CHECK(calibrated_kappa() == doctest::Approx(1 / (2 * M_PI)).epsilon(1e-9));
    for (int n : {2, 3, 4})
        CHECK(spectral_constant(n) == doctest::Approx(calibrated_kappa() * std::pow(2.0, n - 1) / oracle::sphere_area(n)));
    CHECK(plancherel_density_h(3, 2.0) / plancherel_density_h(3, 1.0) == doctest::Approx(4));
}
