#include <doctest.h>

#include <cmath>
#include <map>

#include "heatflow/heatkernel.hpp"
#include "heatflow/massfn.hpp"
#include "oracles.hpp"

using namespace heatflow;

namespace {

double bump_at(double d, double a) {
    static std::map<double, double> mass;
    auto it = mass.find(a);
    if (it == mass.end()) it = mass.emplace(a, oracle::bump_mass(3, a)).first;
    return oracle::bump_shape(d, a) / it->second;
}

// int over H^3 of f(r, cos theta), axially symmetric, by 2-D Simpson.
double axial_simpson(const std::function<double(double, double)> &f, double r0, double r1, int nr = 600, int nt = 1200) {
    return 2 * oracle::pi * oracle::simpson(
                                [&](double r) {
                                    return std::sinh(r) * std::sinh(r) *
                                           oracle::simpson([&](double th) { return f(r, std::cos(th)) * std::sin(th); },
                                                           0, oracle::pi, nt);
                                },
                                r0, r1, nr);
}

double dist3(double r, double s, double c) {
    return oracle::minkowski_distance(oracle::embed(r, {1, 0, 0}), oracle::embed(s, {c, std::sqrt(std::max(0.0, 1 - c * c)), 0}));
}

} // namespace

TEST_CASE("weight exponents") {
    CHECK(weight_exponent(3, 1) == 2);
    CHECK(weight_exponent(3, 2) == 1);
    CHECK(weight_exponent(3, INFINITY) == 1);
    CHECK(weight_exponent(5, 1.5) == doctest::Approx(8.0 / 3));
    CHECK_THROWS_AS(weight_exponent(3, 0.9), ConfigError);
}

TEST_CASE("weight norm against a direct integral") {
    InitialDatum u(3);
    u.radial_bump(1.0, 2.0);
    for (double p : {1.0, 2.0, 4.0}) {
        double a = weight_exponent(3, p);
        double ref = 2 * 4 * oracle::pi *
                     oracle::simpson([&](double r) { return bump_at(r, 1) * std::exp(a * r) * std::sinh(r) * std::sinh(r); }, 0, 1, 4000);
        CHECK(weight_norm(u, p) == doctest::Approx(ref).epsilon(1e-8));
        // |u0| weights at least the mass
        CHECK(weight_norm(u, p) >= 2.0);
    }
    InitialDatum d(3);
    d.displaced_bump(0.8, HPoint(3, 1.0, {1, 0, 0}));
    double ref = axial_simpson([&](double r, double c) { return bump_at(dist3(1.0, r, c), 0.8) * std::exp(2 * r); }, 0.2, 1.8);
    CHECK(weight_norm(d, 1) == doctest::Approx(ref).epsilon(1e-6));
    CHECK(weight_norm(InitialDatum(3), 1) == 0);
}

TEST_CASE("mass_low: radial datum is direction independent") {
    InitialDatum u(3);
    u.radial_bump(1.0);
    for (double p : {1.0, 1.5, 2.0}) {
        double q = 2 / p;
        double ref = 4 * oracle::pi * oracle::simpson([&](double r) {
                         double avg = oracle::sphere_mean3([&](double c) { return std::pow(std::cosh(r) - std::sinh(r) * c, -q); }, 400);
                         return bump_at(r, 1) * avg * std::sinh(r) * std::sinh(r);
                     }, 0, 1, 2000);
        for (double c : {-1.0, 0.0, 0.6, 1.0}) CHECK(mass_low(u, p, c) == doctest::Approx(ref).epsilon(1e-8));
    }
    // p = 1 recovers the total integral.
    CHECK(mass_low(u, 1, 0.3) == doctest::Approx(1).epsilon(1e-10));
    CHECK_THROWS_AS(mass_low(u, 3, 1.0), ConfigError);
}

TEST_CASE("mass_low: displaced bump on the axis directions") {
    InitialDatum d(3);
    d.displaced_bump(0.8, HPoint(3, 1.0, {1, 0, 0}));
    for (double p : {1.0, 1.5}) {
        double q = 2 / p;
        for (double s : {1.0, -1.0}) {
            double ref = axial_simpson(
                [&](double r, double c) { return bump_at(dist3(1.0, r, c), 0.8) * std::pow(std::cosh(r) - s * std::sinh(r) * c, -q); },
                0.2, 1.8);
            CHECK(mass_low(d, p, s) == doctest::Approx(ref).epsilon(1e-6));
        }
    }
    // Toward the bump the mass is larger.
    CHECK(mass_low(d, 1.5, 1.0) > mass_low(d, 1.5, 0.0));
    CHECK(mass_low(d, 1.5, 0.0) > mass_low(d, 1.5, -1.0));
    // Vector form normalizes the direction.
    CHECK(mass_low(d, 1.5, Vec{2, 0, 0}) == doctest::Approx(mass_low(d, 1.5, 1.0)));
    CHECK(mass_low_quadrature(d, 1.5, 0.3) == doctest::Approx(mass_low(d, 1.5, 0.3)).epsilon(1e-7));
}

TEST_CASE("mass_high") {
    InitialDatum u(3);
    u.radial_bump(1.0);
    double T0 = 4 * oracle::pi * oracle::simpson([&](double r) { return bump_at(r, 1) * r * std::sinh(r); }, 0, 1, 4000);
    for (double R : {0.0, 3.0, 30.0}) CHECK(mass_high(u, 2, HPoint::axial(3, R, 0.4)) == doctest::Approx(T0).epsilon(1e-9));

    // Displaced heat: T(0) = e^{-s rho^2}, times phi_0(d) / phi_0(|x|).
    InitialDatum h(3);
    h.displaced_heat(1.0, HPoint(3, 2.0, {1, 0, 0}));
    for (double th : {0.0, 1.0, 3.0}) {
        HPoint x = HPoint::axial(3, 5.0, th);
        double d = dist3(2.0, 5.0, std::cos(th));
        double ref = std::exp(-1.0) * (d / std::sinh(d)) / (5 / std::sinh(5.0));
        CHECK(mass_high(h, 3, x) == doctest::Approx(ref).epsilon(1e-9));
        // Harnack: the ratio stays within e^{+-rho dist} up to the linear factor.
        double ratio = mass_high(h, 3, x) / std::exp(-1.0);
        CHECK(ratio <= std::exp(2.0) * 3.0);
        CHECK(ratio >= std::exp(-2.0) / 3.0);
    }
    InitialDatum b(3);
    b.displaced_bump(0.8, HPoint(3, 1.0, {1, 0, 0}));
    HPoint x = HPoint::axial(3, 2.5, 0.7);
    CHECK(mass_high_quadrature(b, x) == doctest::Approx(mass_high(b, 2, x)).epsilon(1e-7));
    CHECK_THROWS_AS(mass_high(u, 1.5, x), ConfigError);
}

TEST_CASE("alt2 is the p = 2 Poisson mass") {
    InitialDatum d(3);
    d.displaced_heat(1.0, HPoint(3, 1.5, {-1, 0, 0}));
    for (double c : {-1.0, 0.2, 1.0}) CHECK(mass_alt2(d, c) == mass_low(d, 2.0, c));
    CHECK(mass_alt2(d, -1.0) > mass_alt2(d, 1.0));
}

TEST_CASE("family_s") {
    InitialDatum u(3);
    u.radial_bump(0.7);
    for (double p : {1.0, 1.5}) {
        HPoint x = HPoint::axial(3, 2.0, 0);
        CHECK(mass_family_s(u, p, 2, x) == doctest::Approx(mass_family_s_direct(u, p, 2, x)).epsilon(1e-9));
        double M = mass_low(u, p, 1.0);
        double far = mass_family_s(u, p, 2, HPoint::axial(3, 60, 0));
        CHECK(far > M);
        CHECK(far - M < 1.1 / (1 + 59.0 * 59.0) * M * 10);
        MassFunction f(u, p, MassChoice::parse("family_s:2", p));
        for (double r : {0.0, 2.0, 17.0}) CHECK(f.at(r, 0.5) == doctest::Approx(mass_family_s(u, p, 2, HPoint::axial(3, r, 0))).epsilon(1e-8));
    }
    InitialDatum d(3);
    d.displaced_bump(0.5, HPoint(3, 1.0, {1, 0, 0}));
    CHECK_THROWS_AS(mass_family_s(d, 1, 2, HPoint::origin(3)), ConfigError);
    CHECK_THROWS_AS(mass_family_s(u, 1, -1, HPoint::origin(3)), ConfigError);
}

TEST_CASE("masses are linear in the datum and bounded by the weighted norm") {
    HPoint c1(3, 1.0, {1, 0, 0}), c2(3, 0.5, {-1, 0, 0});
    InitialDatum a(3), b(3), ab(3);
    a.displaced_bump(0.6, c1);
    b.displaced_heat(0.5, c2, -0.4);
    ab.displaced_bump(0.6, c1).displaced_heat(0.5, c2, -0.4);
    for (double c : {-1.0, 0.1, 0.9}) {
        CHECK(mass_low(ab, 1.2, c) == doctest::Approx(mass_low(a, 1.2, c) + mass_low(b, 1.2, c)));
        CHECK(std::abs(mass_low(ab, 1.2, c)) <= weight_norm(ab, 1.2));
        HPoint x = HPoint::axial(3, 4, std::acos(c));
        CHECK(mass_high(ab, 2, x) == doctest::Approx(mass_high(a, 2, x) + mass_high(b, 2, x)));
    }
    InitialDatum twice(3);
    twice.displaced_bump(0.6, c1, 2.0);
    CHECK(mass_low(twice, 1, 0.5) == doctest::Approx(2 * mass_low(a, 1, 0.5)));
}

TEST_CASE("MassFunction evaluation") {
    InitialDatum d(3);
    d.displaced_heat(1.0, HPoint(3, 2.0, {1, 0, 0}));
    MassFunction low(d, 1.5, MassChoice::parse("low", 1.5));
    MassFunction high(d, 2, MassChoice::parse("high", 2));
    MassFunction alt(d, 2, MassChoice::parse("alt2", 2));
    for (double th : {0.0, 1.3, 3.1}) {
        HPoint x = HPoint::axial(3, 7, th);
        CHECK(low(x) == doctest::Approx(mass_low(d, 1.5, std::cos(th))));
        CHECK(high(x) == doctest::Approx(mass_high(d, 2, x)).epsilon(1e-9));
        CHECK(alt(x) == doctest::Approx(mass_alt2(d, std::cos(th))));
    }
    CHECK(MassFunction(d, 3, MassChoice::parse("constant:2.5", 3)).at(4, 0) == 2.5);
    CHECK(MassFunction(d, 3, MassChoice::parse("zero", 3)).at(4, 0) == 0);
    CHECK(low.weight_norm() == doctest::Approx(weight_norm(d, 1.5)));
    CHECK_THROWS_AS(MassFunction(d, 3, MassChoice::parse("low", 3)), ConfigError);
    CHECK_THROWS_AS(MassFunction(d, 1, MassChoice::parse("high", 1)), ConfigError);
}

TEST_CASE("MassChoice parsing") {
    CHECK(MassChoice::parse("default", 1).regime == MassRegime::Low);
    CHECK(MassChoice::parse("default", 2).regime == MassRegime::High);
    CHECK(MassChoice::parse("default", INFINITY).regime == MassRegime::High);
    CHECK(MassChoice::parse("family_s:3", 1).s_exp == 3);
    CHECK(MassChoice::parse("constant:-1.5", 1).value == -1.5);
    for (const char *s : {"low", "high", "alt2", "zero", "family_s:2.5", "constant:0.125"})
        CHECK(MassChoice::parse(MassChoice::parse(s, 1).label(), 1).label() == s);
    for (const char *s : {"bogus", "family_s", "family_s:x", "constant:1z", "low:2", ""})
        CHECK_THROWS_AS(MassChoice::parse(s, 1), ConfigError);
}

TEST_CASE("datum validation") {
    InitialDatum u(3);
    CHECK_THROWS_AS(u.displaced_bump(0.5, HPoint(3, 1, {0, 1, 0})), ConfigError);
    CHECK_THROWS_AS(u.displaced_heat(-1, HPoint::origin(3)), ConfigError);
    CHECK_THROWS_AS(u.radial_bump(1, NAN), ConfigError);
    CHECK_THROWS_AS(InitialDatum(1), ConfigError);
    u.displaced_bump(0.5, HPoint(3, 1, {-1, 0, 0}));
    CHECK_FALSE(u.is_radial());
    CHECK(u.components()[0].side == -1);
    CHECK(u.outer_radius() == doctest::Approx(1.5));
    CHECK(u.total_mass() == doctest::Approx(1).epsilon(1e-10));
}
