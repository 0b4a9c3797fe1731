#include <doctest.h>

#include <cmath>

#include "heatflow/errors.hpp"
#include "heatflow/plancherel.hpp"

using namespace heatflow;

namespace {
double density(const RootDatum &d, const Vec &l) { return std::exp(plancherel_density_log(d, l).log()); }
} // namespace

TEST_CASE("complex Gamma") {
    CHECK(std::abs(complex_gamma(1.0) - 1.0) < 1e-14);
    CHECK(std::abs(complex_gamma(0.5) - std::sqrt(M_PI)) < 1e-14);
    for (double x : {0.1, 0.7, 3.3, 9.5, -0.5, -2.5})
        CHECK(complex_gamma(x).real() == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
    for (cplx z : {cplx(2.5, 1), cplx(0.3, -7), cplx(-3.2, 20), cplx(10, 45)}) {
        cplx lhs = complex_gamma(z + 1.0), rhs = z * complex_gamma(z);
        CHECK(std::abs(lhs / rhs - 1.0) < 1e-12);
        CHECK(std::abs(std::exp(complex_lgamma(z)) / complex_gamma(z) - 1.0) < 1e-12);
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        if (std::abs(z.imag()) < 30)
            CHECK(std::abs(complex_gamma(z) * complex_gamma(1.0 - z) * std::sin(M_PI * z) / M_PI - 1.0) < 1e-11);
    }
    CHECK_THROWS_AS(complex_gamma(0.0), PoleError);
    CHECK_THROWS_AS(complex_gamma(-3.0), PoleError);
}

TEST_CASE("rank one Plancherel density") {
    RootDatum d3 = build_root_system(FamilySpec::rank1(3));
    CHECK(density(d3, {2.0}) / density(d3, {1.0}) == doctest::Approx(4).epsilon(1e-12));
    for (double l : {0.5, 1.0, 2.0}) {
        cplx c = c_alpha(cplx(l, 0), 2, 0);
        CHECK(std::norm(c) == doctest::Approx(std::real(c * std::conj(c))));
        CHECK(1 / std::norm(c) / (l * l) == doctest::Approx(1 / std::norm(c_alpha(1.0, 2, 0))));
    }
    // n = 2: |c|^-2 ~ lambda tanh(pi lambda) up to a constant
    RootDatum d2 = build_root_system(FamilySpec::rank1(2));
    CHECK(density(d2, {50.0}) / density(d2, {25.0}) == doctest::Approx(2).epsilon(0.02));
    for (FamilySpec fs : {FamilySpec::rank1(2), FamilySpec::rank1(5), FamilySpec::a2(), FamilySpec::b2(1, 2)}) {
        RootDatum d = build_root_system(fs);
        Vec l(d.rank, 0.7), m(d.rank, -0.7);
        if (d.rank == 2) l[1] = 1.9, m[1] = -1.9;
        CHECK(density(d, l) == doctest::Approx(density(d, m)).epsilon(1e-12));
    }
}

TEST_CASE("density vanishes at lambda = 0 to second order in H^3") {
    RootDatum d3 = build_root_system(FamilySpec::rank1(3));
    double a = plancherel_density_log(d3, {1e-4}).log(), b = plancherel_density_log(d3, {1e-3}).log();
    CHECK((b - a) / std::log(10.0) == doctest::Approx(2).epsilon(1e-6));
}

TEST_CASE("|c|^-2 = |pi(i lambda)|^2 |b(lambda)|^-2 on real lambda") {
    for (FamilySpec fs : {FamilySpec::rank1(2), FamilySpec::rank1(3), FamilySpec::rank1(6), FamilySpec::a2()}) {
        RootDatum d = build_root_system(fs);
        for (double s : {0.3, 1.0, 4.0}) {
            Vec l(d.rank, s);
            if (d.rank == 2) l[1] = 0.4 * s;
            std::vector<cplx> lc(l.begin(), l.end());
            double pi2 = std::pow(pi_poly(d, l), 2);
            double lhs = plancherel_density_log(d, l).log();
            double rhs = std::log(pi2) + 2 * b_inverse_log(d, lc).log_mag;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("b(-lambda)^-1 is regular and polynomially bounded") {
    RootDatum d3 = build_root_system(FamilySpec::rank1(3));
    PhaseLog b0 = b_inverse_log(d3, {0.0});
    CHECK(std::isfinite(b0.log_mag));
    PhaseLog bi = b_inverse_log(d3, {cplx(0, 0.3)});
    CHECK(std::isfinite(bi.log_mag));
    // b is constant in H^3.
    CHECK(bi.log_mag == doctest::Approx(b0.log_mag).epsilon(1e-12));

    for (int n : {2, 4, 5}) {
        RootDatum d = build_root_system(FamilySpec::rank1(n));
        double lo = INFINITY, hi = -INFINITY;
        for (double l = 0; l < 200; l += 1.7) {
            double v = b_inverse_log(d, {cplx(l, 0)}).log_mag - (0.5 * (n - 1) - 1) * std::log1p(l);
            lo = std::min(lo, v), hi = std::max(hi, v);
        }
        CHECK(hi - lo < 3);
        // finite-difference derivative bounded by a constant times the value
        double worst = 0;
        for (double l = 0.05; l < 50; l += 0.9) {
            double h = 1e-5;
            cplx a = b_inverse_log(d, {cplx(l + h, 0)}).value(), b = b_inverse_log(d, {cplx(l - h, 0)}).value();
            worst = std::max(worst, std::abs((a - b) / (2 * h)) / std::abs(b_inverse_log(d, {cplx(l, 0)}).value()));
        }
        CHECK(worst < 10);
    }
    CHECK_THROWS_AS(b_inverse_log(d3, {cplx(0, -1)}), DomainError);
}

TEST_CASE("b ratio defect") {
    RootDatum d3 = build_root_system(FamilySpec::rank1(3));
    CHECK(b_ratio_defect(d3, 100, 0, 100) == 0);
    // b is constant in H^3, so the defect vanishes there; elsewhere it decays like 1/t.
    CHECK(b_ratio_defect(d3, 100, 2, 100) < 1e-14);
    for (int n : {2, 4, 5, 7}) {
        RootDatum d = build_root_system(FamilySpec::rank1(n));
        std::vector<double> D;
        for (double t : {50.0, 100.0, 200.0, 400.0}) D.push_back(b_ratio_defect(d, t, 2, t));
        for (size_t i = 1; i < D.size(); ++i) {
            CHECK(D[i] < D[i - 1]);
            CHECK(D[i] / D[i - 1] == doctest::Approx(0.5).epsilon(0.25));
        }
        CHECK(D[3] / D[1] >= 0.15);
        CHECK(D[3] / D[1] <= 0.4);
    }
}
