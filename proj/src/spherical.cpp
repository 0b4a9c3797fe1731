#include "heatflow/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "heatflow/errors.hpp"
#include "heatflow/hgeom.hpp"

namespace heatflow {

namespace {
constexpr double kPi = std::numbers::pi;

double log_sinh(double x) {
    if (x > 20) return x - std::log(2.0) + std::log1p(-std::exp(-2 * x));
    return std::log(std::sinh(x));
}

// log(cosh r - 1), the largest value of log(cosh r - cosh l).
double log_cosh_minus_one(double r) { return std::log(2.0) + 2 * log_sinh(0.5 * r); }
} // namespace

namespace {
// phi_lambda inside transform integrands. In H^3 phi_lambda(r) = sin(lambda r)/(lambda sinh r),
// which keeps the cost of a transform linear in |lambda| instead of quadratic.
ScaledComplex phi_kernel(int n, cplx lambda, double r) {
    if (n != 3 || r == 0 || std::abs(lambda.imag()) * r > 600) return phi_lambda(n, lambda, r);
    double ls = log_sinh(r);
    if (std::abs(lambda) * r < 1e-8) return {r / std::sinh(r), 0.0};
    if (r < 1) return {std::sin(lambda * r) / (lambda * std::sinh(r)), 0.0};
    return {std::sin(lambda * r) / lambda, -ls};
}
} // namespace

std::vector<double> RadialProfile::radial_breaks() const {
    double R = integration_radius();
    std::vector<double> b{0.0, R};
    for (double x : breaks)
        if (x > 0 && x < R) b.push_back(x);
    std::sort(b.begin(), b.end());
    return b;
}

RadialProfile smooth_bump(int n, double radius) {
    if (!(radius > 0)) throw ConfigError("bump radius must be positive");
    auto shape = [radius](double r) {
        double u = r / radius;
        if (u >= 1) return 0.0;
        return std::exp(-1.0 / (1 - u * u));
    };
    QuadOptions q{1e-13, 0, 16, 2000, true};
    double mass = sphere_area(n) *
                  integrate_real([&](double r) { return shape(r) * std::pow(std::sinh(r), n - 1); },
                                 {0.0, 0.5 * radius, 0.9 * radius, radius}, q);
    RadialProfile p;
    p.eval = [shape, mass](double r) { return shape(r) / mass; };
    p.support_radius = radius;
    p.effective_radius = radius;
    p.breaks = {0.5 * radius, 0.9 * radius};
    p.smoothness = "C-infinity, flat at the support edge";
    return p;
}

ScaledComplex phi_lambda(int n, cplx lambda, double r) {
    if (n < 2) throw ConfigError("phi_lambda requires n >= 2");
    if (!(r >= 0)) throw ConfigError("phi_lambda requires r >= 0");
    if (r == 0) return {1.0, 0.0};
    const double e = 0.5 * (n - 3);
    const double scale = std::abs(lambda.imag()) * r + e * log_cosh_minus_one(r);
    const cplx I(0, 1);
    // l = r cos(psi); cosh r - cosh l = 2 sinh(r cos^2(psi/2)) sinh(r sin^2(psi/2)).
    auto g = [&](double psi) -> cplx {
        double c2 = std::cos(0.5 * psi), s2 = std::sin(0.5 * psi);
        double a = r * c2 * c2, b = r * s2 * s2;
        if (a <= 0 || b <= 0) return 0.0;
        double logk = std::log(2.0) + log_sinh(a) + log_sinh(b);
        double l = r * std::cos(psi);
        cplx expo = -I * lambda * l + e * logk + std::log(r * std::sin(psi)) - scale;
        return std::exp(expo);
    };
    int panels = std::max(2, static_cast<int>(std::ceil(std::abs(lambda.real()) * r / 3.0)));
    panels = std::min(panels, 400);
    std::vector<double> breaks;
    for (int k = 0; k <= panels; ++k) breaks.push_back(kPi * k / panels);
    // Where phi_lambda nearly vanishes (large lambda r, or near its zeros) the
    // relative target is out of reach; the error is then judged against int |g|.
    auto res = integrate<cplx>(g, breaks, QuadOptions{1e-13, 0, 16, 4000, false});
    if (!res.converged && !(res.log_error <= res.log_mass + std::log(1e-11)))
        throw QuadratureError("phi_lambda: quadrature did not converge at r = " + std::to_string(r));
    cplx I0 = res.value;
    double pref = std::log(sphere_reduce_norm(n)) + e * std::log(2.0) - (n - 2) * log_sinh(r);
    return {I0, scale + pref};
}

double phi_lambda_real(int n, cplx lambda, double r) { return phi_lambda(n, lambda, r).value().real(); }

LogVal phi0(int n, double r) {
    if (!(r >= 0)) throw ConfigError("phi0 requires r >= 0");
    if (r == 0) return LogVal(1.0);
    if (n == 3) {
        if (r < 1) return LogVal(r / std::sinh(r));
        return LogVal::from_log(std::log(r) - log_sinh(r));
    }
    ScaledComplex v = phi_lambda(n, 0.0, r);
    return LogVal(v.mantissa.real()) * LogVal::from_log(v.log_scale);
}

cplx spherical_transform(int n, const RadialProfile &f, cplx lambda, const QuadOptions &opt) {
    auto g = [&](double r) -> cplx {
        double v = f(r);
        if (v == 0 || r == 0) return 0.0;
        ScaledComplex p = phi_kernel(n, lambda, r);
        return v * p.mantissa * std::exp(p.log_scale + (n - 1) * log_sinh(r));
    };
    // Large |lambda| transforms are pure cancellation; judge those against int |g|.
    QuadOptions q = opt;
    q.throw_on_failure = false;
    auto res = integrate<cplx>(g, f.radial_breaks(), q);
    if (!res.converged && opt.throw_on_failure && !(res.log_error <= std::log(opt.rel_tol) + res.log_mass))
        throw QuadratureError("spherical transform: no convergence at lambda = " + std::to_string(lambda.real()) +
                              (lambda.imag() == 0 ? "" : " + " + std::to_string(lambda.imag()) + "i"));
    return sphere_area(n) * res.value;
}

double plancherel_density_h(int n, double lambda) {
    if (lambda == 0) return 0.0;
    double rho = 0.5 * (n - 1);
    return std::exp(-2 * log_c_alpha(cplx(lambda, 0), n - 1, 0, rho).real());
}

namespace {

// The λ-integral over [a, b]. A nonzero abs_tol caps the work on tail chunks;
// otherwise the error is judged against rel_tol times |result| or int |g|,
// whichever is larger (F itself is only known to about rel_tol).
double direct_inverse(int n, const std::function<double(double)> &F, double r, double a, double b,
                      double rel_tol, double abs_tol, double &log_mass) {
    auto g = [&](double lam) {
        if (lam == 0) return 0.0;
        double f = F(lam);
        if (f == 0) return 0.0;
        return plancherel_density_h(n, lam) * phi_kernel(n, lam, r).value().real() * f;
    };
    int panels = std::max(2, static_cast<int>(std::ceil((b - a) * std::max(r, 1.0) / 3.0)));
    panels = std::min(panels, 2000);
    std::vector<double> breaks;
    for (int k = 0; k <= panels; ++k) breaks.push_back(a + (b - a) * k / panels);
    auto res = integrate<double>(g, breaks, QuadOptions{rel_tol, abs_tol, 16, 20000, false});
    if (!res.converged && !(res.log_error <= std::log(rel_tol) + res.log_mass))
        throw QuadratureError("inverse spherical transform: no convergence on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    log_mass = res.log_mass;
    return res.value;
}

double raw_inverse(int n, const std::function<double(double)> &F, double r, const InverseOptions &opt) {
    double lm;
    if (opt.lambda_max > 0) return direct_inverse(n, F, r, 0.0, opt.lambda_max, opt.rel_tol, 0.0, lm);
    double L = 8;
    double total = direct_inverse(n, F, r, 0.0, L, opt.rel_tol, 0.0, lm);
    // Scale for the tail: |total|, or int |g| where the result itself is ~0.
    double scale = std::max(std::abs(total), std::exp(lm));
    for (int it = 0; it < 12; ++it) {
        double chunk = direct_inverse(n, F, r, L, 2 * L, opt.rel_tol, 1e-2 * opt.rel_tol * scale, lm);
        total += chunk;
        L *= 2;
        // Chunks shrink at least geometrically once this holds.
        if (lm < std::log(opt.rel_tol) + std::log(std::max(scale, 1e-300))) return total;
    }
    throw QuadratureError("inverse spherical transform: spectral tail did not become negligible");
}

} // namespace

double calibrated_kappa() {
    static double kappa = [] {
        // Exact H^3 kernel at (t, r) = (1, 1) against the uncalibrated spectral integral.
        double exact = std::pow(4 * kPi, -1.5) * (1.0 / std::sinh(1.0)) * std::exp(-1.0 - 0.25);
        auto F = [](double lam) { return std::exp(-(lam * lam + 1.0)); };
        double raw = raw_inverse(3, F, 1.0, InverseOptions{1e-13, 12.0});
        return exact / (raw * 4.0 / sphere_area(3));
    }();
    return kappa;
}

double spectral_constant(int n) { return calibrated_kappa() * std::pow(2.0, n - 1) / sphere_area(n); }

double inverse_transform_radial(int n, const std::function<double(double)> &F, double r, const InverseOptions &opt) {
    if (!(r >= 0)) throw ConfigError("inverse transform requires r >= 0");
    return spectral_constant(n) * raw_inverse(n, F, r, opt);
}

} // namespace heatflow
