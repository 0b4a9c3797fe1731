#include "heatflow/heatkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatflow/errors.hpp"
#include "heatflow/hgeom.hpp"

namespace heatflow {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sinh(double x) {
    if (x > 20) return x - std::log(2.0) + std::log1p(-std::exp(-2 * x));
    return std::log(std::sinh(x));
}

void check_tr(double t, double r) {
    if (!(t > 0)) throw ConfigError("heat kernel requires t > 0");
    if (!(r >= 0)) throw ConfigError("heat kernel requires r >= 0");
}

// Gauss hypergeometric series, |z| < 1.
cplx hyp2f1(cplx a, cplx b, cplx c, double z) {
    cplx term = 1, sum = 1;
    for (int k = 0; k < 2000; ++k) {
        term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * z;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) return sum;
    }
    throw QuadratureError("hypergeometric series did not converge");
}

// Switch between the direct and the contour-shifted spectral integrals.
constexpr double kShiftRadius = 1.0;
} // namespace

Route parse_route(const std::string &s) {
    if (s == "exact" || s == "exact_h3") return Route::ExactH3;
    if (s == "spectral") return Route::Spectral;
    if (s == "asymptotic") return Route::Asymptotic;
    if (s == "auto") return Route::Auto;
    throw ConfigError("unknown route '" + s + "' (expected exact, spectral, asymptotic, auto)");
}

std::string route_name(Route r) {
    switch (r) {
    case Route::ExactH3:
        return "exact";
    case Route::Spectral:
        return "spectral";
    case Route::Asymptotic:
        return "asymptotic";
    default:
        return "auto";
    }
}

LogVal h_exact_h3(double t, double r) {
    check_tr(t, r);
    double lr = r < 1 ? std::log(r == 0 ? 1.0 : r / std::sinh(r)) : std::log(r) - log_sinh(r);
    return LogVal::from_log(-1.5 * std::log(4 * kPi * t) + lr - t - r * r / (4 * t));
}

LogVal h_spectral_direct(int n, double t, double r) {
    check_tr(t, r);
    double rho = 0.5 * (n - 1);
    double lmax = std::sqrt((60.0 + 2 * n) / t);
    auto g = [&](double lam) {
        if (lam == 0) return 0.0;
        return plancherel_density_h(n, lam) * phi_lambda_real(n, lam, r) * std::exp(-t * lam * lam);
    };
    int panels = std::max(4, static_cast<int>(std::ceil(lmax * std::max(r, 1.0) / 3.0)));
    std::vector<double> breaks;
    for (int k = 0; k <= panels; ++k) breaks.push_back(lmax * k / panels);
    double I = integrate_real(g, breaks, QuadOptions{1e-13, 0, 16, 4000, true});
    if (!(I > 0)) throw QuadratureError("spectral heat kernel quadrature lost positivity");
    return LogVal::from_log(std::log(spectral_constant(n) * I) - t * rho * rho);
}

LogVal h_spectral_shifted(int n, double t, double r) {
    check_tr(t, r);
    if (!(r > 0)) throw DomainError("shifted spectral route requires r > 0");
    const cplx I(0, 1);
    double rho = 0.5 * (n - 1);
    double s = r / (2 * t);
    double L = r + std::log1p(std::exp(-2 * r));
    double z = 1 / (std::cosh(r) * std::cosh(r));
    if (r > 350) z = 4 * std::exp(-2 * r);
    auto logg = [&](double x) {
        cplx lam(x, s);
        cplx v = -log_c_alpha(-lam, n - 1, 0, rho);
        v += (I * lam - rho) * L;
        v += std::log(hyp2f1(0.5 * (rho - I * lam), 0.5 * (rho + 1.0 - I * lam), 1.0 - I * lam, z));
        v -= t * lam * lam;
        return v;
    };
    double scale = logg(0.0).real();
    auto g = [&](double x) { return std::exp(logg(x) - scale).real(); };
    double xmax = std::sqrt((60.0 + 2 * n) / t);
    std::vector<double> breaks;
    for (int k = 0; k <= 4; ++k) breaks.push_back(xmax * k / 4);
    double J = integrate_real(g, breaks, QuadOptions{1e-13, 0, 16, 4000, true});
    if (!(J > 0)) throw QuadratureError("shifted spectral quadrature lost positivity");
    return LogVal::from_log(std::log(2 * spectral_constant(n) * J) + scale - t * rho * rho);
}

LogVal h_spectral(int n, double t, double r) {
    if (n < 2) throw ConfigError("heat kernel requires n >= 2");
    return r < kShiftRadius ? h_spectral_direct(n, t, r) : h_spectral_shifted(n, t, r);
}

double asymptotic_gamma(int n, double s) {
    return std::exp(std::lgamma(s + 0.5) + std::lgamma(0.5 * s + 0.25 * (n - 1)) - std::lgamma(s + 1) -
                    std::lgamma(0.5 * s + 0.25));
}

LogVal h_asymptotic(int n, double t, double r) {
    check_tr(t, r);
    if (r == 0) return LogVal();
    double rho = 0.5 * (n - 1);
    double lg = std::log(asymptotic_gamma(n, r / (2 * t)));
    return LogVal::from_log(-std::log(2.0) - 0.5 * n * std::log(kPi) + lg - 1.5 * std::log(t) + std::log(r) -
                            rho * rho * t - rho * r - r * r / (4 * t));
}

HeatEvaluation heat_kernel(int n, double t, double r, Route route) {
    HeatEvaluation e;
    e.t = t;
    e.route = route == Route::Auto ? (n == 3 ? Route::ExactH3 : Route::Spectral) : route;
    switch (e.route) {
    case Route::ExactH3:
        if (n != 3) throw ConfigError("the exact route exists only for n = 3");
        e.value = h_exact_h3(t, r);
        break;
    case Route::Spectral:
        e.value = h_spectral(n, t, r);
        break;
    default:
        e.value = h_asymptotic(n, t, r);
    }
    return e;
}

HeatKernel::HeatKernel(int n, double t, double r_max) : n_(n), t_(t) {
    if (n < 2) throw ConfigError("heat kernel requires n >= 2");
    if (!(t > 0)) throw ConfigError("heat kernel requires t > 0");
    if (n == 3) return;
    if (!(r_max > 0)) r_max = 2.0 * (n - 1) * t + 20 * std::sqrt(t) + 60;
    table_ = ChebTable([n, t](double r) { return h_spectral(n, t, r).log(); }, 0.0, r_max, 0.5);
}

double HeatKernel::log_value(double r) const {
    if (n_ == 3) return h_exact_h3(t_, r).log();
    return table_(r);
}

RadialRegion critical_region(int n, double p, double t, const RegionSchedule &sched) {
    if (!(t > 0)) throw ConfigError("critical region requires t > 0");
    if (!(p >= 1)) throw ConfigError("critical region requires p >= 1");
    RadialRegion g;
    if (p < 2) {
        double c = (2 / p - 1) * (n - 1) * t;
        double w = sched.r_of_t(t);
        g.lo = std::max(0.0, c - w);
        g.hi = c + w;
    } else if (p == 2) {
        double e = sched.eps_of_t(t);
        g.lo = e * std::sqrt(t);
        g.hi = std::sqrt(t) / e;
    } else {
        g.lo = 0;
        g.hi = sched.R_of_t(t);
    }
    if (!(g.hi > g.lo) || !(g.hi > 0) || !std::isfinite(g.hi))
        throw DomainError("critical region is empty at this t (t too small for the schedule)");
    return g;
}

namespace {
// Peak location and width of r -> h_t(r)^p sinh^{n-1} r.
void lp_peak(int n, double t, double p, double &center, double &width) {
    center = std::max(0.0, (2 / p - 1) * (n - 1) * t);
    width = std::sqrt(2 * t / p);
}
} // namespace

std::vector<double> lp_breaks(int n, double t, double p, const RegionSchedule &sched) {
    double c, w;
    lp_peak(n, t, p, c, w);
    double end = c + 14 * w + 40;
    std::vector<double> b{0.0, end};
    for (int k = -4; k <= 4; ++k) {
        double x = c + k * w;
        if (x > 0 && x < end) b.push_back(x);
    }
    try {
        RadialRegion g = critical_region(n, p, t, sched);
        if (g.lo > 0 && g.lo < end) b.push_back(g.lo);
        if (g.hi > 0 && g.hi < end) b.push_back(g.hi);
    } catch (const DomainError &) {
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

namespace {
LogVal lp_integral(int n, double t, double p, const std::vector<double> &breaks) {
    double ls = std::log(sphere_area(n));
    auto f = [&](double r) {
        if (r <= 0) return LogVal();
        double lh = heat_kernel(n, t, r).value.log();
        return LogVal::from_log(p * lh + (n - 1) * log_sinh(r) + ls);
    };
    return integrate_log(f, breaks, QuadOptions{1e-10, 0, 16, 4000, true});
}

std::vector<double> restrict_breaks(const std::vector<double> &b, double lo, double hi) {
    std::vector<double> out{lo, hi};
    for (double x : b)
        if (x > lo && x < hi) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}
} // namespace

LogVal lp_norm_log(int n, double t, double p) {
    if (!(t > 0)) throw ConfigError("lp norm requires t > 0");
    if (!(p >= 1)) throw ConfigError("lp norm requires p >= 1");
    if (std::isinf(p)) return heat_kernel(n, t, 0.0).value;
    LogVal I = lp_integral(n, t, p, lp_breaks(n, t, p, RegionSchedule::defaults()));
    return LogVal::from_log(I.log() / p);
}

double concentration_defect(int n, double t, double p, const RegionSchedule &sched) {
    RadialRegion g = critical_region(n, p, t, sched);
    if (std::isinf(p)) {
        double h0 = heat_kernel(n, t, 0.0).value.log();
        double best = kNegInf;
        double end = g.hi + 20 * std::sqrt(t) + 40;
        for (int k = 0; k <= 400; ++k) {
            double r = g.hi + (end - g.hi) * k / 400.0;
            best = std::max(best, heat_kernel(n, t, r).value.log());
        }
        return std::exp(best - h0);
    }
    std::vector<double> b = lp_breaks(n, t, p, sched);
    double end = b.back();
    LogVal total = lp_integral(n, t, p, b);
    LogVal outside;
    if (g.lo > 0) outside += lp_integral(n, t, p, restrict_breaks(b, 0.0, g.lo));
    if (g.hi < end) outside += lp_integral(n, t, p, restrict_breaks(b, g.hi, end));
    if (outside.is_zero()) return 0.0;
    return std::exp((outside.log() - total.log()) / p);
}

namespace {
std::vector<double> sample_radii(const RadialRegion &g) {
    std::vector<double> r;
    for (int k = 0; k < 5; ++k) r.push_back(g.lo + (g.hi - g.lo) * k / 4.0);
    return r;
}

template <class Target>
double quotient_defect(int n, double p, double t, const HPoint &center, const RegionSchedule &sched,
                       Target target) {
    if (center.n != n) throw ConfigError("quotient defect: center has the wrong dimension");
    RadialRegion g = critical_region(n, p, t, sched);
    HeatKernel hk(n, t, g.hi + center.r + 2);
    double worst = 0;
    for (double r : sample_radii(g))
        for (int k = 0; k < 17; ++k) {
            double c = std::cos(kPi * k / 16.0); // omega . omega_center
            double d = distance_polar(r, center.r, c);
            double q = std::exp(hk.log_value(d) - hk.log_value(r));
            worst = std::max(worst, std::abs(q - target(r, c, d)));
        }
    return worst;
}
} // namespace

double quotient_defect_low(int n, double p, double t, const HPoint &center, const RegionSchedule &sched) {
    if (!(p >= 1 && p < 2)) throw ConfigError("quotient_defect_low requires 1 <= p < 2");
    double q = (n - 1) / p;
    return quotient_defect(n, p, t, center, sched,
                           [&](double, double c, double) { return poisson_power(center.r, c, q).value(); });
}

double quotient_defect_high(int n, double p, double t, const HPoint &center, const RegionSchedule &sched) {
    if (!(p >= 2)) throw ConfigError("quotient_defect_high requires p >= 2");
    return quotient_defect(n, p, t, center, sched, [&](double r, double, double d) {
        return std::exp(phi0(n, d).log() - phi0(n, r).log());
    });
}

RadialProfile heat_profile(int n, double s) {
    if (!(s > 0)) throw ConfigError("heat profile requires s > 0");
    auto hk = std::make_shared<HeatKernel>(n, s, 3.0 * (n - 1) * s + 2 * std::sqrt(45 * s) + 12);
    RadialProfile p;
    p.eval = [hk](double r) { return std::exp(hk->log_value(r)); };
    p.support_radius = std::numeric_limits<double>::infinity();
    double rho = 0.5 * (n - 1);
    // beyond this radius h_s(r) e^{(n-1) r} sinh^{n-1} r is below 1e-18 of its peak
    p.effective_radius = 6 * rho * s + 2 * std::sqrt(45 * s) + 10;
    p.breaks = {2 * rho * s, 4 * rho * s};
    p.smoothness = "analytic, Gaussian tail";
    return p;
}

} // namespace heatflow
