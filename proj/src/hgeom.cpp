#include "heatflow/hgeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatflow/errors.hpp"

namespace heatflow {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sinh(double x) {
    if (x > 20) return x - std::log(2.0) + std::log1p(-std::exp(-2 * x));
    return std::log(std::sinh(x));
}
} // namespace

HPoint::HPoint(int n_, double r_, Vec omega_) : n(n_), r(r_), omega(std::move(omega_)) {
    if (n < 2) throw ConfigError("HPoint requires n >= 2");
    if (!(r >= 0)) throw ConfigError("HPoint requires r >= 0");
    if (static_cast<int>(omega.size()) != n) throw ConfigError("HPoint direction has wrong dimension");
    if (std::abs(norm(omega) - 1) > 1e-12) throw ConfigError("HPoint direction is not a unit vector");
}

HPoint HPoint::origin(int n) {
    Vec w(n, 0.0);
    w[0] = 1;
    return HPoint(n, 0.0, w);
}

HPoint HPoint::axial(int n, double r, double theta) {
    Vec w(n, 0.0);
    w[0] = std::cos(theta);
    w[1] = std::sin(theta);
    return HPoint(n, r, w);
}

Vec HPoint::embedding() const {
    Vec x(n + 1);
    x[0] = std::cosh(r);
    for (int i = 0; i < n; ++i) x[i + 1] = std::sinh(r) * omega[i];
    return x;
}

Vec AxialConfig::axis() const {
    Vec a(n, 0.0);
    a[0] = 1;
    return a;
}

bool AxialConfig::admits(const HPoint &p) const {
    if (p.n != n) return false;
    if (p.r == 0) return true;
    for (int i = 2; i < n; ++i)
        if (std::abs(p.omega[i]) > 1e-12) return false;
    return true;
}

double distance_polar_direct(double r, double s, double cosang) {
    // 2 sinh^2(d/2) = 2 sinh^2((r-s)/2) + sinh r sinh s (1 - cosang)
    double a = std::sinh(0.5 * (r - s));
    double y = a * a + 0.5 * std::sinh(r) * std::sinh(s) * (1 - cosang);
    return 2 * std::asinh(std::sqrt(std::max(y, 0.0)));
}

double distance_polar_log(double r, double s, double cosang) {
    double la = 2 * log_sinh(std::abs(0.5 * (r - s)));
    if (r == s) la = kNegInf;
    double lb = kNegInf;
    double one_minus = 1 - cosang;
    if (one_minus > 0 && r > 0 && s > 0) lb = log_sinh(r) + log_sinh(s) + std::log(0.5 * one_minus);
    double ly = log_add(la, lb);
    if (ly == kNegInf) return 0.0;
    // d = 2 asinh(sqrt(Y)) = log Y + 2 log(1 + sqrt(1 + 1/Y))
    if (ly < 0) return 2 * std::asinh(std::exp(0.5 * ly));
    return ly + 2 * std::log1p(std::sqrt(1 + std::exp(-ly)));
}

double distance_polar(double r, double s, double cosang) {
    if (cosang > 1) cosang = 1;
    if (cosang < -1) cosang = -1;
    return r + s > 30 ? distance_polar_log(r, s, cosang) : distance_polar_direct(r, s, cosang);
}

double distance(const HPoint &a, const HPoint &b) {
    if (a.n != b.n) throw ConfigError("distance: dimension mismatch");
    return distance_polar(a.r, b.r, dot(a.omega, b.omega));
}

double log_poisson_base(double s, double cosang) { return log_poisson_base(s, cosang, 1 - cosang); }

double log_poisson_base(double s, double cosang, double one_minus_cosang) {
    // cosh s - sinh s c = ((1 + c) e^{-s} + (1 - c) e^{s}) / 2
    double a = 1 + cosang, b = one_minus_cosang;
    double la = a > 0 ? std::log(a) - s : kNegInf;
    double lb = b > 0 ? std::log(b) + s : kNegInf;
    return log_add(la, lb) - std::log(2.0);
}

LogVal poisson_power(double s, double cosang, double q) {
    if (!(s >= 0)) throw ConfigError("poisson_power requires s >= 0");
    if (s == 0) return LogVal(1.0);
    return LogVal::from_log(-q * log_poisson_base(s, std::clamp(cosang, -1.0, 1.0)));
}

LogVal poisson_power(double s, double cosang, double one_minus_cosang, double q) {
    if (!(s >= 0)) throw ConfigError("poisson_power requires s >= 0");
    if (s == 0) return LogVal(1.0);
    return LogVal::from_log(-q * log_poisson_base(s, cosang, std::clamp(one_minus_cosang, 0.0, 2.0)));
}

double busemann_defect(double r, const Vec &omega, const HPoint &center) {
    double c = dot(omega, center.omega);
    double d = distance_polar(r, center.r, c);
    if (center.r == 0) return 0.0;
    return (d - r) - log_poisson_base(center.r, c);
}

double sphere_area(int n) { return 2 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n); }

double sphere_reduce_norm(int n) { return std::tgamma(0.5 * n) / (std::sqrt(kPi) * std::tgamma(0.5 * (n - 1))); }

namespace {
std::vector<double> theta_breaks(const SphereOptions &opt) {
    std::vector<double> b{0.0, 0.5 * kPi, kPi};
    for (double x : opt.theta_breaks)
        if (x > 0 && x < kPi) b.push_back(x);
    return b;
}
} // namespace

double sphere_reduce(int n, const std::function<double(double)> &f, const SphereOptions &opt) {
    if (n < 2) throw ConfigError("sphere_reduce requires n >= 2");
    int k = n - 2;
    auto g = [&](double th) { return f(std::cos(th)) * (k == 0 ? 1.0 : std::pow(std::sin(th), k)); };
    return sphere_reduce_norm(n) * integrate_real(g, theta_breaks(opt), opt.quad);
}

double sphere_reduce2(int n, const std::function<double(double, double)> &f, const SphereOptions &opt) {
    if (n < 2) throw ConfigError("sphere_reduce requires n >= 2");
    int k = n - 2;
    auto g = [&](double th) {
        double h = std::sin(0.5 * th);
        return f(std::cos(th), 2 * h * h) * (k == 0 ? 1.0 : std::pow(std::sin(th), k));
    };
    return sphere_reduce_norm(n) * integrate_real(g, theta_breaks(opt), opt.quad);
}

LogVal sphere_reduce_log(int n, const std::function<LogVal(double)> &f, const SphereOptions &opt) {
    if (n < 2) throw ConfigError("sphere_reduce requires n >= 2");
    int k = n - 2;
    auto g = [&](double th) {
        LogVal v = f(std::cos(th));
        if (k == 0) return v;
        double s = std::sin(th);
        if (s <= 0) return LogVal();
        return v * LogVal::from_log(k * std::log(s));
    };
    return LogVal(sphere_reduce_norm(n)) * integrate_log(g, theta_breaks(opt), opt.quad);
}

LogVal volume_integral(int n, const std::function<LogVal(double, double)> &f, const std::vector<double> &r_breaks,
                       const QuadOptions &radial, const SphereOptions &angular) {
    auto g = [&](double r) {
        if (r <= 0) return LogVal();
        LogVal a = sphere_reduce_log(n, [&](double c) { return f(r, c); }, angular);
        return a * LogVal::from_log((n - 1) * log_sinh(r));
    };
    return LogVal(sphere_area(n)) * integrate_log(g, r_breaks, radial);
}

LogVal volume_integral_axial(int n, const std::function<LogVal(double, double, double)> &f,
                             const std::vector<double> &r_breaks,
                             const std::function<std::vector<double>(double)> &theta_breaks_of_r,
                             const QuadOptions &radial, const SphereOptions &angular) {
    if (n < 2) throw ConfigError("volume integral requires n >= 2");
    const int k = n - 2;
    auto g = [&](double r) {
        if (r <= 0) return LogVal();
        std::vector<double> tb = theta_breaks(angular);
        if (theta_breaks_of_r)
            for (double x : theta_breaks_of_r(r))
                if (x > 0 && x < kPi) tb.push_back(x);
        auto h = [&](double th) {
            LogVal v = f(r, std::cos(th), th);
            if (k == 0 || v.is_zero()) return v;
            double st = std::sin(th);
            if (st <= 0) return LogVal();
            return v * LogVal::from_log(k * std::log(st));
        };
        LogVal a = integrate_log(h, tb, angular.quad);
        return a * LogVal::from_log((n - 1) * log_sinh(r) + std::log(sphere_reduce_norm(n)));
    };
    return LogVal(sphere_area(n)) * integrate_log(g, r_breaks, radial);
}

} // namespace heatflow
