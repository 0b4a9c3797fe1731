#include "heatflow/massfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "heatflow/errors.hpp"
#include "heatflow/heatkernel.hpp"

namespace heatflow {

namespace {
constexpr double kPi = std::numbers::pi;

double log_sinh(double x) {
    if (x > 20) return x - std::log(2.0) + std::log1p(-std::exp(-2 * x));
    return std::log(std::sinh(x));
}

// Angle theta (from the center's direction) at which d((r, theta), center) = D,
// or a negative value if that distance is not attained at radius r.
double angle_at_distance(double r, double s, double D) {
    double a = 0.5 * std::abs(r - s), b = 0.5 * D;
    if (!(b > a) || r <= 0 || s <= 0) return -1;
    // 1 - cos theta = 2 (sinh^2 b - sinh^2 a) / (sinh r sinh s)
    double lnum = 2 * log_sinh(b) + std::log1p(-std::exp(2 * (log_sinh(a) - log_sinh(b))));
    if (a == 0) lnum = 2 * log_sinh(b);
    double omc = 2 * std::exp(lnum - log_sinh(r) - log_sinh(s));
    if (!(omc < 2)) return -1;
    return 2 * std::asin(std::sqrt(0.5 * omc));
}

void check_p(double p) {
    if (!(p >= 1)) throw ConfigError("p must lie in [1, inf]");
}

double rho_of(int n) { return 0.5 * (n - 1); }

// Boundary value i(2/p - 1) rho; zero for p >= 2.
cplx low_parameter(int n, double p) { return cplx(0, (2 / p - 1) * rho_of(n)); }

void check_axis(const HPoint &c, int n) {
    if (c.n != n) throw ConfigError("datum center has the wrong dimension");
    if (c.r == 0) return;
    for (int i = 1; i < n; ++i)
        if (std::abs(c.omega[i]) > 1e-12) throw ConfigError("datum centers must lie on the e1 axis");
}

// Angle of x from e1, for x in the (e1, e2) plane.
double plane_angle(const HPoint &x) {
    if (!AxialConfig{x.n}.admits(x)) throw ConfigError("evaluation point must lie in the (e1, e2) plane");
    if (x.r == 0) return 0;
    return std::atan2(x.omega[1], x.omega[0]);
}

// Average over eta in S^{n-2} of g(omega'.v, 1 - omega'.v), where omega' is at
// angle a from e1 and v at angle b, both measured in the (e1, e2) plane.
double off_axis_average(int n, double a, double b, const std::function<double(double, double)> &g,
                        double rel_tol) {
    double sa = std::sin(a), sb = std::sin(b);
    double base_c = std::cos(a) * std::cos(b);
    double sd = std::sin(0.5 * (a - b));
    double base_omc = 2 * sd * sd;
    if (std::abs(sa * sb) < 1e-300) return g(std::cos(a - b), base_omc);
    // omega'.v = cos a cos b + sin a sin b eta_1
    auto h = [&](double ce, double omce) { return g(base_c + sa * sb * ce, base_omc + sa * sb * omce); };
    if (n == 2) return 0.5 * (h(1, 0) + h(-1, 2));
    SphereOptions so;
    so.quad = QuadOptions{rel_tol, 0, 16, 200, false};
    return sphere_reduce2(n - 1, h, so);
}

std::shared_ptr<ChebTable> log_phi0_table(int n, double r_max) {
    if (n == 3) return nullptr;
    return std::make_shared<ChebTable>([n](double r) { return phi0(n, r).log(); }, 0.0, r_max, 0.5);
}

double log_phi0(int n, const std::shared_ptr<ChebTable> &tab, double r) {
    if (tab) return (*tab)(r);
    return phi0(n, r).log();
}
} // namespace

std::string kind_name(ComponentKind k) {
    switch (k) {
    case ComponentKind::RadialBump:
        return "radial_bump";
    case ComponentKind::DisplacedBump:
        return "displaced_bump";
    default:
        return "displaced_heat";
    }
}

HPoint DatumComponent::center(int n) const {
    Vec w(n, 0.0);
    w[0] = side;
    return HPoint(n, dist, w);
}

double DatumComponent::operator()(double r, double cosang) const {
    double d = dist == 0 ? r : distance_polar(r, dist, side * cosang);
    return profile(d);
}

cplx DatumComponent::transform(int n, cplx lambda) const {
    if (kind == ComponentKind::DisplacedHeat) {
        double rho = rho_of(n);
        return std::exp(-s * (lambda * lambda + rho * rho));
    }
    return spherical_transform(n, profile, lambda);
}

InitialDatum::InitialDatum(int n) : n_(n) {
    if (n < 2) throw ConfigError("datum dimension must be >= 2");
}

void InitialDatum::add(DatumComponent c, const HPoint &center) {
    check_axis(center, n_);
    c.dist = center.r;
    c.side = center.r == 0 || center.omega[0] > 0 ? 1 : -1;
    if (!std::isfinite(c.weight)) throw ConfigError("component weight must be finite");
    comps_.push_back(std::move(c));
}

InitialDatum &InitialDatum::radial_bump(double radius, double weight) {
    DatumComponent c;
    c.kind = ComponentKind::RadialBump;
    c.weight = weight;
    c.radius = radius;
    c.profile = smooth_bump(n_, radius);
    add(std::move(c), HPoint::origin(n_));
    return *this;
}

InitialDatum &InitialDatum::displaced_bump(double radius, const HPoint &center, double weight) {
    DatumComponent c;
    c.kind = center.r == 0 ? ComponentKind::RadialBump : ComponentKind::DisplacedBump;
    c.weight = weight;
    c.radius = radius;
    c.profile = smooth_bump(n_, radius);
    add(std::move(c), center);
    return *this;
}

InitialDatum &InitialDatum::displaced_heat(double s, const HPoint &center, double weight) {
    if (!(s > 0)) throw ConfigError("displaced_heat requires s > 0");
    DatumComponent c;
    c.kind = ComponentKind::DisplacedHeat;
    c.weight = weight;
    c.s = s;
    c.profile = heat_profile(n_, s);
    add(std::move(c), center);
    return *this;
}

bool InitialDatum::is_radial() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const DatumComponent &c) { return c.dist == 0; });
}

double InitialDatum::operator()(double r, double cosang) const {
    double v = 0;
    for (const auto &c : comps_) v += c.weight * c(r, cosang);
    return v;
}

double InitialDatum::value(const HPoint &x) const {
    return (*this)(x.r, std::cos(plane_angle(x)));
}

double InitialDatum::total_mass() const {
    double m = 0;
    for (const auto &c : comps_) m += c.weight * c.transform(n_, cplx(0, rho_of(n_))).real();
    return m;
}

double InitialDatum::outer_radius() const {
    double R = 0;
    for (const auto &c : comps_) R = std::max(R, c.dist + c.truncation_radius());
    return R;
}

std::vector<double> InitialDatum::radial_breaks() const {
    std::vector<double> b{0.0};
    double R = outer_radius();
    if (R <= 0) return b;
    b.push_back(R);
    for (const auto &c : comps_) {
        std::vector<double> local = c.profile.breaks;
        local.push_back(c.truncation_radius());
        b.push_back(c.dist);
        for (double x : local) {
            b.push_back(c.dist + x);
            b.push_back(c.dist - x);
        }
    }
    std::vector<double> out;
    for (double x : b)
        if (x >= 0 && x <= R) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> InitialDatum::theta_breaks(double r) const {
    std::vector<double> out;
    for (const auto &c : comps_) {
        if (c.dist == 0) continue;
        std::vector<double> D;
        if (c.kind == ComponentKind::DisplacedHeat) {
            double w = 0.25 * std::sqrt(c.s);
            for (double x = std::abs(r - c.dist) + w; x < r + c.dist && D.size() < 40; x = 2 * x - std::abs(r - c.dist))
                D.push_back(x);
        } else {
            D = {0.5 * c.radius, 0.9 * c.radius, c.radius};
        }
        for (double x : D) {
            double th = angle_at_distance(r, c.dist, x);
            if (th > 0) out.push_back(c.side > 0 ? th : kPi - th);
        }
    }
    return out;
}

double weight_exponent(int n, double p) {
    check_p(p);
    return p <= 2 ? (2 / p) * rho_of(n) : rho_of(n);
}

double weight_norm(const InitialDatum &u0, double p) {
    if (u0.empty()) return 0;
    const double a = weight_exponent(u0.n(), p);
    auto f = [&](double r, double c, double) {
        double v = std::abs(u0(r, c));
        if (v == 0) return LogVal();
        return LogVal::from_log(std::log(v) + a * r);
    };
    auto tb = [&](double r) { return u0.theta_breaks(r); };
    SphereOptions so;
    so.quad = QuadOptions{1e-11, 0, 16, 2000, true};
    LogVal I = volume_integral_axial(u0.n(), f, u0.radial_breaks(), tb, QuadOptions{1e-10, 0, 16, 4000, true}, so);
    double v = I.value();
    if (!std::isfinite(v)) throw DomainError("weighted norm of the datum diverges");
    return v;
}

double mass_low(const InitialDatum &u0, double p, double cosang) {
    check_p(p);
    if (p > 2) throw ConfigError("mass_low requires p in [1, 2]");
    const int n = u0.n();
    const cplx lam = low_parameter(n, p);
    const double q = (n - 1) / p;
    double m = 0;
    for (const auto &c : u0.components()) {
        double T = c.transform(n, lam).real();
        m += c.weight * T * poisson_power(c.dist, c.side * cosang, q).value();
    }
    return m;
}

double mass_low(const InitialDatum &u0, double p, const Vec &omega) {
    if (static_cast<int>(omega.size()) != u0.n()) throw ConfigError("direction has the wrong dimension");
    return mass_low(u0, p, omega[0] / norm(omega));
}

double mass_low_quadrature(const InitialDatum &u0, double p, double cosang, double rel_tol) {
    check_p(p);
    if (u0.empty()) return 0;
    const int n = u0.n();
    const double q = (n - 1) / p;
    const double b = std::acos(std::clamp(cosang, -1.0, 1.0));
    const double inner = rel_tol * 1e-2;
    auto f = [&](double r, double c, double a) {
        double v = u0(r, c);
        if (v == 0) return LogVal();
        double avg = off_axis_average(
            n, a, b, [&](double cc, double oo) { return poisson_power(r, cc, oo, q).value(); }, inner);
        return LogVal(v) * LogVal(avg);
    };
    auto tb = [&](double r) {
        std::vector<double> t = u0.theta_breaks(r);
        if (b > 0 && b < kPi) t.push_back(b);
        return t;
    };
    // Inner levels report best effort: far shells carry negligible mass but can
    // sit at the noise floor of the innermost average. The radial level decides.
    SphereOptions so;
    so.quad = QuadOptions{rel_tol * 0.1, 0, 16, 400, false};
    return volume_integral_axial(n, f, u0.radial_breaks(), tb, QuadOptions{rel_tol, 0, 16, 4000, true}, so).value();
}

double mass_high(const InitialDatum &u0, double p, const HPoint &x) {
    check_p(p);
    if (p < 2) throw ConfigError("mass_high requires p >= 2");
    const int n = u0.n();
    if (x.n != n) throw ConfigError("evaluation point has the wrong dimension");
    double lx = phi0(n, x.r).log();
    double m = 0;
    for (const auto &c : u0.components()) {
        double T = c.transform(n, 0.0).real();
        double d = distance(x, c.center(n));
        m += c.weight * T * std::exp(phi0(n, d).log() - lx);
    }
    return m;
}

double mass_high_quadrature(const InitialDatum &u0, const HPoint &x, double rel_tol) {
    if (u0.empty()) return 0;
    const int n = u0.n();
    const double b = plane_angle(x);
    const double R = x.r;
    auto tab = log_phi0_table(n, R + u0.outer_radius() + 1);
    const double lx = log_phi0(n, tab, R);
    const double inner = rel_tol * 1e-2;
    auto f = [&](double r, double c, double a) {
        double v = u0(r, c);
        if (v == 0) return LogVal();
        double avg = off_axis_average(
            n, a, std::abs(b),
            [&](double cc, double) { return std::exp(log_phi0(n, tab, distance_polar(R, r, cc)) - lx); }, inner);
        return LogVal(v) * LogVal(avg);
    };
    auto tb = [&](double r) {
        std::vector<double> t = u0.theta_breaks(r);
        if (std::abs(b) > 0) t.push_back(std::abs(b));
        return t;
    };
    // Inner levels report best effort: far shells carry negligible mass but can
    // sit at the noise floor of the innermost average. The radial level decides.
    SphereOptions so;
    so.quad = QuadOptions{rel_tol * 0.1, 0, 16, 400, false};
    return volume_integral_axial(n, f, u0.radial_breaks(), tb, QuadOptions{rel_tol, 0, 16, 4000, true}, so).value();
}

double mass_alt2(const InitialDatum &u0, double cosang) { return mass_low(u0, 2.0, cosang); }

namespace {
// Integral of u0(y) phi_{i(2/p-1)rho}(y) g(d(x, y)) for radial u0 and |x| = R.
double radial_pairing(const InitialDatum &u0, double p, double R, const std::function<double(double)> &g) {
    const int n = u0.n();
    const cplx lam = low_parameter(n, p);
    SphereOptions so;
    so.quad = QuadOptions{1e-12, 0, 16, 2000, true};
    auto f = [&](double r) {
        if (r <= 0) return 0.0;
        double v = u0(r, 1.0);
        if (v == 0) return 0.0;
        double ph = phi_lambda_real(n, lam, r);
        double avg = R == 0 ? g(r) : sphere_reduce(n, [&](double c) { return g(distance_polar(R, r, c)); }, so);
        return v * ph * avg * std::exp((n - 1) * log_sinh(r));
    };
    return sphere_area(n) * integrate_real(f, u0.radial_breaks(), QuadOptions{1e-11, 0, 16, 2000, true});
}

void check_family(const InitialDatum &u0, double p, double s_exp) {
    check_p(p);
    if (p > 2) throw ConfigError("mass_family_s requires p in [1, 2]");
    if (!(s_exp > 0)) throw ConfigError("mass_family_s requires s_exp > 0");
    if (!u0.is_radial()) throw ConfigError("mass_family_s requires a radial datum");
}
} // namespace

double mass_family_s(const InitialDatum &u0, double p, double s_exp, const HPoint &x) {
    check_family(u0, p, s_exp);
    if (u0.empty()) return 0;
    double M = mass_low(u0, p, 1.0);
    return M + radial_pairing(u0, p, x.r, [&](double d) { return 1 / (1 + std::pow(d, s_exp)); });
}

double mass_family_s_direct(const InitialDatum &u0, double p, double s_exp, const HPoint &x) {
    check_family(u0, p, s_exp);
    if (u0.empty()) return 0;
    return radial_pairing(u0, p, x.r, [&](double d) {
        double ds = std::pow(d, s_exp);
        return (2 + ds) / (1 + ds);
    });
}

MassChoice MassChoice::default_for(double p) {
    MassChoice c;
    c.regime = p < 2 ? MassRegime::Low : MassRegime::High;
    return c;
}

MassChoice MassChoice::parse(const std::string &s, double p) {
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    auto arg = [&]() {
        if (colon == std::string::npos) throw ConfigError("mass choice '" + s + "' needs a ':<value>' argument");
        try {
            size_t used = 0;
            double v = std::stod(s.substr(colon + 1), &used);
            if (used != s.size() - colon - 1) throw ConfigError("bad number in mass choice '" + s + "'");
            return v;
        } catch (const std::logic_error &) {
            throw ConfigError("bad number in mass choice '" + s + "'");
        }
    };
    MassChoice c;
    if (head == "default") return default_for(p);
    if (head == "low") c.regime = MassRegime::Low;
    else if (head == "high") c.regime = MassRegime::High;
    else if (head == "alt2") c.regime = MassRegime::Alt2;
    else if (head == "zero") c.regime = MassRegime::Zero;
    else if (head == "family_s") {
        c.regime = MassRegime::FamilyS;
        c.s_exp = arg();
    } else if (head == "constant") {
        c.regime = MassRegime::Constant;
        c.value = arg();
    } else
        throw ConfigError("unknown mass choice '" + s + "'");
    if (colon != std::string::npos && c.regime != MassRegime::FamilyS && c.regime != MassRegime::Constant)
        throw ConfigError("mass choice '" + head + "' takes no argument");
    return c;
}

std::string MassChoice::label() const {
    std::ostringstream os;
    switch (regime) {
    case MassRegime::Low:
        return "low";
    case MassRegime::High:
        return "high";
    case MassRegime::Alt2:
        return "alt2";
    case MassRegime::Zero:
        return "zero";
    case MassRegime::FamilyS:
        os << "family_s:" << s_exp;
        return os.str();
    default:
        os.precision(17);
        os << "constant:" << value;
        return os.str();
    }
}

MassFunction::MassFunction(const InitialDatum &u0, double p, MassChoice choice, double r_max)
    : u0_(u0), p_(p), choice_(choice) {
    check_p(p);
    const int n = u0.n();
    weight_norm_ = heatflow::weight_norm(u0, p);
    switch (choice.regime) {
    case MassRegime::Low:
    case MassRegime::Alt2: {
        if (choice.regime == MassRegime::Low && p > 2) throw ConfigError("low-regime mass requires p <= 2");
        double pe = choice.regime == MassRegime::Alt2 ? 2.0 : p;
        q_ = (n - 1) / pe;
        for (const auto &c : u0.components())
            coef_.push_back(c.weight * c.transform(n, low_parameter(n, pe)).real());
        break;
    }
    case MassRegime::High: {
        if (p < 2) throw ConfigError("high-regime mass requires p >= 2");
        for (const auto &c : u0.components()) coef_.push_back(c.weight * c.transform(n, 0.0).real());
        double reach = 0;
        for (const auto &c : u0.components()) reach = std::max(reach, c.dist);
        log_phi0_ = log_phi0_table(n, r_max + reach + 1);
        break;
    }
    case MassRegime::FamilyS: {
        check_family(u0, p, choice.s_exp);
        constant_ = u0.empty() ? 0 : mass_low(u0, p, 1.0);
        double s = choice.s_exp;
        if (!u0.empty()) {
            InitialDatum d = u0;
            // tabulated in x = log(1 + R), where the correction varies on an O(1) scale
            correction_ = std::make_shared<ChebTable>(
                [d, p, s](double x) {
                    return radial_pairing(d, p, std::expm1(x), [&](double y) { return 1 / (1 + std::pow(y, s)); });
                },
                0.0, std::log1p(r_max), 0.25, 16);
        }
        break;
    }
    default:
        break;
    }
}

double MassFunction::at(double r, double cosang) const {
    const auto &comps = u0_.components();
    switch (choice_.regime) {
    case MassRegime::Low:
    case MassRegime::Alt2: {
        double m = 0;
        for (size_t k = 0; k < comps.size(); ++k)
            m += coef_[k] * poisson_power(comps[k].dist, comps[k].side * cosang, q_).value();
        return m;
    }
    case MassRegime::High: {
        const int n = u0_.n();
        double lx = log_phi0(n, log_phi0_, r);
        double m = 0;
        for (size_t k = 0; k < comps.size(); ++k) {
            double d = comps[k].dist == 0 ? r : distance_polar(r, comps[k].dist, comps[k].side * cosang);
            m += coef_[k] * std::exp(log_phi0(n, log_phi0_, d) - lx);
        }
        return m;
    }
    case MassRegime::FamilyS:
        return constant_ + (correction_ ? (*correction_)(std::log1p(r)) : 0.0);
    case MassRegime::Constant:
        return choice_.value;
    default:
        return 0;
    }
}

double MassFunction::operator()(const HPoint &x) const { return at(x.r, std::cos(plane_angle(x))); }

} // namespace heatflow
