#include "heatflow/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatflow/errors.hpp"
#include "heatflow/parallel.hpp"

namespace heatflow {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sinh(double x) {
    if (x > 20) return x - std::log(2.0) + std::log1p(-std::exp(-2 * x));
    return std::log(std::sinh(x));
}

std::vector<double> restrict_breaks(const std::vector<double> &b, double lo, double hi) {
    std::vector<double> out{lo, hi};
    for (double x : b)
        if (x > lo && x < hi) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double max_center_distance(const InitialDatum &u0) {
    double m = 0;
    for (const auto &c : u0.components()) m = std::max(m, c.dist);
    return m;
}
} // namespace

LogVal bump_solution_1d(const RadialProfile &b, double t, double d) {
    if (!(t > 0)) throw ConfigError("bump solution requires t > 0");
    const double a = b.support_radius;
    if (!std::isfinite(a)) throw ConfigError("1-D bump route needs a compactly supported profile");
    // In H^3, sinh(r) u(t, r) solves v_t = v'' - v with the odd extension of
    // sinh(r) u0(r); the Gaussian integral below is that solution.
    double scale = -t - 0.5 * std::log(4 * kPi * t) - d * d / (4 * t);
    double shift = d * a / (2 * t);
    bool small = d < 0.5;
    if (!small) scale -= log_sinh(d);
    else if (d > 0) scale -= std::log(std::sinh(d) / d);
    auto f = [&](double y) {
        double v = b(y);
        if (v == 0) return 0.0;
        double w;
        if (!small) w = -std::expm1(-d * y / t);
        else w = d > 0 ? -std::expm1(-d * y / t) / d : y / t;
        return std::exp((2 * d * y - y * y) / (4 * t) - shift) * w * std::sinh(y) * v;
    };
    double I = integrate_real(f, b.radial_breaks(), QuadOptions{1e-13, 0, 16, 2000, true});
    if (!(I > 0)) throw QuadratureError("bump solution: nonpositive quadrature value");
    return LogVal::from_log(std::log(I) + scale + shift);
}

LogVal bump_solution_2d(int n, const RadialProfile &b, const HeatKernel &h, double d) {
    auto f = [&](double s) {
        double v = b(s);
        if (v == 0 || s <= 0) return LogVal();
        SphereOptions so;
        so.quad = QuadOptions{1e-12, 0, 16, 2000, true};
        LogVal avg = d == 0 ? h(s) : sphere_reduce_log(n, [&](double c) { return h(distance_polar(d, s, c)); }, so);
        return avg * LogVal::from_log(std::log(v) + (n - 1) * log_sinh(s));
    };
    return LogVal(sphere_area(n)) * integrate_log(f, b.radial_breaks(), QuadOptions{1e-11, 0, 16, 2000, true});
}

HeatSolution::HeatSolution(const InitialDatum &u0, double t, double d_max, BumpRoute route)
    : u0_(u0), t_(t), route_(route) {
    if (!(t > 0)) throw ConfigError("solution requires t > 0");
    const int n = u0.n();
    if (route == BumpRoute::Reduced1D && n != 3) throw ConfigError("the 1-D bump route exists only for n = 3");
    if (route == BumpRoute::Auto) route_ = n == 3 ? BumpRoute::Reduced1D : BumpRoute::Quadrature2D;
    d_max = std::max(d_max, 1.0);
    std::shared_ptr<HeatKernel> ht;
    for (const auto &c : u0.components()) {
        if (c.kind == ComponentKind::DisplacedHeat) {
            heat_.push_back(std::make_shared<HeatKernel>(n, t + c.s, d_max + 1));
            bump_.push_back(nullptr);
            continue;
        }
        heat_.push_back(nullptr);
        RadialProfile prof = c.profile;
        if (route_ == BumpRoute::Reduced1D) {
            bump_.push_back(std::make_shared<ChebTable>(
                [prof, t](double d) { return bump_solution_1d(prof, t, d).log(); }, 0.0, d_max + 1, 0.5));
        } else {
            if (!ht) ht = std::make_shared<HeatKernel>(n, t, d_max + c.radius + 2);
            auto hk = ht;
            bump_.push_back(std::make_shared<ChebTable>(
                [n, prof, hk](double d) { return bump_solution_2d(n, prof, *hk, d).log(); }, 0.0, d_max + 1, 1.0,
                16));
        }
    }
}

double HeatSolution::component_log(std::size_t k, double d) const {
    if (heat_[k]) return heat_[k]->log_value(d);
    return (*bump_[k])(d);
}

LogVal HeatSolution::at(double r, double cosang) const {
    const auto &comps = u0_.components();
    LogVal u;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const auto &c = comps[k];
        double d = c.dist == 0 ? r : distance_polar(r, c.dist, c.side * cosang);
        u += LogVal(c.weight) * LogVal::from_log(component_log(k, d));
    }
    return u;
}

LogVal HeatSolution::operator()(const HPoint &x) const {
    if (!AxialConfig{x.n}.admits(x)) throw ConfigError("evaluation point must lie in the (e1, e2) plane");
    double c = x.r == 0 ? 1.0 : x.omega[0];
    return at(x.r, c);
}

LogVal solve(const InitialDatum &u0, double t, const HPoint &x, BumpRoute route) {
    if (x.n != u0.n()) throw ConfigError("evaluation point has the wrong dimension");
    const int n = u0.n();
    if (route == BumpRoute::Auto) route = n == 3 ? BumpRoute::Reduced1D : BumpRoute::Quadrature2D;
    LogVal u;
    std::shared_ptr<HeatKernel> ht;
    for (const auto &comp : u0.components()) {
        double d = distance(x, comp.center(n));
        LogVal v;
        if (comp.kind == ComponentKind::DisplacedHeat) v = heat_kernel(n, t + comp.s, d).value;
        else if (route == BumpRoute::Reduced1D) {
            if (n != 3) throw ConfigError("the 1-D bump route exists only for n = 3");
            v = bump_solution_1d(comp.profile, t, d);
        } else {
            if (!ht) ht = std::make_shared<HeatKernel>(n, t, d + comp.radius + 2);
            v = bump_solution_2d(n, comp.profile, *ht, d);
        }
        u += LogVal(comp.weight) * v;
    }
    return u;
}

double error_radius(int n, double p, double t, const RegionSchedule &sched) {
    if (std::isinf(p)) return sched.R_of_t(t) + 20 * std::sqrt(t) + 40;
    return lp_breaks(n, t, p, sched).back();
}

namespace {

// D = u/h_t(r) - M at one point, in extended precision.
struct Difference {
    const HeatSolution &u;
    const MassFunction &M;
    long &flagged;

    long double operator()(double r, double c, double log_h) const {
        LogVal uv = u.at(r, c);
        long double q = uv.is_zero() ? 0.0L : uv.sign() * std::exp(static_cast<long double>(uv.log()) - log_h);
        long double m = M.at(r, c);
        long double d = q - m;
        long double big = std::max(std::fabs(q), std::fabs(m));
        if (big > 0 && std::fabs(d) < 1e-12L * big) ++flagged;
        return d;
    }
};

ErrorResult sup_error(const HeatSolution &u, const MassFunction &M, const HeatKernel &ht, const RadialRegion &g,
                      double r_end, const ErrorOptions &opt) {
    ErrorResult res;
    res.r_end = r_end;
    res.crit = g;
    Difference D{u, M, res.flagged};
    const double lh0 = ht.log_value(0.0);
    double best_in = kNegInf, best_out = kNegInf;
    double arg_in[2] = {0, 0}, arg_out[2] = {0, 0};
    auto sample = [&](double r, double th) {
        r = std::clamp(r, 0.0, r_end);
        th = std::clamp(th, 0.0, kPi);
        double lh = ht.log_value(r);
        long double d = D(r, std::cos(th), lh);
        double v = d == 0 ? kNegInf : static_cast<double>(std::log(std::fabs(d))) + lh - lh0;
        if (r <= g.hi) {
            if (v > best_in) best_in = v, arg_in[0] = r, arg_in[1] = th;
        } else if (v > best_out) {
            best_out = v, arg_out[0] = r, arg_out[1] = th;
        }
    };
    const int NR = std::max(opt.sup_radial, 2), NA = std::max(opt.sup_angular, 2);
    for (int i = 0; i < NR; ++i)
        for (int j = 0; j < NA; ++j) sample(r_end * i / (NR - 1), kPi * j / (NA - 1));
    double dr = r_end / (NR - 1), dth = kPi / (NA - 1);
    const int f = std::max(opt.sup_factor, 2);
    for (int level = 0; level < opt.sup_levels; ++level) {
        double c_in[2] = {arg_in[0], arg_in[1]}, c_out[2] = {arg_out[0], arg_out[1]};
        dr /= f;
        dth /= f;
        for (int i = -f; i <= f; ++i)
            for (int j = -f; j <= f; ++j) {
                sample(c_in[0] + i * dr, c_in[1] + j * dth);
                if (best_out > kNegInf) sample(c_out[0] + i * dr, c_out[1] + j * dth);
            }
    }
    res.region = std::exp(best_in);
    res.tail = std::exp(best_out);
    res.E = std::max(res.region, res.tail);
    return res;
}

} // namespace

ErrorResult normalized_error(const HeatSolution &u, const MassFunction &M, double p, const RegionSchedule &sched,
                             const ErrorOptions &opt) {
    if (!(p >= 1)) throw ConfigError("p must lie in [1, inf]");
    const int n = u.n();
    const double t = u.t();
    const RadialRegion g = critical_region(n, p, t, sched);
    const double r_end = error_radius(n, p, t, sched);
    HeatKernel ht(n, t, r_end + 1);
    if (std::isinf(p)) return sup_error(u, M, ht, g, r_end, opt);

    ErrorResult res;
    res.r_end = r_end;
    res.crit = g;
    Difference D{u, M, res.flagged};
    const double ls = std::log(sphere_area(n));
    auto base = [&](double r, double &lh) {
        lh = ht.log_value(r);
        return p * lh + (n - 1) * log_sinh(r) + ls;
    };
    auto num = [&](double r) {
        if (r <= 0) return LogVal();
        double lh;
        double lb = base(r, lh);
        double avg = sphere_reduce(
            n, [&](double c) { return static_cast<double>(std::pow(std::fabs(D(r, c, lh)), static_cast<long double>(p))); },
            opt.angular);
        if (!(avg > 0)) return LogVal();
        return LogVal::from_log(lb + std::log(avg));
    };
    auto den = [&](double r) {
        if (r <= 0) return LogVal();
        double lh;
        return LogVal::from_log(base(r, lh));
    };
    std::vector<double> b = lp_breaks(n, t, p, sched);
    auto part = [&](double lo, double hi, double &log_err) {
        if (!(hi > lo)) return LogVal();
        auto q = integrate<LogVal>(num, restrict_breaks(b, lo, hi), opt.radial);
        log_err = log_add(log_err, q.log_error);
        return q.value;
    };
    double log_err = kNegInf;
    LogVal inner = part(g.lo, std::min(g.hi, r_end), log_err);
    LogVal outer = part(0.0, g.lo, log_err) + part(std::min(g.hi, r_end), r_end, log_err);
    LogVal H = integrate<LogVal>(den, b, opt.radial).value;
    res.region = (inner / H).value();
    res.tail = (outer / H).value();
    LogVal total = inner + outer;
    res.E = total.is_zero() ? 0.0 : std::exp((total / H).log() / p);
    res.log_error = total.is_zero() ? kNegInf : log_err - total.log();
    return res;
}

std::vector<MassChoice> ExperimentSpec::masses_for(double p) const {
    auto it = masses.find(p);
    if (it == masses.end() || it->second.empty()) return {MassChoice::default_for(p)};
    return it->second;
}

void ExperimentSpec::validate() const {
    for (double p : p_list)
        if (!(p >= 1)) throw ConfigError("every p must lie in [1, inf]");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0)) throw ConfigError("t grid entries must be positive");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw ConfigError("t grid must be strictly increasing");
    }
    for (const auto &[p, list] : masses) {
        if (std::find(p_list.begin(), p_list.end(), p) == p_list.end())
            throw ConfigError("mass choice given for a p that is not in the p list");
        (void)list;
    }
}

namespace {
double solution_radius(const ExperimentSpec &spec, double t) {
    double R = 0;
    for (double p : spec.p_list) R = std::max(R, error_radius(spec.datum.n(), p, t, spec.sched));
    return R + max_center_distance(spec.datum) + 1;
}

double mass_radius(const ExperimentSpec &spec, double p) {
    double R = 64;
    for (double t : spec.t_grid) R = std::max(R, error_radius(spec.datum.n(), p, t, spec.sched) + 1);
    return R;
}
} // namespace

double normalized_error(const ExperimentSpec &spec, double p, double t, const MassChoice &mass) {
    HeatSolution u(spec.datum, t, error_radius(spec.datum.n(), p, t, spec.sched) + max_center_distance(spec.datum) + 1,
                   spec.options.bump_route);
    MassFunction M(spec.datum, p, mass, std::max(64.0, error_radius(spec.datum.n(), p, t, spec.sched) + 1));
    return normalized_error(u, M, p, spec.sched, spec.options).E;
}

ConvergenceReport convergence_experiment(const ExperimentSpec &spec) {
    spec.validate();
    ConvergenceReport rep;
    rep.n = spec.datum.n();
    for (const auto &c : spec.datum.components()) rep.truncation_radii.push_back(c.truncation_radius());
    if (spec.t_grid.empty() || spec.p_list.empty()) return rep;

    std::vector<std::shared_ptr<HeatSolution>> sols(spec.t_grid.size());
    parallel_for(sols.size(), [&](std::size_t i) {
        double t = spec.t_grid[i];
        sols[i] = std::make_shared<HeatSolution>(spec.datum, t, solution_radius(spec, t), spec.options.bump_route);
    });

    struct MassSlot {
        double p;
        MassChoice choice;
        std::shared_ptr<MassFunction> fn;
        std::string error;
    };
    std::vector<MassSlot> slots;
    for (double p : spec.p_list)
        for (const auto &m : spec.masses_for(p)) slots.push_back({p, m, nullptr, {}});
    parallel_for(slots.size(), [&](std::size_t i) {
        try {
            slots[i].fn = std::make_shared<MassFunction>(spec.datum, slots[i].p, slots[i].choice,
                                                         mass_radius(spec, slots[i].p));
        } catch (const NumericalError &e) {
            slots[i].error = e.what();
        }
    });

    rep.rows.resize(slots.size() * spec.t_grid.size());
    parallel_for(rep.rows.size(), [&](std::size_t k) {
        const MassSlot &s = slots[k / spec.t_grid.size()];
        std::size_t ti = k % spec.t_grid.size();
        ReportRow &row = rep.rows[k];
        row.p = s.p;
        row.t = spec.t_grid[ti];
        row.mass = s.choice.label();
        if (!s.fn) {
            row.error = s.error;
            return;
        }
        row.weight_norm = s.fn->weight_norm();
        try {
            row.result = normalized_error(*sols[ti], *s.fn, s.p, spec.sched, spec.options);
        } catch (const NumericalError &e) {
            row.error = e.what();
        }
    });
    return rep;
}

GapResult counterexample_gap(const InitialDatum &u0, double t, const RegionSchedule &sched, const ErrorOptions &opt) {
    const int n = u0.n();
    double R = error_radius(n, 1.0, t, sched);
    HeatSolution u(u0, t, R + max_center_distance(u0) + 1, opt.bump_route);
    MassChoice c;
    c.regime = MassRegime::Constant;
    c.value = u0.total_mass();
    MassFunction Mc(u0, 1.0, c), Mm(u0, 1.0, MassChoice::default_for(1.0));
    GapResult g;
    g.E_const = normalized_error(u, Mc, 1.0, sched, opt).E;
    g.E_mass = normalized_error(u, Mm, 1.0, sched, opt).E;
    return g;
}

} // namespace heatflow
