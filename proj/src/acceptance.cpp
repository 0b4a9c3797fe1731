#include "heatflow/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "heatflow/errors.hpp"
#include "heatflow/evolve.hpp"
#include "heatflow/heatkernel.hpp"
#include "heatflow/massfn.hpp"
#include "heatflow/plancherel.hpp"
#include "heatflow/spherical.hpp"

namespace heatflow {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char *f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string g(double a) { return fmt("%.3g", a); }

std::string series(const std::vector<double> &v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + g(v[i]);
    return s + ")";
}

bool strictly_decreasing(const std::vector<double> &v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

struct Check {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string &what) {
        if (!detail.str().empty()) detail << "; ";
        detail << what;
        if (!ok) {
            detail << " [fails]";
            pass = false;
        }
    }
};

using Body = std::function<void(Check &)>;

void route_agreement(Check &c) {
    double worst = 0;
    for (double t : {0.5, 5.0, 50.0})
        for (double r : {0.1, 1.0, 10.0, 3 * t}) {
            double d = std::abs(std::expm1(h_spectral(3, t, r).log() - h_exact_h3(t, r).log()));
            worst = std::max(worst, d);
        }
    c.require(worst <= 1e-8, "max |h_spectral/h_exact - 1| = " + g(worst) + " (tol 1e-8)");
}

void mass_conservation(Check &c) {
    double worst = 0;
    for (int n : {2, 3, 4})
        for (double t : {1.0, 10.0, 50.0}) worst = std::max(worst, std::abs(lp_norm_log(n, t, 1.0).value() - 1));
    c.require(worst <= 1e-6, "max |‖h_t‖_1 - 1| = " + g(worst) + " (tol 1e-6)");
}

void spherical_closed_form(Check &c) {
    double worst = 0;
    for (double lam : {0.5, 1.0, 3.0})
        for (double r : {0.5, 2.0, 10.0})
            worst = std::max(worst, std::abs(phi_lambda_real(3, lam, r) - std::sin(lam * r) / (lam * std::sinh(r))));
    c.require(worst < 1e-8, "max |phi - sin(lr)/(l sinh r)| = " + g(worst) + " (tol 1e-8)");
    double worst1 = 0;
    for (int n : {2, 3, 4})
        for (double r : {0.5, 5.0, 20.0})
            worst1 = std::max(worst1, std::abs(phi_lambda_real(n, cplx(0, 0.5 * (n - 1)), r) - 1));
    c.require(worst1 <= 1e-8, "max |phi_{i rho} - 1| = " + g(worst1) + " (tol 1e-8)");
}

void poisson_normalization(Check &c) {
    double worst = 0;
    for (int n : {2, 3, 4})
        for (double s : {0.5, 2.0, 8.0}) {
            double v = sphere_reduce2(n, [&](double cs, double omc) { return poisson_power(s, cs, omc, n - 1).value(); });
            worst = std::max(worst, std::abs(v - 1));
        }
    c.require(worst <= 1e-8, "max |mean P^{-(n-1)} - 1| = " + g(worst) + " (tol 1e-8)");
}

void norm_exponents(Check &c) {
    const double p = 1.5, pp = p / (p - 1);
    std::vector<double> ts{50, 100, 200, 400}, x, y;
    for (double t : ts) {
        x.push_back(std::log(t));
        y.push_back(lp_norm_log(3, t, p).log() + 4 / (p * pp) * t);
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    double slope = sxy / sxx, target = -1.0 / 6;
    c.require(std::abs(slope / target - 1) <= 0.15, "p=1.5 slope " + fmt("%.4f", slope) + " vs -1/6 (15%)");
    double ref = -1.5 * std::log(4 * kPi), worst = 0;
    for (double t : ts) {
        double v = lp_norm_log(3, t, kInf).log() + t + 1.5 * std::log(t);
        worst = std::max(worst, std::abs(v / ref - 1));
    }
    c.require(worst <= 0.01, "p=inf normalized log-norm deviation " + g(worst) + " from -(3/2)log 4pi (1%)");
}

void concentration(Check &c) {
    auto s = RegionSchedule::defaults();
    double d1 = concentration_defect(3, 100, 1, s), di = concentration_defect(3, 100, kInf, s);
    c.require(d1 < 0.05, "defect(100, p=1) = " + g(d1) + " (< 0.05)");
    c.require(di < 1e-6, "defect(100, p=inf) = " + g(di) + " (< 1e-6)");
    for (double p : {1.0, 2.0, kInf}) {
        double a = concentration_defect(3, 10, p, s), b = concentration_defect(3, 100, p, s);
        c.require(b < a, "p=" + g(p) + ": defect 10 -> 100: " + g(a) + " -> " + g(b));
    }
}

void kernel_quotient(Check &c) {
    auto s = RegionSchedule::defaults();
    HPoint ctr = HPoint::axial(3, 2.0, 0.0);
    double a = quotient_defect_low(3, 1, 100, ctr, s), b = quotient_defect_low(3, 1, 400, ctr, s);
    c.require(b / a <= 0.85, "low p=1 ratio 400/100 = " + g(b / a) + " (<= 0.85)");
    c.require(b < 0.1, "low p=1 defect(400) = " + g(b) + " (< 0.1)");
    for (double p : {2.0, kInf}) {
        double x = quotient_defect_high(3, p, 100, ctr, s), y = quotient_defect_high(3, p, 400, ctr, s);
        c.require(y < x && y / x <= 0.9, "high p=" + g(p) + " ratio 400/100 = " + g(y / x) + " (<= 0.9)");
    }
}

// Runs the p list over t = 10, 40, 160 and checks the decay of each E series.
void decay_suite(Check &c, const InitialDatum &u0, const std::vector<double> &ps,
                 const std::map<double, std::vector<MassChoice>> &masses, const std::string &tag) {
    ExperimentSpec spec;
    spec.datum = u0;
    spec.p_list = ps;
    spec.t_grid = {10, 40, 160};
    spec.masses = masses;
    ConvergenceReport rep = convergence_experiment(spec);
    for (size_t k = 0; k < rep.rows.size(); k += 3) {
        std::vector<double> E;
        std::string err;
        for (size_t j = k; j < k + 3; ++j) {
            E.push_back(rep.rows[j].result.E);
            if (!rep.rows[j].error.empty()) err = rep.rows[j].error;
        }
        const auto &row = rep.rows[k];
        if (!err.empty()) {
            c.require(false, tag + " p=" + g(row.p) + " " + row.mass + ": " + err);
            continue;
        }
        c.require(strictly_decreasing(E) && E[2] < 0.5 * E[0],
                  tag + " p=" + g(row.p) + " " + row.mass + " E=" + series(E));
    }
}

void main_convergence(Check &c) {
    InitialDatum heat(3);
    heat.displaced_heat(1.0, HPoint::axial(3, 2.0, 0.0));
    decay_suite(c, heat, {1, 1.5, 2, 3, kInf}, {}, "heat");
    InitialDatum bump(3);
    bump.displaced_bump(0.5, HPoint::axial(3, 1.0, 0.0));
    decay_suite(c, bump, {1, kInf}, {}, "bump");
}

void counterexample(Check &c) {
    InitialDatum heat(3);
    heat.displaced_heat(1.0, HPoint::axial(3, 2.0, 0.0));
    GapResult g160 = counterexample_gap(heat, 160), g10 = counterexample_gap(heat, 10);
    c.require(g160.ratio() > 5, "E_const/E_mass at 160 = " + g(g160.ratio()) + " (> 5)");
    c.require(g160.E_const > 0.3 * g10.E_const,
              "E_const 10 -> 160: " + g(g10.E_const) + " -> " + g(g160.E_const) + " (> 30% kept)");
}

void radial_reductions(Check &c) {
    InitialDatum u(3);
    u.radial_bump(0.5);
    const RadialProfile &f = u.components()[0].profile;
    for (double p : {1.0, 1.5, 2.0}) {
        double T = spherical_transform(3, f, cplx(0, 2 / p - 1)).real();
        double lo = kInf, hi = -kInf, worst = 0;
        for (int k = 0; k <= 8; ++k) {
            double m = mass_low_quadrature(u, p, std::cos(kPi * k / 8), 1e-10);
            lo = std::min(lo, m), hi = std::max(hi, m);
            worst = std::max(worst, std::abs(m / T - 1));
        }
        c.require((hi - lo) / std::abs(hi) <= 1e-8 && worst <= 1e-6,
                  "p=" + g(p) + ": spread " + g((hi - lo) / std::abs(hi)) + ", vs transform " + g(worst));
    }
    double T0 = spherical_transform(3, f, 0.0).real(), worst = 0;
    for (double r : {0.0, 2.0, 8.0})
        for (double th : {0.0, 1.0, kPi})
            worst = std::max(worst, std::abs(mass_high_quadrature(u, HPoint::axial(3, r, th), 1e-10) / T0 - 1));
    c.require(worst <= 1e-6, "mass_high vs H u0(0): " + g(worst) + " (tol 1e-6)");
}

void two_masses(Check &c) {
    InitialDatum heat(3);
    heat.displaced_heat(1.0, HPoint::axial(3, 2.0, 0.0));
    decay_suite(c, heat, {2}, {{2.0, {MassChoice::parse("high", 2), MassChoice::parse("alt2", 2)}}}, "heat");
}

void family(Check &c) {
    InitialDatum u(3);
    u.radial_bump(0.5);
    ExperimentSpec spec;
    spec.datum = u;
    spec.p_list = {1};
    spec.t_grid = {10, 40, 160};
    spec.masses = {{1.0, {MassChoice::parse("family_s:2", 1)}}};
    ConvergenceReport rep = convergence_experiment(spec);
    std::vector<double> E;
    for (const auto &r : rep.rows) {
        if (!r.error.empty()) throw QuadratureError(r.error);
        E.push_back(r.result.E);
    }
    c.require(strictly_decreasing(E), "family_s:2 p=1 E=" + series(E));
}

void b_ratio(Check &c) {
    RootDatum d = build_root_system(FamilySpec::rank1(3));
    std::vector<double> D;
    for (double t : {100.0, 200.0, 400.0}) D.push_back(b_ratio_defect(d, t, 2.0, t));
    double ratio = D[2] / D[0];
    c.require(strictly_decreasing(D) && ratio >= 0.15 && ratio <= 0.4,
              "defects " + series(D) + ", ratio 400/100 = " + g(ratio) + " (in [0.15, 0.4])");
}

void plancherel_reduction(Check &c) {
    RootDatum d = build_root_system(FamilySpec::rank1(3));
    double lo = kInf, hi = -kInf;
    for (double lam : {0.5, 1.0, 2.0, 4.0}) {
        double k = std::exp(plancherel_density_log(d, {lam}).log()) / (lam * lam);
        lo = std::min(lo, k), hi = std::max(hi, k);
    }
    c.require((hi - lo) / hi <= 1e-8, "|c|^-2 / l^2 spread " + g((hi - lo) / hi) + " (tol 1e-8)");
    RadialProfile f = smooth_bump(3, 1.0);
    double worst = 0, peak = f(0);
    auto F = [&](double lam) { return spherical_transform(3, f, lam).real(); };
    for (double r : {0.0, 0.2, 0.5, 0.8})
        worst = std::max(worst, std::abs(inverse_transform_radial(3, F, r, InverseOptions{1e-8, 0}) - f(r)) / peak);
    c.require(worst <= 1e-6, "bump round trip error " + g(worst) + " (tol 1e-6, relative to the peak)");
}

struct Entry {
    int id;
    const char *title;
    Body body;
};

const std::vector<Entry> &entries() {
    static const std::vector<Entry> list = {
        {1, "heat-kernel route agreement", route_agreement},
        {2, "mass conservation", mass_conservation},
        {3, "spherical function closed forms", spherical_closed_form},
        {4, "Poisson-power normalization", poisson_normalization},
        {5, "heat-kernel Lp norm exponents", norm_exponents},
        {6, "critical-region concentration", concentration},
        {7, "kernel-quotient asymptotics", kernel_quotient},
        {8, "normalized convergence with the mass function", main_convergence},
        {9, "constant-mass counterexample", counterexample},
        {10, "radial reductions of the masses", radial_reductions},
        {11, "p=2 with either mass", two_masses},
        {12, "family_s mass", family},
        {13, "b-function ratio", b_ratio},
        {14, "rank-one Plancherel reduction", plancherel_reduction},
    };
    return list;
}
} // namespace

std::vector<int> acceptance_ids() {
    std::vector<int> ids;
    for (const auto &e : entries()) ids.push_back(e.id);
    return ids;
}

std::string acceptance_title(int id) {
    for (const auto &e : entries())
        if (e.id == id) return e.title;
    throw ConfigError("unknown acceptance criterion " + std::to_string(id));
}

CriterionResult run_criterion(int id) {
    CriterionResult res;
    res.id = id;
    res.title = acceptance_title(id);
    auto start = std::chrono::steady_clock::now();
    Check c;
    try {
        for (const auto &e : entries())
            if (e.id == id) e.body(c);
        res.pass = c.pass;
        res.detail = c.detail.str();
    } catch (const std::exception &e) {
        res.pass = false;
        res.detail = c.detail.str() + (c.detail.str().empty() ? "" : "; ") + "error: " + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

int run_acceptance(const std::vector<int> &ids, std::ostream &out) {
    int failures = 0;
    for (int id : ids.empty() ? acceptance_ids() : ids) {
        CriterionResult r = run_criterion(id);
        if (!r.pass) ++failures;
        char head[32];
        std::snprintf(head, sizeof head, "%s AC%02d ", r.pass ? "PASS" : "FAIL", r.id);
        out << head << r.title << ": " << r.detail << fmt(" [%.1f s]", r.seconds) << std::endl;
    }
    return failures;
}

} // namespace heatflow
