#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "heatflow/errors.hpp"
#include "heatflow/logval.hpp"

namespace heatflow {

struct GaussRule {
    std::vector<double> x; // nodes on [-1, 1]
    std::vector<double> w;
};

// Cached Gauss-Legendre rule of the given order.
const GaussRule &gauss_legendre(int order);

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int order = 16;
    int max_panels = 4000;
    bool throw_on_failure = true;
};

template <class V>
struct QuadResult {
    V value{};
    double log_error = -std::numeric_limits<double>::infinity();
    double log_mass = -std::numeric_limits<double>::infinity(); // log of the integral of |f|
    int panels = 0;
    bool converged = false;
};

namespace detail {

template <class V>
struct QuadTraits;

template <>
struct QuadTraits<double> {
    static double log_abs(double v) { return std::log(std::abs(v)); }
    static double diff_log(double a, double b) { return std::log(std::abs(a - b)); }
    template <class F>
    static double rule(F &f, double a, double b, const GaussRule &g, double &log_mass) {
        double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0, m = 0;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double v = f(c + h * g.x[i]);
            s += g.w[i] * v;
            m += g.w[i] * std::abs(v);
        }
        log_mass = std::log(h * m);
        return h * s;
    }
};

template <>
struct QuadTraits<std::complex<double>> {
    using C = std::complex<double>;
    static double log_abs(C v) { return std::log(std::abs(v)); }
    static double diff_log(C a, C b) { return std::log(std::abs(a - b)); }
    template <class F>
    static C rule(F &f, double a, double b, const GaussRule &g, double &log_mass) {
        double c = 0.5 * (a + b), h = 0.5 * (b - a), m = 0;
        C s = 0;
        for (size_t i = 0; i < g.x.size(); ++i) {
            C v = f(c + h * g.x[i]);
            s += g.w[i] * v;
            m += g.w[i] * std::abs(v);
        }
        log_mass = std::log(h * m);
        return h * s;
    }
};

template <>
struct QuadTraits<LogVal> {
    static double log_abs(const LogVal &v) { return v.log(); }
    static double diff_log(const LogVal &a, const LogVal &b) { return (a - b).log(); }
    template <class F>
    static LogVal rule(F &f, double a, double b, const GaussRule &g, double &log_mass) {
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        size_t n = g.x.size();
        std::vector<LogVal> vals(n); // not static: f may itself integrate
        double mx = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i) {
            vals[i] = f(c + h * g.x[i]);
            mx = std::max(mx, vals[i].log());
        }
        if (mx == -std::numeric_limits<double>::infinity()) {
            log_mass = mx;
            return LogVal();
        }
        double s = 0, m = 0;
        for (size_t i = 0; i < n; ++i) {
            if (vals[i].is_zero()) continue;
            double e = g.w[i] * std::exp(vals[i].log() - mx);
            s += vals[i].sign() * e;
            m += e;
        }
        log_mass = mx + std::log(h * m);
        return LogVal(s) * LogVal::from_log(mx + std::log(h));
    }
};

inline double log_sum(double a, double b) { return log_add(a, b); }

} // namespace detail

// Globally adaptive composite Gauss-Legendre quadrature. Each panel is
// integrated on itself and on its two halves; the difference is the panel
// error. The panel with the largest error is bisected until the summed error
// meets max(abs_tol, rel_tol*|I|) or falls to roundoff relative to the
// integral of |f|. Summation order is fixed by panel position.
template <class V, class F>
QuadResult<V> integrate(F &&f, std::vector<double> breaks, const QuadOptions &opt = {}) {
    using T = detail::QuadTraits<V>;
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const GaussRule &g = gauss_legendre(opt.order);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    QuadResult<V> res;
    if (breaks.size() < 2) return res;

    struct Panel {
        double a, b;
        V whole, left, right;
        double log_err, log_mass;
    };
    std::vector<Panel> panels;
    auto make = [&](double a, double b, const V *known) {
        Panel p{a, b, {}, {}, {}, kNegInf, kNegInf};
        double m0, ml, mr;
        double mid = 0.5 * (a + b);
        p.whole = known ? *known : T::rule(f, a, b, g, m0);
        p.left = T::rule(f, a, mid, g, ml);
        p.right = T::rule(f, mid, b, g, mr);
        V fine = p.left + p.right;
        p.log_err = T::diff_log(fine, p.whole);
        p.log_mass = detail::log_sum(ml, mr);
        return p;
    };
    for (size_t i = 0; i + 1 < breaks.size(); ++i) panels.push_back(make(breaks[i], breaks[i + 1], nullptr));

    auto cmp = [&](size_t i, size_t j) {
        if (panels[i].log_err != panels[j].log_err) return panels[i].log_err < panels[j].log_err;
        return panels[i].a > panels[j].a;
    };
    std::priority_queue<size_t, std::vector<size_t>, decltype(cmp)> queue(cmp);
    for (size_t i = 0; i < panels.size(); ++i) queue.push(i);

    auto totals = [&](V &value, double &log_err, double &log_mass, bool ordered) {
        std::vector<size_t> order(panels.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        if (ordered)
            std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return panels[i].a < panels[j].a; });
        value = V{};
        log_err = kNegInf;
        log_mass = kNegInf;
        for (size_t i : order) {
            value = value + (panels[i].left + panels[i].right);
            log_err = detail::log_sum(log_err, panels[i].log_err);
            log_mass = detail::log_sum(log_mass, panels[i].log_mass);
        }
    };
    auto done = [&](const V &value, double log_err, double log_mass) {
        // Roundoff in the panel sums grows like sqrt(panels).
        double floor = std::log(64 * std::numeric_limits<double>::epsilon()) + log_mass +
                       0.5 * std::log(static_cast<double>(panels.size()));
        double target = std::max({std::log(opt.abs_tol), std::log(opt.rel_tol) + T::log_abs(value), floor});
        return log_err <= target;
    };

    V value{};
    double log_err = kNegInf, log_mass = kNegInf;
    totals(value, log_err, log_mass, false);
    bool stuck = false;
    while (!stuck && !done(value, log_err, log_mass)) {
        // Bisect a batch of the worst panels before re-summing, so the total
        // cost stays O(N log N) in the panel count.
        size_t batch = std::max<size_t>(1, panels.size() / 16);
        for (size_t j = 0; j < batch; ++j) {
            if (static_cast<int>(panels.size()) >= opt.max_panels) {
                stuck = true;
                break;
            }
            size_t k = queue.top();
            Panel p = panels[k];
            double mid = 0.5 * (p.a + p.b);
            if (!(mid > p.a && mid < p.b)) { // cannot bisect further
                stuck = true;
                break;
            }
            queue.pop();
            panels[k] = make(p.a, mid, &p.left);
            panels.push_back(make(mid, p.b, &p.right));
            queue.push(k);
            queue.push(panels.size() - 1);
        }
        totals(value, log_err, log_mass, false);
    }
    totals(value, log_err, log_mass, true);
    res.value = value;
    res.log_error = log_err;
    res.log_mass = log_mass;
    res.panels = static_cast<int>(panels.size());
    res.converged = done(value, log_err, log_mass);
    if (!res.converged && opt.throw_on_failure) {
        std::ostringstream os;
        os << "adaptive quadrature did not converge on [" << breaks.front() << ", " << breaks.back() << "] after "
           << panels.size() << " panels (log error " << log_err << ", log |I| " << T::log_abs(value) << ")";
        throw QuadratureError(os.str());
    }
    return res;
}

// Convenience wrappers returning only the value.
template <class F>
double integrate_real(F &&f, const std::vector<double> &breaks, const QuadOptions &opt = {}) {
    return integrate<double>(std::forward<F>(f), breaks, opt).value;
}

template <class F>
std::complex<double> integrate_complex(F &&f, const std::vector<double> &breaks, const QuadOptions &opt = {}) {
    return integrate<std::complex<double>>(std::forward<F>(f), breaks, opt).value;
}

template <class F>
LogVal integrate_log(F &&f, const std::vector<double> &breaks, const QuadOptions &opt = {}) {
    return integrate<LogVal>(std::forward<F>(f), breaks, opt).value;
}

} // namespace heatflow
