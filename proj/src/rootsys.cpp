#include "heatflow/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heatflow/errors.hpp"
#include "json.hpp"

namespace heatflow {

double dot(const Vec &a, const Vec &b) {
    if (a.size() != b.size()) throw ConfigError("vector dimension mismatch");
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec &a) { return std::sqrt(dot(a, a)); }

namespace {

void add_reduced(RootDatum &d, Vec alpha, int m, int m2) {
    d.reduced_positive.push_back(alpha);
    d.reduced_mult.emplace_back(m, m2);
    d.positive_roots.push_back(alpha);
    d.positive_mult.push_back(m);
    if (m2 > 0) {
        Vec two = alpha;
        for (double &x : two) x *= 2;
        d.positive_roots.push_back(two);
        d.positive_mult.push_back(m2);
    }
}

void finish(RootDatum &d) {
    d.rho.assign(d.rank, 0.0);
    d.rho0.assign(d.rank, 0.0);
    for (size_t k = 0; k < d.positive_roots.size(); ++k)
        for (int i = 0; i < d.rank; ++i) d.rho[i] += 0.5 * d.positive_mult[k] * d.positive_roots[k][i];
    for (const auto &a : d.reduced_positive)
        for (int i = 0; i < d.rank; ++i) d.rho0[i] += 0.5 * a[i];
    d.n = d.rank;
    for (int m : d.positive_mult) d.n += m;
    d.nu = d.rank + 2 * static_cast<int>(d.reduced_positive.size());
}

double log_sinh(double x) {
    if (x > 20) return x - std::log(2.0) + std::log1p(-std::exp(-2 * x));
    return std::log(std::sinh(x));
}

} // namespace

RootDatum build_root_system(const FamilySpec &spec) {
    RootDatum d;
    switch (spec.family) {
    case Family::Rank1:
        if (spec.n < 2) throw ConfigError("rank1 family requires n >= 2");
        if (spec.m2a < 0) throw ConfigError("rank1 family requires m_2alpha >= 0");
        d.family = "rank1";
        d.rank = 1;
        add_reduced(d, {1.0}, spec.n - 1 - spec.m2a, spec.m2a);
        if (d.reduced_mult[0].first < 1) throw ConfigError("rank1 family requires m_alpha >= 1");
        d.simple_roots = {{1.0}};
        break;
    case Family::A2: {
        if (spec.m < 1) throw ConfigError("A2 family requires m >= 1");
        d.family = "A2";
        d.rank = 2;
        const double h = std::sqrt(3.0) / 2;
        Vec a1{1.0, 0.0}, a2{-0.5, h};
        add_reduced(d, a1, spec.m, 0);
        add_reduced(d, a2, spec.m, 0);
        add_reduced(d, {0.5, h}, spec.m, 0);
        d.simple_roots = {a1, a2};
        break;
    }
    case Family::B2:
        if (spec.m_short < 1 || spec.m_long < 1) throw ConfigError("B2 family requires multiplicities >= 1");
        d.family = "B2";
        d.rank = 2;
        add_reduced(d, {1.0, -1.0}, spec.m_long, 0);
        add_reduced(d, {0.0, 1.0}, spec.m_short, 0);
        add_reduced(d, {1.0, 0.0}, spec.m_short, 0);
        add_reduced(d, {1.0, 1.0}, spec.m_long, 0);
        d.simple_roots = {{1.0, -1.0}, {0.0, 1.0}};
        break;
    default:
        throw ConfigError("unsupported root-system family");
    }
    finish(d);
    for (const auto &a : d.positive_roots)
        if (!(dot(a, d.rho) > 0)) throw ConfigError("rho is not regular for this datum");
    return d;
}

ChamberVector::ChamberVector(const RootDatum &d, Vec h) : H(std::move(h)) {
    if (static_cast<int>(H.size()) != d.rank) throw ConfigError("chamber vector has wrong dimension");
    double scale = std::max(1.0, norm(H));
    for (const auto &a : d.simple_roots)
        if (dot(a, H) < -1e-12 * scale) throw ConfigError("vector is outside the closed positive chamber");
    mu = heatflow::mu(d, *this);
    pi = pi_poly(d, H);
    rho_dot = dot(d.rho, H);
    double nh = norm(H);
    angle_with_rho = nh == 0 ? 0.0 : std::acos(std::clamp(rho_dot / (nh * norm(d.rho)), -1.0, 1.0));
}

double mu(const RootDatum &d, const ChamberVector &H) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto &a : d.positive_roots) m = std::min(m, dot(a, H.H));
    return std::max(m, 0.0);
}

double pi_poly(const RootDatum &d, const Vec &H) {
    double p = 1;
    for (const auto &a : d.reduced_positive) p *= dot(a, H);
    return p;
}

double rho_min(const RootDatum &d) {
    // Extreme rays of the chamber: the dual basis of the simple roots.
    int l = d.rank;
    std::vector<Vec> S = d.simple_roots;
    std::vector<Vec> inv(l, Vec(l, 0.0));
    for (int i = 0; i < l; ++i) inv[i][i] = 1;
    for (int c = 0; c < l; ++c) {
        int piv = c;
        for (int r = c + 1; r < l; ++r)
            if (std::abs(S[r][c]) > std::abs(S[piv][c])) piv = r;
        std::swap(S[c], S[piv]);
        std::swap(inv[c], inv[piv]);
        double f = S[c][c];
        for (int k = 0; k < l; ++k) {
            S[c][k] /= f;
            inv[c][k] /= f;
        }
        for (int r = 0; r < l; ++r) {
            if (r == c) continue;
            double g = S[r][c];
            for (int k = 0; k < l; ++k) {
                S[r][k] -= g * S[c][k];
                inv[r][k] -= g * inv[c][k];
            }
        }
    }
    // inv = S^{-1}; column j is the ray dual to simple root j.
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < l; ++j) {
        Vec ray(l);
        for (int i = 0; i < l; ++i) ray[i] = inv[i][j];
        best = std::min(best, dot(d.rho, ray) / norm(ray));
    }
    return best;
}

LogVal density_delta_log(const RootDatum &d, const ChamberVector &H) {
    double s = 0;
    for (size_t k = 0; k < d.positive_roots.size(); ++k) {
        double x = dot(d.positive_roots[k], H.H);
        if (x <= 0) return LogVal();
        s += d.positive_mult[k] * log_sinh(x);
    }
    return LogVal::from_log(s);
}

bool box_membership(const RootDatum &d, double p, double t, const RegionSchedule &sched, const ChamberVector &H) {
    if (!(t > 0)) throw ConfigError("box_membership requires t > 0");
    if (!(p >= 1)) throw ConfigError("box_membership requires p >= 1");
    const double tol = 1e-12;
    double h = norm(H.H);
    if (p < 2) {
        double center = 2 * (2 / p - 1) * norm(d.rho) * t;
        double r = sched.r_of_t(t);
        if (std::abs(h - center) > r * (1 + tol) + tol) return false;
        return H.angle_with_rho <= r / t * (1 + tol) + tol;
    }
    if (p == 2) {
        double e = sched.eps_of_t(t), st = std::sqrt(t);
        return h >= e * st * (1 - tol) && h <= st / e * (1 + tol) && H.mu >= e * st * (1 - tol);
    }
    return h <= sched.R_of_t(t) * (1 + tol);
}

Vec simple_reflection(const RootDatum &d, int i, const Vec &H) {
    const Vec &a = d.simple_roots.at(i);
    double c = 2 * dot(a, H) / dot(a, a);
    Vec out = H;
    for (size_t k = 0; k < out.size(); ++k) out[k] -= c * a[k];
    return out;
}

std::string to_json(const RootDatum &d) {
    nlohmann::json j;
    j["family"] = d.family;
    j["rank"] = d.rank;
    j["n"] = d.n;
    j["nu"] = d.nu;
    j["rho"] = d.rho;
    j["rho0"] = d.rho0;
    j["simple_roots"] = d.simple_roots;
    nlohmann::json roots = nlohmann::json::array();
    for (size_t k = 0; k < d.reduced_positive.size(); ++k)
        roots.push_back({{"root", d.reduced_positive[k]},
                         {"m_alpha", d.reduced_mult[k].first},
                         {"m_2alpha", d.reduced_mult[k].second}});
    j["reduced_positive_roots"] = roots;
    return j.dump();
}

} // namespace heatflow
