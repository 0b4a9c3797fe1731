#include "heatflow/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace heatflow {

namespace {

GaussRule build_rule(int n) {
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            double pn = n == 1 ? x : p1;
            double pm = n == 1 ? 1 : p0;
            dp = n * (x * pn - pm) / (x * x - 1);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        g.x[i] = x;
        g.w[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return g;
}

} // namespace

const GaussRule &gauss_legendre(int order) {
    if (order < 1 || order > 512) throw ConfigError("Gauss-Legendre order out of range");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, std::make_unique<GaussRule>(build_rule(order))).first;
    return *it->second;
}

} // namespace heatflow
