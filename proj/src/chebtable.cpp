#include "heatflow/chebtable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatflow/errors.hpp"
#include "heatflow/parallel.hpp"

namespace heatflow {

ChebTable::ChebTable(const std::function<double(double)> &f, double a, double b, double width, int nodes)
    : fallback(f), a_(a) {
    if (!(b > a) || !(width > 0) || nodes < 2) throw ConfigError("ChebTable: bad interval or width");
    panels_ = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
    width_ = (b - a) / panels_;
    b_ = b;
    nodes_.resize(nodes);
    bary_.resize(nodes);
    for (int j = 0; j < nodes; ++j) {
        double th = std::numbers::pi * (2 * j + 1) / (2 * nodes);
        nodes_[j] = std::cos(th);
        bary_[j] = (j % 2 ? -1.0 : 1.0) * std::sin(th);
    }
    values_.resize(static_cast<size_t>(panels_) * nodes);
    parallel_for(values_.size(), [&](size_t k) {
        size_t p = k / nodes, j = k % nodes;
        values_[k] = f(a_ + width_ * (p + 0.5 * (nodes_[j] + 1)));
    });
}

double ChebTable::operator()(double x) const {
    if (x < a_ || x > b_ || values_.empty()) return fallback(x);
    const int N = static_cast<int>(nodes_.size());
    int p = std::min(static_cast<int>((x - a_) / width_), panels_ - 1);
    double u = 2 * (x - a_ - p * width_) / width_ - 1;
    const double *v = &values_[static_cast<size_t>(p) * N];
    double num = 0, den = 0;
    for (int j = 0; j < N; ++j) {
        double d = u - nodes_[j];
        if (d == 0) return v[j];
        double w = bary_[j] / d;
        num += w * v[j];
        den += w;
    }
    return num / den;
}

} // namespace heatflow
