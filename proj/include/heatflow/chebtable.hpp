#pragma once

#include <functional>
#include <vector>

namespace heatflow {

// Piecewise Chebyshev interpolant of a smooth function on [a, b], built once
// and read-only afterwards. Evaluation outside [a, b] calls the fallback.
class ChebTable {
  public:
    ChebTable() = default;
    ChebTable(const std::function<double(double)> &f, double a, double b, double width, int nodes = 20);

    double operator()(double x) const;
    double lower() const { return a_; }
    double upper() const { return b_; }
    bool empty() const { return values_.empty(); }

    std::function<double(double)> fallback;

  private:
    double a_ = 0, b_ = 0, width_ = 1;
    int panels_ = 0;
    std::vector<double> nodes_, bary_, values_;
};

} // namespace heatflow
