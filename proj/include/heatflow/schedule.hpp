#pragma once

#include <functional>
#include <string>
#include <vector>

namespace heatflow {

// The scale functions r(t), eps(t), R(t) that define the critical regions.
struct RegionSchedule {
    std::function<double(double)> r_of_t;
    std::function<double(double)> eps_of_t;
    std::function<double(double)> R_of_t;
    std::string description;

    // r = t^{3/4}, eps = t^{-1/4}, R = sqrt(t)/log t.
    static RegionSchedule defaults();
    // r = t^{r_exp}, eps = t^{-eps_exp}, R = R_scale*sqrt(t)/log t.
    static RegionSchedule power_law(double r_exp, double eps_exp, double R_scale);

    // Names of the growth conditions that fail between t = 10 and t = 1e4
    // (empty when the schedule is admissible).
    std::vector<std::string> violations() const;
};

} // namespace heatflow
