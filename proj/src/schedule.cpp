#include "heatflow/schedule.hpp"

#include <cmath>
#include <sstream>

#include "heatflow/errors.hpp"

namespace heatflow {

RegionSchedule RegionSchedule::defaults() { return power_law(0.75, 0.25, 1.0); }

RegionSchedule RegionSchedule::power_law(double r_exp, double eps_exp, double R_scale) {
    if (!(R_scale > 0)) throw ConfigError("schedule: R scale must be positive");
    RegionSchedule s;
    s.r_of_t = [r_exp](double t) { return std::pow(t, r_exp); };
    s.eps_of_t = [eps_exp](double t) { return std::pow(t, -eps_exp); };
    s.R_of_t = [R_scale](double t) { return R_scale * std::sqrt(t) / std::log(t); };
    std::ostringstream os;
    os << "r=t^" << r_exp << " eps=t^-" << eps_exp << " R=" << R_scale << "*sqrt(t)/log(t)";
    s.description = os.str();
    return s;
}

std::vector<std::string> RegionSchedule::violations() const {
    std::vector<std::string> out;
    const double a = 10, b = 1e4;
    auto decreasing = [&](auto g) { return g(b) < g(a); };
    auto increasing = [&](auto g) { return g(b) > g(a); };
    if (!decreasing([&](double t) { return r_of_t(t) / t; })) out.push_back("r(t)/t -> 0");
    if (!increasing([&](double t) { return r_of_t(t) / std::sqrt(t); })) out.push_back("r(t)/sqrt(t) -> inf");
    if (!decreasing([&](double t) { return eps_of_t(t); })) out.push_back("eps(t) -> 0");
    if (!increasing([&](double t) { return eps_of_t(t) * std::sqrt(t); })) out.push_back("eps(t)sqrt(t) -> inf");
    if (!increasing([&](double t) { return R_of_t(t) / std::log(t); })) out.push_back("R(t)/log(t) -> inf");
    if (!decreasing([&](double t) { return R_of_t(t) / std::sqrt(t); })) out.push_back("R(t)/sqrt(t) -> 0");
    return out;
}

} // namespace heatflow
