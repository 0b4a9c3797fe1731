#pragma once

#include <memory>
#include <string>
#include <vector>

#include "heatflow/chebtable.hpp"
#include "heatflow/hgeom.hpp"
#include "heatflow/logval.hpp"
#include "heatflow/schedule.hpp"
#include "heatflow/spherical.hpp"

namespace heatflow {

enum class Route { ExactH3, Spectral, Asymptotic, Auto };
Route parse_route(const std::string &s);
std::string route_name(Route r);

struct HeatEvaluation {
    double t = 0;
    Route route = Route::Auto;
    LogVal value;
};

LogVal h_exact_h3(double t, double r);
LogVal h_spectral(int n, double t, double r);
// Spectral route pieces, exposed so tests can compare them where both apply.
LogVal h_spectral_direct(int n, double t, double r);
LogVal h_spectral_shifted(int n, double t, double r);
LogVal h_asymptotic(int n, double t, double r);
double asymptotic_gamma(int n, double s);

HeatEvaluation heat_kernel(int n, double t, double r, Route route = Route::Auto);

// Radial heat kernel h_t(r) for fixed (n, t). For n != 3 the spectral route is
// tabulated (piecewise Chebyshev in log h) on [0, r_max] at construction;
// the table is read-only afterwards.
class HeatKernel {
  public:
    HeatKernel(int n, double t, double r_max = 0);
    int n() const { return n_; }
    double t() const { return t_; }
    double log_value(double r) const;
    LogVal operator()(double r) const { return LogVal::from_log(log_value(r)); }

  private:
    int n_;
    double t_;
    ChebTable table_; // log h
};

// Radial interval of B_p(t) in rank one, as [lo, hi]; p = inf allowed.
struct RadialRegion {
    double lo = 0;
    double hi = 0;
};
RadialRegion critical_region(int n, double p, double t, const RegionSchedule &sched);

// Panel boundaries for radial integrals of h_t^p on H^n.
std::vector<double> lp_breaks(int n, double t, double p, const RegionSchedule &sched);

LogVal lp_norm_log(int n, double t, double p);
double concentration_defect(int n, double t, double p, const RegionSchedule &sched);

// Sampled kernel-quotient defects over 17 axial angles x 5 radii of B_p(t).
double quotient_defect_low(int n, double p, double t, const HPoint &center, const RegionSchedule &sched);
double quotient_defect_high(int n, double p, double t, const HPoint &center, const RegionSchedule &sched);

// The radial heat kernel h_s as a profile.
RadialProfile heat_profile(int n, double s);

} // namespace heatflow
